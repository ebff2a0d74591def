#include "socksort/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace socksort {

SockPattern SockPattern::from_rgs(SockSequence seq) {
  int max_seen = -1;
  for (Sock s : seq) {
    if (s.id() < 0 || s.id() > max_seen + 1) {
      throw std::invalid_argument("sequence '" + render(seq) +
                                  "' is not in restricted-growth form");
    }
    max_seen = std::max(max_seen, s.id());
  }
  return SockPattern(std::move(seq), AlreadyCanonical{});
}

SockPattern standardize(const SockSequence& p) {
  std::map<Sock, int> names;
  std::vector<Sock> out;
  out.reserve(p.size());
  for (Sock s : p) {
    auto [it, inserted] = names.emplace(s, static_cast<int>(names.size()));
    out.emplace_back(it->second);
  }
  return SockPattern(SockSequence(std::move(out)), SockPattern::AlreadyCanonical{});
}

bool is_sorted(const SockSequence& p) {
  // Sorted iff no sock reappears after a different sock has intervened,
  // i.e. the sequence of run heads has no repeated sock.
  std::set<Sock> finished;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0 && p[i] == p[i - 1]) continue;
    if (!finished.insert(p[i]).second) return false;
  }
  return true;
}

SockSequence reversed(const SockSequence& p) {
  std::vector<Sock> out(p.socks().rbegin(), p.socks().rend());
  return SockSequence(std::move(out));
}

std::set<Sock> sock_set(const SockSequence& p) {
  return std::set<Sock>(p.begin(), p.end());
}

int distinct_count(const SockSequence& p) {
  return static_cast<int>(sock_set(p).size());
}

std::vector<int> occurrence_indices(const SockSequence& p, Sock m) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == m) idx.push_back(static_cast<int>(i) + 1);
  }
  return idx;
}

namespace {

// Backtracking subsequence match of the restricted-growth pattern sigma
// against p, extending an injective partial map pattern id -> sock.
// require_first pins position 0 of p to pattern id 0 (used by the stack
// machine's legality check, where any new occurrence must use the new top).
bool match_from(const SockSequence& p, const SockPattern& sigma,
                std::size_t pi, std::size_t si, std::vector<Sock>& assigned,
                std::vector<bool>& have, std::set<Sock>& used) {
  if (si == sigma.size()) return true;
  if (p.size() - pi < sigma.size() - si) return false;  // not enough length left
  const int pat = sigma[si].id();
  for (std::size_t i = pi; p.size() - i >= sigma.size() - si; ++i) {
    const Sock cand = p[i];
    if (have[pat]) {
      if (assigned[pat] != cand) continue;
      if (match_from(p, sigma, i + 1, si + 1, assigned, have, used)) return true;
    } else {
      if (used.contains(cand)) continue;  // keep the assignment injective
      have[pat] = true;
      assigned[pat] = cand;
      used.insert(cand);
      if (match_from(p, sigma, i + 1, si + 1, assigned, have, used)) return true;
      used.erase(cand);
      have[pat] = false;
    }
  }
  return false;
}

bool contains_impl(const SockSequence& p, const SockPattern& sigma,
                   bool anchor_first) {
  if (sigma.empty()) return true;
  if (p.size() < sigma.size()) return false;
  const int r = distinct_count(sigma.sequence());
  std::vector<Sock> assigned(r);
  std::vector<bool> have(r, false);
  std::set<Sock> used;
  if (anchor_first) {
    have[0] = true;
    assigned[0] = p[0];
    used.insert(p[0]);
    return match_from(p, sigma, 1, 1, assigned, have, used);
  }
  return match_from(p, sigma, 0, 0, assigned, have, used);
}

}  // namespace

bool contains(const SockSequence& p, const SockPattern& sigma) {
  return contains_impl(p, sigma, /*anchor_first=*/false);
}

namespace detail {
// Occurrence that uses p's first element as the pattern's first element.
bool contains_anchored_first(const SockSequence& p, const SockPattern& sigma) {
  if (sigma.empty()) return true;
  if (p.empty() || p.size() < sigma.size()) return false;
  return contains_impl(p, sigma, /*anchor_first=*/true);
}
}  // namespace detail

SockSequence renamed(const SockSequence& p, const std::map<Sock, Sock>& f) {
  std::set<Sock> images;
  for (const auto& [from, to] : f) {
    if (!images.insert(to).second) {
      throw std::invalid_argument("renaming is not injective");
    }
  }
  std::vector<Sock> out;
  out.reserve(p.size());
  for (Sock s : p) {
    auto it = f.find(s);
    if (it == f.end()) {
      throw std::invalid_argument("renaming misses sock " + render(s));
    }
    out.push_back(it->second);
  }
  return SockSequence(std::move(out));
}

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks)
    : n_(n) {
  if (n < 0) throw std::invalid_argument("ground-set size must be >= 0");
  std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
  std::size_t total = 0;
  for (auto& block : blocks) {
    if (block.empty()) throw std::invalid_argument("empty block");
    std::sort(block.begin(), block.end());
    for (int i : block) {
      if (i < 1 || i > n) {
        throw std::invalid_argument("index " + std::to_string(i) +
                                    " outside {1,...," + std::to_string(n) + "}");
      }
      if (covered[static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("index " + std::to_string(i) +
                                    " appears in two blocks");
      }
      covered[static_cast<std::size_t>(i)] = true;
    }
    total += block.size();
  }
  if (total != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("blocks do not cover {1,...," +
                                std::to_string(n) + "}");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  blocks_ = std::move(blocks);
}

SockMultiset::SockMultiset(std::map<Sock, int> counts)
    : counts_(std::move(counts)) {
  for (const auto& [sock, count] : counts_) {
    if (count < 1) {
      throw std::invalid_argument("multiplicity of " + render(sock) +
                                  " must be >= 1");
    }
  }
}

SockMultiset SockMultiset::from_sequence(const SockSequence& p) {
  std::map<Sock, int> counts;
  for (Sock s : p) ++counts[s];
  return SockMultiset(std::move(counts));
}

std::size_t SockMultiset::total_size() const {
  std::size_t total = 0;
  for (const auto& [sock, count] : counts_) total += static_cast<std::size_t>(count);
  return total;
}

SetPartition to_set_partition(const SockSequence& p) {
  std::map<Sock, std::vector<int>> by_sock;
  for (std::size_t i = 0; i < p.size(); ++i) {
    by_sock[p[i]].push_back(static_cast<int>(i) + 1);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_sock.size());
  for (auto& [sock, idx] : by_sock) blocks.push_back(std::move(idx));
  return SetPartition(static_cast<int>(p.size()), std::move(blocks));
}

SockPattern from_set_partition(const SetPartition& sp) {
  std::vector<Sock> out(static_cast<std::size_t>(sp.n()));
  // Blocks are ordered by minimum element, which is also the order of first
  // occurrence, so block k gets sock id k.
  int id = 0;
  for (const auto& block : sp.blocks()) {
    for (int i : block) out[static_cast<std::size_t>(i) - 1] = Sock(id);
    ++id;
  }
  return SockPattern::from_rgs(SockSequence(std::move(out)));
}

ArrangementStream::ArrangementStream(const SockMultiset& m) {
  for (const auto& [sock, count] : m.counts()) {
    current_.insert(current_.end(), static_cast<std::size_t>(count), sock);
  }
}

std::optional<SockSequence> ArrangementStream::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return SockSequence(current_);
  }
  if (!std::next_permutation(current_.begin(), current_.end())) {
    done_ = true;
    return std::nullopt;
  }
  return SockSequence(current_);
}

std::uint64_t arrangement_count(const SockMultiset& m) {
  // Product of binomial(partial_total, count) over the socks; each binomial
  // is built by incremental multiply/divide, saturating on overflow.
  constexpr std::uint64_t kMax = UINT64_MAX;
  std::uint64_t result = 1;
  std::uint64_t placed = 0;
  for (const auto& [sock, count] : m.counts()) {
    for (int j = 1; j <= count; ++j) {
      ++placed;
      if (result > kMax / placed) return kMax;
      result = result * placed / static_cast<std::uint64_t>(j);
    }
  }
  return result;
}

// --- Text grammar ---

namespace {

// Letter words never contain digits, so "s" followed by a digit is the only
// way a token form can start.
bool is_token_form(std::string_view text) {
  return text.size() >= 2 && text.front() == 's' && text[1] >= '0' && text[1] <= '9';
}

SockSequence parse_letters(std::string_view text) {
  std::vector<Sock> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < 'a' || c > 'z') {
      throw ParseError("unexpected character '" + std::string(1, c) +
                           "' at position " + std::to_string(i + 1),
                       i + 1);
    }
    out.emplace_back(c - 'a');
  }
  return SockSequence(std::move(out));
}

// One "s<digits>" token starting at `pos`; advances pos past the token.
Sock parse_sock_token(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != 's') {
    throw ParseError("expected 's' at position " + std::to_string(pos + 1), pos + 1);
  }
  const std::size_t digits_begin = pos + 1;
  std::size_t end = digits_begin;
  while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
  if (end == digits_begin) {
    throw ParseError("expected digits after 's' at position " +
                         std::to_string(digits_begin + 1),
                     digits_begin + 1);
  }
  int id = 0;
  auto [ptr, ec] = std::from_chars(text.data() + digits_begin, text.data() + end, id);
  if (ec != std::errc()) {
    throw ParseError("sock id out of range at position " +
                         std::to_string(digits_begin + 1),
                     digits_begin + 1);
  }
  pos = end;
  return Sock(id);
}

SockSequence parse_tokens(std::string_view text) {
  std::vector<Sock> out;
  std::size_t pos = 0;
  while (true) {
    out.push_back(parse_sock_token(text, pos));
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw ParseError("expected ',' at position " + std::to_string(pos + 1), pos + 1);
    }
    ++pos;
  }
  return SockSequence(std::move(out));
}

}  // namespace

SockSequence parse_sequence(std::string_view text) {
  if (text.empty()) return SockSequence();
  if (is_token_form(text)) return parse_tokens(text);
  return parse_letters(text);
}

SockPattern parse_pattern(std::string_view text) {
  return standardize(parse_sequence(text));
}

SockMultiset parse_multiset(std::string_view text) {
  std::map<Sock, int> counts;
  std::size_t pos = 0;
  if (text.empty()) return SockMultiset();
  while (true) {
    const std::size_t entry_begin = pos;
    Sock sock(0);
    if (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z' &&
        !(text[pos] == 's' && pos + 1 < text.size() && text[pos + 1] >= '0' &&
          text[pos + 1] <= '9')) {
      sock = Sock(text[pos] - 'a');
      ++pos;
    } else {
      sock = parse_sock_token(text, pos);
    }
    if (pos >= text.size() || text[pos] != ':') {
      throw ParseError("expected ':' at position " + std::to_string(pos + 1), pos + 1);
    }
    ++pos;
    const std::size_t digits_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits_begin) {
      throw ParseError("expected count at position " + std::to_string(digits_begin + 1),
                       digits_begin + 1);
    }
    int count = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + digits_begin, text.data() + pos, count);
    if (ec != std::errc() || count < 1) {
      throw ParseError("count must be a positive integer at position " +
                           std::to_string(digits_begin + 1),
                       digits_begin + 1);
    }
    if (counts.contains(sock)) {
      throw ParseError("sock " + render(sock) + " listed twice at position " +
                           std::to_string(entry_begin + 1),
                       entry_begin + 1);
    }
    counts[sock] = count;
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw ParseError("expected ',' at position " + std::to_string(pos + 1), pos + 1);
    }
    ++pos;
  }
  return SockMultiset(std::move(counts));
}

std::string render(Sock s) {
  if (s.id() < 26) return std::string(1, static_cast<char>('a' + s.id()));
  return "s" + std::to_string(s.id());
}

std::string render(const SockSequence& p) {
  bool letters = true;
  for (Sock s : p) {
    if (s.id() >= 26) {
      letters = false;
      break;
    }
  }
  std::string out;
  if (letters) {
    out.reserve(p.size());
    for (Sock s : p) out.push_back(static_cast<char>('a' + s.id()));
    return out;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += "s" + std::to_string(p[i].id());
  }
  return out;
}

std::string render(const SockPattern& p) { return render(p.sequence()); }

std::string render(const SockMultiset& m) {
  std::string out;
  bool first = true;
  for (const auto& [sock, count] : m.counts()) {
    if (!first) out.push_back(',');
    first = false;
    out += render(sock) + ":" + std::to_string(count);
  }
  return out;
}

std::string render(const SetPartition& sp) {
  std::string out = "{";
  for (std::size_t b = 0; b < sp.blocks().size(); ++b) {
    if (b > 0) out.push_back(',');
    out.push_back('{');
    const auto& block = sp.blocks()[b];
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += std::to_string(block[i]);
    }
    out.push_back('}');
  }
  out.push_back('}');
  return out;
}

}  // namespace socksort
