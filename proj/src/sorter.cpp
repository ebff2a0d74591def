#include "socksort/sorter.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include <json.hpp>

namespace socksort {

namespace detail {
bool contains_anchored_first(const SockSequence& p, const SockPattern& sigma);
}

SockSequence StackState::reading() const {
  return reversed(SockSequence(cells_));
}

int StackState::count(Sock s) const {
  auto it = counts_.find(s);
  return it == counts_.end() ? 0 : it->second;
}

void StackState::push(Sock s) {
  cells_.push_back(s);
  ++counts_[s];
}

Sock StackState::pop() {
  if (cells_.empty()) throw std::logic_error("pop from an empty stack");
  Sock s = cells_.back();
  cells_.pop_back();
  auto it = counts_.find(s);
  if (--it->second == 0) counts_.erase(it);
  return s;
}

namespace {

void require_supported(const SockPattern& sigma) {
  if (sigma.size() < 2) {
    throw UnsupportedPattern(
        "pattern '" + render(sigma) +
        "' is unsupported: the machine needs |sigma| >= 2 (with a length-1 "
        "pattern no push is ever legal)");
  }
}

// Candidate reading after pushing x: x followed by the stack top to bottom.
SockSequence candidate_reading(const StackState& stack, Sock x) {
  std::vector<Sock> cand;
  cand.reserve(stack.size() + 1);
  cand.push_back(x);
  const auto& cells = stack.cells();
  cand.insert(cand.end(), cells.rbegin(), cells.rend());
  return SockSequence(std::move(cand));
}

}  // namespace

bool push_creates(const StackState& stack, Sock x, const SockPattern& sigma) {
  require_supported(sigma);
  return detail::contains_anchored_first(candidate_reading(stack, x), sigma);
}

bool SortTrace::consistent() const {
  std::vector<Sock> stack, pushed, popped;
  for (const SortEvent& e : events) {
    if (e.op == SortEvent::Op::Push) {
      stack.push_back(e.sock);
      pushed.push_back(e.sock);
    } else {
      if (stack.empty() || stack.back() != e.sock) return false;
      stack.pop_back();
      popped.push_back(e.sock);
    }
  }
  return stack.empty() && SockSequence(pushed) == input &&
         SockSequence(popped) == output;
}

std::string SortTrace::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = render(input);
  j["output"] = render(output);
  j["events"] = nlohmann::json::array();
  for (const SortEvent& e : events) {
    j["events"].push_back({{"op", e.op == SortEvent::Op::Push ? "push" : "pop"},
                           {"sock", render(e.sock)}});
  }
  return j.dump();
}

namespace {

// The shared machine loop.  `push_illegal(stack, x)` decides legality; traces
// are optional.
template <typename PushIllegal>
SockSequence run_machine(const SockSequence& p, PushIllegal&& push_illegal,
                         SortTrace* trace) {
  StackState stack;
  std::vector<Sock> output;
  output.reserve(p.size());
  std::size_t next = 0;
  while (output.size() < p.size()) {
    if (next < p.size() && !push_illegal(stack, p[next])) {
      stack.push(p[next]);
      if (trace) trace->events.push_back({SortEvent::Op::Push, p[next]});
      ++next;
    } else {
      // For |sigma| >= 2 a push onto an empty stack is always legal, so the
      // machine never reaches here with an empty stack; pop() enforces it.
      Sock s = stack.pop();
      if (trace) trace->events.push_back({SortEvent::Op::Pop, s});
      output.push_back(s);
    }
  }
  return SockSequence(std::move(output));
}

SockSequence run_subsequence_machine(const SockPattern& sigma,
                                     const SockSequence& p, SortTrace* trace) {
  require_supported(sigma);
  return run_machine(
      p,
      [&sigma](const StackState& stack, Sock x) {
        return detail::contains_anchored_first(candidate_reading(stack, x), sigma);
      },
      trace);
}

SockSequence run_consecutive_machine(const SockPattern& sigma,
                                     const SockSequence& p, SortTrace* trace) {
  require_supported(sigma);
  const std::size_t k = sigma.size();
  return run_machine(
      p,
      [&sigma, k](const StackState& stack, Sock x) {
        if (stack.size() + 1 < k) return false;
        std::vector<Sock> top;
        top.reserve(k);
        top.push_back(x);
        const auto& cells = stack.cells();
        for (std::size_t i = 0; i < k - 1; ++i) {
          top.push_back(cells[cells.size() - 1 - i]);
        }
        return standardize(SockSequence(std::move(top))) == sigma;
      },
      trace);
}

}  // namespace

SockSequence sort_pass(const SockPattern& sigma, const SockSequence& p) {
  return run_subsequence_machine(sigma, p, nullptr);
}

SortTrace sort_pass_traced(const SockPattern& sigma, const SockSequence& p) {
  SortTrace trace;
  trace.input = p;
  trace.output = run_subsequence_machine(sigma, p, &trace);
  return trace;
}

SockSequence sort_pass_consecutive(const SockPattern& sigma, const SockSequence& p) {
  return run_consecutive_machine(sigma, p, nullptr);
}

SortTrace sort_pass_consecutive_traced(const SockPattern& sigma,
                                       const SockSequence& p) {
  SortTrace trace;
  trace.input = p;
  trace.output = run_consecutive_machine(sigma, p, &trace);
  return trace;
}

void AbaSorter::apply(const std::vector<Sock>& input, std::vector<Sock>& output) {
  runs_.clear();
  counts_.clear();
  output.clear();
  output.reserve(input.size());
  std::size_t next = 0;
  while (output.size() < input.size()) {
    bool push = false;
    if (next < input.size()) {
      const Sock x = input[next];
      auto it = counts_.find(x);
      // Legal iff x is absent or all copies of x form the whole top run.
      push = it == counts_.end() ||
             (!runs_.empty() && runs_.back().sock == x &&
              runs_.back().length == it->second);
    }
    if (push) {
      const Sock x = input[next++];
      if (!runs_.empty() && runs_.back().sock == x) {
        ++runs_.back().length;
      } else {
        runs_.push_back({x, 1});
      }
      ++counts_[x];
    } else {
      if (runs_.empty()) throw std::logic_error("pop from an empty stack");
      Sock s = runs_.back().sock;
      if (--runs_.back().length == 0) runs_.pop_back();
      auto it = counts_.find(s);
      if (--it->second == 0) counts_.erase(it);
      output.push_back(s);
    }
  }
}

std::optional<int> AbaSorter::depth(const std::vector<Sock>& input, int cap) {
  if (is_sorted(SockSequence(input))) return 0;
  scratch_a_ = input;
  for (int k = 1; k <= cap; ++k) {
    apply(scratch_a_, scratch_b_);
    std::swap(scratch_a_, scratch_b_);
    if (is_sorted(SockSequence(scratch_a_))) return k;
  }
  return std::nullopt;
}

SockSequence sort_pass_aba(const SockSequence& p) {
  AbaSorter sorter;
  std::vector<Sock> out;
  sorter.apply(p.socks(), out);
  return SockSequence(std::move(out));
}

Trajectory iterate(const SockPattern& sigma, const SockSequence& p, int max_iters) {
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  require_supported(sigma);
  Trajectory t;
  t.iterates.push_back(p);
  if (is_sorted(p)) {
    t.terminator = Terminator::Sorted;
    t.sorted_after = 0;
    return t;
  }
  std::map<SockSequence, int> seen;
  seen.emplace(p, 0);
  while (static_cast<int>(t.iterates.size()) - 1 < max_iters) {
    SockSequence next = sort_pass(sigma, t.iterates.back());
    if (auto it = seen.find(next); it != seen.end()) {
      t.terminator = Terminator::Cycle;
      t.cycle_start = it->second;
      t.cycle_period = static_cast<int>(t.iterates.size()) - it->second;
      return t;
    }
    const bool sorted = is_sorted(next);
    seen.emplace(next, static_cast<int>(t.iterates.size()));
    t.iterates.push_back(std::move(next));
    if (sorted) {
      t.terminator = Terminator::Sorted;
      t.sorted_after = static_cast<int>(t.iterates.size()) - 1;
      return t;
    }
  }
  t.terminator = Terminator::MaxIters;
  return t;
}

std::optional<int> sort_depth(const SockPattern& sigma, const SockSequence& p,
                              int cap) {
  if (cap < 0) throw std::invalid_argument("cap must be >= 0");
  if (is_sorted(p)) return 0;
  if (cap == 0) return std::nullopt;
  Trajectory t = iterate(sigma, p, cap);
  if (t.terminator == Terminator::Sorted) return t.sorted_after;
  return std::nullopt;
}

Decomposition decompose(const SockSequence& p) {
  if (p.empty()) throw std::invalid_argument("cannot decompose the empty sequence");
  Decomposition d;
  d.head = p[0];
  std::size_t i = 0;
  const std::size_t n = p.size();
  while (true) {
    // Maximal run of the head sock (empty only before a final exponent of 0).
    int run = 0;
    while (i < n && p[i] == d.head) {
      ++run;
      ++i;
    }
    d.run_lengths.push_back(run);
    if (i == n) break;
    std::vector<Sock> block;
    while (i < n && p[i] != d.head) block.push_back(p[i++]);
    d.blocks.push_back(SockSequence(std::move(block)));
    if (i == n) {
      d.run_lengths.push_back(0);  // l(m+1) = 0: p ends inside a block
      break;
    }
  }
  return d;
}

SockSequence Decomposition::reassemble() const {
  std::vector<Sock> out;
  for (std::size_t i = 0; i < run_lengths.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(run_lengths[i]), head);
    if (i < blocks.size()) {
      out.insert(out.end(), blocks[i].begin(), blocks[i].end());
    }
  }
  return SockSequence(std::move(out));
}

bool verify_recursive_action(const SockSequence& p) {
  const Decomposition d = decompose(p);
  std::vector<Sock> expected;
  for (const SockSequence& block : d.blocks) {
    const SockSequence sorted_block = sort_pass_aba(block);
    expected.insert(expected.end(), sorted_block.begin(), sorted_block.end());
  }
  int total_run = 0;
  for (int l : d.run_lengths) total_run += l;
  expected.insert(expected.end(), static_cast<std::size_t>(total_run), d.head);
  return sort_pass_aba(p) == SockSequence(std::move(expected));
}

std::set<Sock> clumped_socks(const SockSequence& p) {
  std::map<Sock, std::pair<int, int>> span;  // first/last index
  std::map<Sock, int> count;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [it, inserted] = span.emplace(p[i], std::pair{int(i), int(i)});
    if (!inserted) it->second.second = static_cast<int>(i);
    ++count[p[i]];
  }
  std::set<Sock> clumped;
  for (const auto& [sock, fl] : span) {
    if (fl.second - fl.first + 1 == count[sock]) clumped.insert(sock);
  }
  return clumped;
}

SockSequence tightness_witness(int n) {
  if (n < 1) throw std::invalid_argument("tightness witness needs n >= 1");
  std::vector<Sock> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int copy = 0; copy < 2; ++copy) {
    for (int i = 0; i < n; ++i) out.emplace_back(i);
  }
  return SockSequence(std::move(out));
}

SigmaClass classify_sigma(const SockPattern& sigma) {
  const SockSequence& s = sigma.sequence();
  if (is_sorted(s)) return SigmaClass::Sorted;
  // a^i b a^j with i, j >= 1: two distinct socks, the second occurring once,
  // not at either end (an unsorted pattern cannot start with it anyway).
  if (distinct_count(s) == 2) {
    const auto ones = occurrence_indices(s, Sock(1));
    if (ones.size() == 1 && ones.front() > 1 &&
        ones.front() < static_cast<int>(s.size())) {
      return SigmaClass::AbaFamily;
    }
  }
  static const SockPattern kCase1[] = {parse_pattern("abba"), parse_pattern("abca")};
  static const SockPattern kCase2[] = {parse_pattern("abab"), parse_pattern("abac"),
                                       parse_pattern("caba")};
  for (const SockPattern& t : kCase1) {
    if (contains(s, t)) return SigmaClass::Case1;
  }
  for (const SockPattern& t : kCase2) {
    if (contains(s, t)) return SigmaClass::Case2;
  }
  return SigmaClass::Unclassified;
}

std::string to_string(SigmaClass c) {
  switch (c) {
    case SigmaClass::Sorted: return "SORTED";
    case SigmaClass::AbaFamily: return "ABA_FAMILY";
    case SigmaClass::Case1: return "CASE1";
    case SigmaClass::Case2: return "CASE2";
    case SigmaClass::Unclassified: return "UNCLASSIFIED";
  }
  return "UNCLASSIFIED";
}

SockSequence never_sorted_witness(const SockPattern& sigma, const SockMultiset& m) {
  const SigmaClass cls = classify_sigma(sigma);
  if (cls != SigmaClass::Case1 && cls != SigmaClass::Case2) {
    throw std::invalid_argument("pattern '" + render(sigma) + "' is " +
                                to_string(cls) +
                                "; the construction needs CASE1 or CASE2");
  }
  if (m.distinct_count() < 2) {
    throw std::invalid_argument("multiset needs at least 2 distinct socks");
  }
  // a1 = maximal multiplicity, smallest id on ties; the rest in id order.
  std::vector<std::pair<Sock, int>> socks(m.counts().begin(), m.counts().end());
  auto lead = std::max_element(
      socks.begin(), socks.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  if (lead->second < 2) {
    throw std::invalid_argument(
        "multiset needs a sock with multiplicity >= 2 (otherwise every "
        "arrangement is already sorted)");
  }
  std::rotate(socks.begin(), lead, lead + 1);

  std::vector<Sock> out;
  if (cls == SigmaClass::Case1) {
    // Sorted arrangement with the last a1 and the first a2 swapped.
    out.insert(out.end(), static_cast<std::size_t>(socks[0].second - 1),
               socks[0].first);
    out.push_back(socks[1].first);
    out.push_back(socks[0].first);
    out.insert(out.end(), static_cast<std::size_t>(socks[1].second - 1),
               socks[1].first);
    for (std::size_t i = 2; i < socks.size(); ++i) {
      out.insert(out.end(), static_cast<std::size_t>(socks[i].second),
                 socks[i].first);
    }
  } else {
    // Sorted arrangement with one copy of a1 moved to the end.
    out.insert(out.end(), static_cast<std::size_t>(socks[0].second - 1),
               socks[0].first);
    for (std::size_t i = 1; i < socks.size(); ++i) {
      out.insert(out.end(), static_cast<std::size_t>(socks[i].second),
                 socks[i].first);
    }
    out.push_back(socks[0].first);
  }
  return SockSequence(std::move(out));
}

}  // namespace socksort
