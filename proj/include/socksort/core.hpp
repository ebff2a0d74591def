#pragma once
// Sock sequences, sock patterns, set partitions and sock multisets.
//
// A sock is an element of an unbounded alphabet, canonically a non-negative
// integer id.  Ids 0, 1, 2, ... render as the letters a, b, c, ...; sequences
// with ids beyond 'z' render in the comma-separated token form "s0,s1,...".
// A sequence is sorted when every sock's occurrences form one contiguous
// block.  Patterns are sequences in restricted-growth form; they canonically
// represent the equivalence classes of sequences under injective renaming of
// socks and are in bijection with set partitions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace socksort {

/// Parse failure; position() is the 1-based offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// One sock: an immutable non-negative id.
class Sock {
 public:
  constexpr Sock() = default;
  constexpr explicit Sock(int id) : id_(id) {}
  constexpr int id() const { return id_; }
  auto operator<=>(const Sock&) const = default;

 private:
  int id_ = 0;
};

/// A finite sequence of socks.  Value type; immutable once built.
class SockSequence {
 public:
  SockSequence() = default;
  explicit SockSequence(std::vector<Sock> socks) : socks_(std::move(socks)) {}

  std::size_t size() const { return socks_.size(); }
  bool empty() const { return socks_.empty(); }
  Sock operator[](std::size_t i) const { return socks_[i]; }
  const std::vector<Sock>& socks() const { return socks_; }

  auto begin() const { return socks_.begin(); }
  auto end() const { return socks_.end(); }

  auto operator<=>(const SockSequence&) const = default;

 private:
  std::vector<Sock> socks_;
};

/// A standardized sock sequence (restricted-growth form): the sock at the
/// first position has id 0 and every id is at most one more than the maximum
/// id appearing earlier.  Canonical representative of a sock pattern.
class SockPattern {
 public:
  SockPattern() = default;  // the empty pattern

  /// Wraps a sequence that is already in restricted-growth form.
  /// Throws std::invalid_argument otherwise.
  static SockPattern from_rgs(SockSequence seq);

  const SockSequence& sequence() const { return seq_; }
  std::size_t size() const { return seq_.size(); }
  bool empty() const { return seq_.empty(); }
  Sock operator[](std::size_t i) const { return seq_[i]; }

  auto operator<=>(const SockPattern&) const = default;

 private:
  friend SockPattern standardize(const SockSequence&);
  struct AlreadyCanonical {};
  SockPattern(SockSequence seq, AlreadyCanonical) : seq_(std::move(seq)) {}

  SockSequence seq_;
};

/// A partition of the ground set {1,...,n} into disjoint nonempty blocks.
/// Canonical form: indices ascending within a block, blocks ordered by their
/// minimum element.
class SetPartition {
 public:
  SetPartition() = default;  // partition of the empty set

  /// Validates and canonicalizes.  Throws std::invalid_argument when the
  /// blocks overlap, leave a gap, or contain indices outside {1,...,n}.
  SetPartition(int n, std::vector<std::vector<int>> blocks);

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  auto operator<=>(const SetPartition&) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
};

/// A multiset of socks; all multiplicities are >= 1.
class SockMultiset {
 public:
  SockMultiset() = default;

  /// Throws std::invalid_argument when a multiplicity is < 1.
  explicit SockMultiset(std::map<Sock, int> counts);
  static SockMultiset from_sequence(const SockSequence& p);

  const std::map<Sock, int>& counts() const { return counts_; }
  std::size_t total_size() const;
  std::size_t distinct_count() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  auto operator<=>(const SockMultiset&) const = default;

 private:
  std::map<Sock, int> counts_;
};

// --- Core operations ---

/// Renames socks injectively so first occurrences, left to right, become
/// ids 0, 1, 2, ...  Idempotent on patterns.
SockPattern standardize(const SockSequence& p);

/// True iff every sock's occurrence indices form a contiguous interval.
/// The empty sequence is sorted.
bool is_sorted(const SockSequence& p);

/// The sequence read back-to-front.
SockSequence reversed(const SockSequence& p);

/// The set of distinct socks appearing in p, and its size.
std::set<Sock> sock_set(const SockSequence& p);
int distinct_count(const SockSequence& p);

/// 1-based indices at which sock m occurs, ascending; empty if absent.
std::vector<int> occurrence_indices(const SockSequence& p, Sock m);

/// True iff some (not necessarily consecutive) subsequence of p standardizes
/// to sigma.  Backtracking over injective partial sock assignments; intended
/// for short patterns (all uses here have |sigma| <= 8).
bool contains(const SockSequence& p, const SockPattern& sigma);
inline bool avoids(const SockSequence& p, const SockPattern& sigma) {
  return !contains(p, sigma);
}

/// Applies an injective renaming to every sock.  Throws std::invalid_argument
/// when the map misses a sock of p or is not injective on them.
SockSequence renamed(const SockSequence& p, const std::map<Sock, Sock>& f);

/// The partition whose blocks are the occurrence-index sets of p's socks.
SetPartition to_set_partition(const SockSequence& p);

/// Inverse: the standardized sequence whose occurrence-index sets are sp's
/// blocks.  to_set_partition(from_set_partition(sp)) == sp.
SockPattern from_set_partition(const SetPartition& sp);

/// Streams every distinct arrangement of M exactly once, in lexicographic
/// order of sock ids.
class ArrangementStream {
 public:
  explicit ArrangementStream(const SockMultiset& m);
  std::optional<SockSequence> next();

 private:
  std::vector<Sock> current_;
  bool done_ = false;
  bool first_ = true;
};

/// (total)! / prod(count_i!), saturating at UINT64_MAX.
std::uint64_t arrangement_count(const SockMultiset& m);

// --- Text grammar ---
//
// Sequence: a word over [a-z] (letter k = sock id k-'a'), or comma-separated
// tokens "s<digits>" (token sk = sock id k).  Multiset: comma-separated
// "<sock>:<count>" entries, e.g. "a:2,b:2".  Partitions render as
// "{{1,2,4},{3,6},{5}}".

SockSequence parse_sequence(std::string_view text);

/// Parses a sequence and standardizes it (any representative names a pattern).
SockPattern parse_pattern(std::string_view text);

SockMultiset parse_multiset(std::string_view text);

std::string render(Sock s);
std::string render(const SockSequence& p);
std::string render(const SockPattern& p);
std::string render(const SockMultiset& m);
std::string render(const SetPartition& sp);

}  // namespace socksort
