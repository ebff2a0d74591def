#pragma once
// The deterministic sigma-avoiding stack machine and its surrounding toolkit:
// single passes (general, aba fast path, consecutive variant), trajectories,
// sort depth, run/block decomposition and witness constructions.
//
// One pass reads the input left to right.  At each step, if pushing the next
// input sock would not make the stack's top-to-bottom reading contain sigma,
// it is pushed; otherwise the top sock is popped to the output.  When the
// input is exhausted the stack drains.  Patterns of length < 2 are rejected:
// with them no push is ever legal and the machine would pop an empty stack.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "socksort/core.hpp"

namespace socksort {

/// The machine refuses patterns it cannot run (|sigma| < 2).
class UnsupportedPattern : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stack contents during a pass, bottom to top, plus per-sock counts.
class StackState {
 public:
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  Sock top() const { return cells_.back(); }
  const std::vector<Sock>& cells() const { return cells_; }

  /// The stack read from top to bottom (the sequence the machine guards).
  SockSequence reading() const;

  int count(Sock s) const;

  void push(Sock s);
  Sock pop();

 private:
  std::vector<Sock> cells_;
  std::map<Sock, int> counts_;
};

/// True iff pushing x would make (x followed by the current reading) contain
/// sigma.  Under the machine invariant -- the current reading avoids sigma --
/// any occurrence must use x as its first element, so the search is anchored
/// there.  Throws UnsupportedPattern when |sigma| < 2.
bool push_creates(const StackState& stack, Sock x, const SockPattern& sigma);

struct SortEvent {
  enum class Op { Push, Pop };
  Op op;
  Sock sock;
  bool operator==(const SortEvent&) const = default;
};

/// Full push/pop log of one pass.  Pushes, in order, spell the input; pops,
/// in order, spell the output.
struct SortTrace {
  std::vector<SortEvent> events;
  SockSequence input;
  SockSequence output;

  /// Replays the events and checks they spell input/output with every push
  /// matched by a later pop.
  bool consistent() const;

  /// {"input": ..., "output": ..., "events": [{"op":"push","sock":"a"}, ...]}
  std::string to_json() const;
};

/// One pass of the sigma-avoiding stack.  Throws UnsupportedPattern when
/// |sigma| < 2.
///
/// When the input avoids reverse(sigma), every push is legal and the pass
/// degenerates to reversal.  (Avoiding sigma itself is not enough: the stack
/// reading is the input prefix reversed, so it is occurrences of the
/// reversed pattern in the input that can block a push.)
SockSequence sort_pass(const SockPattern& sigma, const SockSequence& p);
SortTrace sort_pass_traced(const SockPattern& sigma, const SockSequence& p);

/// One pass of the aba-avoiding stack (the foot-sorting map).  Separate
/// O(1)-per-step code path: pushing x is illegal iff some occurrence of x in
/// the stack lies below a different sock, i.e. iff x occurs in the stack but
/// the x's do not form the whole top run.
SockSequence sort_pass_aba(const SockSequence& p);

/// Reusable aba-pass worker; keeps scratch buffers across calls so sweeps
/// over millions of inputs do not reallocate.
class AbaSorter {
 public:
  void apply(const std::vector<Sock>& input, std::vector<Sock>& output);

  /// Passes until sorted, up to `cap`; nullopt when still unsorted after cap.
  std::optional<int> depth(const std::vector<Sock>& input, int cap);

 private:
  struct Run {
    Sock sock;
    int length;
  };
  std::vector<Run> runs_;
  std::map<Sock, int> counts_;
  std::vector<Sock> scratch_a_, scratch_b_;
};

/// Consecutive variant: a push is illegal only when the top |sigma| socks of
/// the new reading form sigma as a consecutive factor.
SockSequence sort_pass_consecutive(const SockPattern& sigma, const SockSequence& p);
SortTrace sort_pass_consecutive_traced(const SockPattern& sigma, const SockSequence& p);

enum class Terminator { Sorted, Cycle, MaxIters };

/// Orbit of p under repeated passes, truncated at the first sorted iterate,
/// at a detected cycle, or at max_iters.
struct Trajectory {
  std::vector<SockSequence> iterates;  // iterates.front() == p
  Terminator terminator;
  int sorted_after = -1;   // passes until sorted (Terminator::Sorted)
  int cycle_start = -1;    // index where the cycle begins (Terminator::Cycle)
  int cycle_period = -1;   // minimal period (Terminator::Cycle)
};

Trajectory iterate(const SockPattern& sigma, const SockSequence& p, int max_iters);

/// Least k <= cap with the k-th iterate sorted; nullopt when p never sorts
/// within cap (detected cycles end the search early).
std::optional<int> sort_depth(const SockPattern& sigma, const SockSequence& p, int cap);

/// p written as x^{l1} s1 x^{l2} s2 ... x^{lm} sm x^{l(m+1)} where x is the
/// first sock, the li with i <= m are maximal-run lengths (> 0), the trailing
/// exponent may be 0, and the blocks si are nonempty and x-free.
struct Decomposition {
  Sock head;                          // x
  std::vector<int> run_lengths;       // l1..l(m+1); size == blocks.size() + 1
  std::vector<SockSequence> blocks;   // s1..sm

  SockSequence reassemble() const;
};

/// Throws std::invalid_argument on the empty sequence.
Decomposition decompose(const SockSequence& p);

/// Checks that one aba pass equals the pass applied blockwise followed by the
/// full run of the head sock.
bool verify_recursive_action(const SockSequence& p);

/// Socks whose occurrence indices are contiguous in p.
std::set<Sock> clumped_socks(const SockSequence& p);

/// (a1 ... an)^2: two interleaved copies of n distinct socks; needs the full
/// n passes to sort.  Throws std::invalid_argument when n < 1.
SockSequence tightness_witness(int n);

enum class SigmaClass { Sorted, AbaFamily, Case1, Case2, Unclassified };

/// Sorted patterns; the a..aba..a family; patterns containing abba or abca
/// (Case1); patterns containing abab, abac or caba (Case2, checked after
/// Case1).  Unclassified is never observed for unsorted non-family patterns
/// up to length 6 (asserted exhaustively in tests).
SigmaClass classify_sigma(const SockPattern& sigma);

std::string to_string(SigmaClass c);

/// A sequence on M that no number of sigma-passes ever sorts: the sorted
/// arrangement of M with the last a1 and first a2 swapped (Case1), or with
/// one copy of a1 moved to the end (Case2), where a1 is a sock of maximal
/// multiplicity (smallest id on ties) and the rest follow in id order.
/// Requires classify_sigma(sigma) in {Case1, Case2}, at least two distinct
/// socks in M and some multiplicity >= 2; throws std::invalid_argument
/// otherwise.
SockSequence never_sorted_witness(const SockPattern& sigma, const SockMultiset& m);

}  // namespace socksort
