#pragma once
// Exhaustive sweeps over sock patterns: restricted-growth-string streams,
// sortability counting (coarse and refined by distinct-sock count), depth
// histograms and periodic-point searches over S(M).
//
// Counting sweeps split the pattern space by RGS prefix and run the subtrees
// on a worker pool; aggregation is integer addition, so results do not depend
// on the schedule.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socksort/core.hpp"
#include "socksort/sorter.hpp"

namespace socksort {

/// Bell number B(n): the number of sock patterns (equivalently set
/// partitions) of length n.  Exact for n <= 25; throws beyond.
std::uint64_t bell_number(int n);

/// Streams every restricted-growth string of length n, lexicographically.
class PatternStream {
 public:
  explicit PatternStream(int n);
  std::optional<SockPattern> next();

 private:
  int n_;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  bool first_ = true;
  bool done_ = false;
};

/// Number of patterns of length n whose aba sort depth is <= k.
/// k = 1 gives s(n).
std::uint64_t count_sortable(int n, int k, int threads = 0);

/// Same count broken down by number of distinct socks r.
std::map<int, std::uint64_t> count_sortable_refined(int n, int k, int threads = 0);

/// Rows (n, r) -> count with per-n marginals; what `count` prints.
struct CountTable {
  int k = 1;
  bool refined = false;
  std::map<int, std::uint64_t> marginals;                 // n -> count
  std::map<std::pair<int, int>, std::uint64_t> entries;   // (n, r) -> count

  std::string to_csv() const;   // "n,count" or "n,r,count" lines
  std::string to_json() const;  // results payload for the run report
};

CountTable build_count_table(int max_len, int k, bool refined, int threads = 0);

/// Histogram of aba sort depth over all patterns of length n.
struct DepthProfile {
  int n = 0;
  std::map<int, std::uint64_t> histogram;  // depth -> count

  std::string to_csv() const;   // "n,depth,count" lines
  std::string to_json() const;
};

DepthProfile depth_profile(int n, int threads = 0);

/// All cycles of the sigma-pass on S(M), found exactly by walking the full
/// functional graph.  Representatives are the lexicographically smallest
/// member of each cycle; periods are minimal.
struct CycleReport {
  SockPattern sigma;
  SockMultiset multiset;
  std::uint64_t arrangement_count = 0;

  struct Cycle {
    int period;
    SockSequence representative;
    bool sorted;  // period-1 cycles at sorted sequences are fixed points of sorting
  };
  std::vector<Cycle> cycles;          // ordered by (period, representative)
  int max_transient_observed = 0;     // longest approach to a cycle
  int max_period_requested = 0;
  int max_transient_requested = 0;

  bool within_caps() const;
  std::string to_json() const;
};

/// Throws UnsupportedPattern when |sigma| < 2 and std::invalid_argument when
/// |S(M)| exceeds `cap` (the message reports the size).
CycleReport find_periodic(const SockPattern& sigma, const SockMultiset& m,
                          int max_period, int max_transient,
                          std::uint64_t cap = 1'000'000);

}  // namespace socksort
