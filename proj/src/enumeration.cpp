#include "socksort/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace socksort {

std::uint64_t bell_number(int n) {
  if (n < 0) throw std::invalid_argument("Bell number index must be >= 0");
  if (n > 25) throw std::invalid_argument("Bell(" + std::to_string(n) +
                                          ") exceeds 64 bits");
  // Bell triangle.
  std::vector<std::uint64_t> row = {1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

PatternStream::PatternStream(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("pattern length must be >= 0");
  rgs_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 1; i < prefix_max_.size(); ++i) {
    prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i - 1]);
  }
}

std::optional<SockPattern> PatternStream::next() {
  if (done_) return std::nullopt;
  if (!first_) {
    // Lexicographic successor: bump the rightmost position that can grow,
    // reset everything after it to 0.
    int i = n_ - 1;
    while (i >= 1 && rgs_[static_cast<std::size_t>(i)] >
                         prefix_max_[static_cast<std::size_t>(i)]) {
      --i;
    }
    if (i < 1) {
      done_ = true;
      return std::nullopt;
    }
    ++rgs_[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1;
         j < static_cast<std::size_t>(n_); ++j) {
      prefix_max_[j] = std::max(prefix_max_[j - 1], rgs_[j - 1]);
      rgs_[j] = 0;
    }
  }
  first_ = false;
  std::vector<Sock> socks;
  socks.reserve(static_cast<std::size_t>(n_));
  for (int v : rgs_) socks.emplace_back(v);
  return SockPattern::from_rgs(SockSequence(std::move(socks)));
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct PrefixTask {
  std::vector<Sock> prefix;
  int max_id;
};

std::vector<PrefixTask> rgs_prefixes(int len) {
  std::vector<PrefixTask> tasks;
  std::vector<Sock> buf(static_cast<std::size_t>(len));
  std::function<void(int, int)> rec = [&](int depth, int max_id) {
    if (depth == len) {
      tasks.push_back({buf, max_id});
      return;
    }
    for (int v = 0; v <= max_id + 1; ++v) {
      buf[static_cast<std::size_t>(depth)] = Sock(v);
      rec(depth + 1, std::max(max_id, v));
    }
  };
  rec(0, -1);
  return tasks;
}

template <typename Fn>
void complete_rgs(std::vector<Sock>& buf, int depth, int max_id, int n, Fn&& fn) {
  if (depth == n) {
    fn(buf, max_id);
    return;
  }
  for (int v = 0; v <= max_id + 1; ++v) {
    buf[static_cast<std::size_t>(depth)] = Sock(v);
    complete_rgs(buf, depth + 1, std::max(max_id, v), n, fn);
  }
}

// Runs fn(worker, pattern_socks, max_id) over every RGS of length n.  The
// work unit is the RGS prefix of length min(n, 6); workers pull prefixes from
// a shared queue, so any schedule visits each pattern exactly once.  A worker
// exception is rethrown on the calling thread after the pool drains.
template <typename Fn>
void parallel_pattern_sweep(int n, int threads, Fn&& fn) {
  const int L = std::min(n, 6);
  auto tasks = rgs_prefixes(L);
  std::atomic<std::size_t> cursor{0};
  auto work = [&](int worker) {
    std::vector<Sock> buf(static_cast<std::size_t>(n));
    for (;;) {
      const std::size_t t = cursor.fetch_add(1);
      if (t >= tasks.size()) break;
      std::copy(tasks[t].prefix.begin(), tasks[t].prefix.end(), buf.begin());
      complete_rgs(buf, L, tasks[t].max_id, n,
                   [&](const std::vector<Sock>& p, int m) { fn(worker, p, m); });
    }
  };
  if (threads == 1) {
    work(0);
    return;
  }
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        work(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor.store(tasks.size());  // drain the queue so the pool stops
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::uint64_t count_sortable(int n, int k, int threads) {
  if (n < 1) throw std::invalid_argument("length must be >= 1");
  if (k < 0) throw std::invalid_argument("pass budget must be >= 0");
  const int nthreads = resolve_threads(threads);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(nthreads), 0);
  std::vector<AbaSorter> sorters(static_cast<std::size_t>(nthreads));
  parallel_pattern_sweep(n, nthreads,
                         [&](int w, const std::vector<Sock>& p, int) {
                           if (sorters[static_cast<std::size_t>(w)].depth(p, k)) {
                             ++counts[static_cast<std::size_t>(w)];
                           }
                         });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return total;
}

std::map<int, std::uint64_t> count_sortable_refined(int n, int k, int threads) {
  if (n < 1) throw std::invalid_argument("length must be >= 1");
  if (k < 0) throw std::invalid_argument("pass budget must be >= 0");
  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(nthreads),
      std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  std::vector<AbaSorter> sorters(static_cast<std::size_t>(nthreads));
  parallel_pattern_sweep(n, nthreads,
                         [&](int w, const std::vector<Sock>& p, int max_id) {
                           if (sorters[static_cast<std::size_t>(w)].depth(p, k)) {
                             ++counts[static_cast<std::size_t>(w)]
                                     [static_cast<std::size_t>(max_id) + 1];
                           }
                         });
  std::map<int, std::uint64_t> result;
  for (const auto& local : counts) {
    for (std::size_t r = 1; r < local.size(); ++r) {
      if (local[r] > 0) result[static_cast<int>(r)] += local[r];
    }
  }
  return result;
}

std::string CountTable::to_csv() const {
  std::ostringstream out;
  if (refined) {
    for (const auto& [nr, count] : entries) {
      out << nr.first << ',' << nr.second << ',' << count << '\n';
    }
  } else {
    for (const auto& [n, count] : marginals) {
      out << n << ',' << count << '\n';
    }
  }
  return out.str();
}

std::string CountTable::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["refined"] = refined;
  auto rows = nlohmann::json::array();
  if (refined) {
    for (const auto& [nr, count] : entries) {
      rows.push_back({{"n", nr.first}, {"r", nr.second}, {"count", count}});
    }
  } else {
    for (const auto& [n, count] : marginals) {
      rows.push_back({{"n", n}, {"count", count}});
    }
  }
  j["rows"] = rows;
  return j.dump();
}

CountTable build_count_table(int max_len, int k, bool refined, int threads) {
  if (max_len < 1) throw std::invalid_argument("max length must be >= 1");
  CountTable table;
  table.k = k;
  table.refined = refined;
  for (int n = 1; n <= max_len; ++n) {
    if (refined) {
      auto by_r = count_sortable_refined(n, k, threads);
      std::uint64_t marginal = 0;
      for (const auto& [r, count] : by_r) {
        table.entries[{n, r}] = count;
        marginal += count;
      }
      table.marginals[n] = marginal;
    } else {
      table.marginals[n] = count_sortable(n, k, threads);
    }
  }
  return table;
}

std::string DepthProfile::to_csv() const {
  std::ostringstream out;
  for (const auto& [depth, count] : histogram) {
    out << n << ',' << depth << ',' << count << '\n';
  }
  return out.str();
}

std::string DepthProfile::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  auto rows = nlohmann::json::array();
  for (const auto& [depth, count] : histogram) {
    rows.push_back({{"depth", depth}, {"count", count}});
  }
  j["rows"] = rows;
  return j.dump();
}

DepthProfile depth_profile(int n, int threads) {
  if (n < 1) throw std::invalid_argument("length must be >= 1");
  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> hists(
      static_cast<std::size_t>(nthreads),
      std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  std::vector<AbaSorter> sorters(static_cast<std::size_t>(nthreads));
  parallel_pattern_sweep(
      n, nthreads, [&](int w, const std::vector<Sock>& p, int max_id) {
        // Depth never exceeds the number of distinct socks, so the cap
        // max_id + 1 is exact; running past it would be a machine bug.
        auto d = sorters[static_cast<std::size_t>(w)].depth(p, max_id + 1);
        if (!d) {
          throw std::logic_error("pattern needed more passes than its "
                                 "distinct-sock count");
        }
        ++hists[static_cast<std::size_t>(w)][static_cast<std::size_t>(*d)];
      });
  DepthProfile profile;
  profile.n = n;
  for (const auto& local : hists) {
    for (std::size_t d = 0; d < local.size(); ++d) {
      if (local[d] > 0) profile.histogram[static_cast<int>(d)] += local[d];
    }
  }
  return profile;
}

bool CycleReport::within_caps() const {
  if (max_transient_observed > max_transient_requested) return false;
  for (const auto& c : cycles) {
    if (c.period > max_period_requested) return false;
  }
  return true;
}

std::string CycleReport::to_json() const {
  nlohmann::ordered_json j;
  j["sigma"] = render(sigma);
  j["multiset"] = render(multiset);
  j["arrangements"] = arrangement_count;
  j["max_period_requested"] = max_period_requested;
  j["max_transient_requested"] = max_transient_requested;
  auto rows = nlohmann::json::array();
  for (const auto& c : cycles) {
    rows.push_back({{"period", c.period},
                    {"representative", render(c.representative)},
                    {"sorted", c.sorted}});
  }
  j["cycles"] = rows;
  j["max_transient_observed"] = max_transient_observed;
  j["within_caps"] = within_caps();
  return j.dump();
}

CycleReport find_periodic(const SockPattern& sigma, const SockMultiset& m,
                          int max_period, int max_transient, std::uint64_t cap) {
  if (sigma.size() < 2) {
    throw UnsupportedPattern("pattern '" + render(sigma) +
                             "' is unsupported: the machine needs |sigma| >= 2");
  }
  const std::uint64_t size = socksort::arrangement_count(m);
  if (size > cap) {
    throw std::invalid_argument("S(M) has " + std::to_string(size) +
                                " arrangements, above the cap of " +
                                std::to_string(cap));
  }

  // Materialize S(M) (lexicographic, so index lookup is a binary search) and
  // the pass as a functional graph over it.
  std::vector<SockSequence> seqs;
  seqs.reserve(static_cast<std::size_t>(size));
  ArrangementStream stream(m);
  while (auto seq = stream.next()) seqs.push_back(std::move(*seq));

  auto index_of = [&seqs](const SockSequence& s) {
    auto it = std::lower_bound(seqs.begin(), seqs.end(), s);
    return static_cast<std::size_t>(it - seqs.begin());
  };
  std::vector<std::size_t> next(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    next[i] = index_of(sort_pass(sigma, seqs[i]));
  }

  // Walk the graph; color 1 marks the active walk, so re-hitting it exposes
  // a new cycle.
  std::vector<std::uint8_t> color(seqs.size(), 0);
  std::vector<std::uint8_t> on_cycle(seqs.size(), 0);
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < seqs.size(); ++start) {
    if (color[start] != 0) continue;
    path.clear();
    std::size_t v = start;
    while (color[v] == 0) {
      color[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (color[v] == 1) {
      // Found a fresh cycle; everything on the path from v onward is on it.
      bool in_cycle = false;
      for (std::size_t node : path) {
        if (node == v) in_cycle = true;
        if (in_cycle) on_cycle[node] = 1;
      }
    }
    for (std::size_t node : path) color[node] = 2;
  }

  // Transient lengths, memoized by backfilling each walk.
  std::vector<int> transient(seqs.size(), -1);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (on_cycle[i]) transient[i] = 0;
  }
  for (std::size_t start = 0; start < seqs.size(); ++start) {
    if (transient[start] >= 0) continue;
    path.clear();
    std::size_t v = start;
    while (transient[v] < 0) {
      path.push_back(v);
      v = next[v];
    }
    int base = transient[v];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      transient[*it] = ++base;
    }
  }

  CycleReport report;
  report.sigma = sigma;
  report.multiset = m;
  report.arrangement_count = size;
  report.max_period_requested = max_period;
  report.max_transient_requested = max_transient;
  for (int t : transient) {
    report.max_transient_observed = std::max(report.max_transient_observed, t);
  }

  std::vector<std::uint8_t> visited(seqs.size(), 0);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (!on_cycle[i] || visited[i]) continue;
    CycleReport::Cycle cycle;
    cycle.period = 0;
    cycle.sorted = true;
    std::size_t rep = i;
    std::size_t v = i;
    do {
      visited[v] = 1;
      ++cycle.period;
      cycle.sorted = cycle.sorted && is_sorted(seqs[v]);
      if (seqs[v] < seqs[rep]) rep = v;
      v = next[v];
    } while (v != i);
    cycle.representative = seqs[rep];
    report.cycles.push_back(std::move(cycle));
  }
  std::sort(report.cycles.begin(), report.cycles.end(),
            [](const CycleReport::Cycle& a, const CycleReport::Cycle& b) {
              if (a.period != b.period) return a.period < b.period;
              return a.representative < b.representative;
            });
  return report;
}

}  // namespace socksort
