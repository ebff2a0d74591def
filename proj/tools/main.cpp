// Command-line front end: sorting passes and traces, depth queries,
// enumeration sweeps, generating-function expansion, brute-force-vs-series
// verification, asymptotics and witness construction.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.  The split
// lets CI distinguish "a claimed identity failed" from "bad invocation".

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "socksort/asymptotics.hpp"
#include "socksort/core.hpp"
#include "socksort/enumeration.hpp"
#include "socksort/series.hpp"
#include "socksort/sorter.hpp"

namespace {

using namespace socksort;

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

class Timer {
 public:
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Uniform wrapper for --format json outputs.
nlohmann::ordered_json run_report(const std::string& command,
                                  nlohmann::ordered_json parameters,
                                  nlohmann::ordered_json results,
                                  const Timer& timer) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["results"] = std::move(results);
  j["wall_time_ms"] = timer.ms();
  return j;
}

struct SortArgs {
  std::string sigma;
  std::string input;
  bool consecutive = false;
  bool trace = false;
};

int run_sort(const SortArgs& args) {
  const SockPattern sigma = parse_pattern(args.sigma);
  const SockSequence input = parse_sequence(args.input);
  const SortTrace trace = args.consecutive
                              ? sort_pass_consecutive_traced(sigma, input)
                              : sort_pass_traced(sigma, input);
  std::cout << render(trace.output) << "\n";
  if (args.trace) std::cout << trace.to_json() << "\n";
  return kExitSuccess;
}

struct DepthArgs {
  std::string sigma;
  std::string input;
  int cap = 1000;
};

int run_depth(const DepthArgs& args) {
  const SockPattern sigma = parse_pattern(args.sigma);
  const SockSequence input = parse_sequence(args.input);
  const auto depth = sort_depth(sigma, input, args.cap);
  if (depth) {
    std::cout << *depth << "\n";
  } else {
    std::cout << "NOT-SORTED\n";
  }
  return kExitSuccess;
}

struct CountArgs {
  int max_len = 0;
  int k = 1;
  bool refined = false;
  std::string format = "csv";
  int threads = 0;
};

int run_count(const CountArgs& args) {
  Timer timer;
  const CountTable table = build_count_table(args.max_len, args.k, args.refined,
                                             args.threads);
  if (args.format == "json") {
    auto params = nlohmann::ordered_json{{"max_len", args.max_len},
                                         {"k", args.k},
                                         {"refined", args.refined},
                                         {"threads", args.threads}};
    std::cout << run_report("count", params,
                            nlohmann::ordered_json::parse(table.to_json()), timer)
                     .dump()
              << "\n";
  } else {
    std::cout << table.to_csv();
  }
  return kExitSuccess;
}

struct GfArgs {
  int terms = 0;
  bool bivariate = false;
  std::string method = "closed";
  std::string format = "csv";
};

int run_gf(const GfArgs& args) {
  Timer timer;
  nlohmann::ordered_json rows = nlohmann::json::array();
  std::string csv;
  if (args.bivariate) {
    const BiSeries p = args.method == "functional" ? pq_functional_eq(args.terms)
                                                   : pq_closed_form(args.terms);
    for (int n = 1; n <= args.terms; ++n) {
      const std::string poly = p.coeff(n).as_polynomial().to_string();
      csv += std::to_string(n) + ",\"" + poly + "\"\n";
      rows.push_back({{"n", n}, {"poly", poly}});
    }
  } else {
    const UniSeries p = args.method == "functional" ? p_functional_eq(args.terms)
                                                    : p_closed_form(args.terms);
    for (int n = 1; n <= args.terms; ++n) {
      const std::string value = to_string(p.coeff(n));
      csv += std::to_string(n) + "," + value + "\n";
      rows.push_back({{"n", n}, {"s", value}});
    }
  }
  if (args.format == "json") {
    auto params = nlohmann::ordered_json{{"terms", args.terms},
                                         {"bivariate", args.bivariate},
                                         {"method", args.method}};
    std::cout << run_report("gf", params, nlohmann::ordered_json{{"rows", rows}},
                            timer)
                     .dump()
              << "\n";
  } else {
    std::cout << csv;
  }
  return kExitSuccess;
}

struct VerifyArgs {
  int max_len = 0;
  bool refined = false;
  int threads = 0;
};

int run_verify(const VerifyArgs& args) {
  const int N = args.max_len;
  bool all_match = true;
  int bad_n = 0, bad_r = -1;
  if (args.refined) {
    const BiSeries closed = pq_closed_form(N);
    const BiSeries functional = pq_functional_eq(N);
    for (int n = 1; n <= N && all_match; ++n) {
      const auto brute = count_sortable_refined(n, 1, args.threads);
      const QPoly& pc = closed.coeff(n).as_polynomial();
      const QPoly& pf = functional.coeff(n).as_polynomial();
      const int max_r = std::max({pc.degree(), pf.degree(),
                                  brute.empty() ? 0 : brute.rbegin()->first});
      for (int r = 1; r <= max_r; ++r) {
        const auto it = brute.find(r);
        const BigRational b = it == brute.end() ? BigRational(0)
                                                : BigRational(static_cast<long>(it->second));
        const BigRational c = pc.coeff(r);
        const BigRational f = pf.coeff(r);
        const bool match = b == c && c == f;
        std::cout << "n=" << n << " r=" << r << " brute=" << to_string(b)
                  << " closed=" << to_string(c) << " functional=" << to_string(f)
                  << (match ? " MATCH" : " MISMATCH") << "\n";
        if (!match && all_match) {
          all_match = false;
          bad_n = n;
          bad_r = r;
        }
      }
    }
  } else {
    const UniSeries closed = p_closed_form(N);
    const UniSeries functional = p_functional_eq(N);
    for (int n = 1; n <= N && all_match; ++n) {
      const std::uint64_t brute = count_sortable(n, 1, args.threads);
      const BigRational b(static_cast<long>(brute));
      const BigRational& c = closed.coeff(n);
      const BigRational& f = functional.coeff(n);
      const bool match = b == c && c == f;
      std::cout << "n=" << n << " brute=" << brute << " closed=" << to_string(c)
                << " functional=" << to_string(f)
                << (match ? " MATCH" : " MISMATCH") << "\n";
      if (!match) {
        all_match = false;
        bad_n = n;
      }
    }
  }
  if (all_match) {
    std::cout << "RESULT: MATCH\n";
    return kExitSuccess;
  }
  std::cout << "RESULT: MISMATCH at n=" << bad_n;
  if (bad_r >= 0) std::cout << ", r=" << bad_r;
  std::cout << "\n";
  return kExitVerificationFailure;
}

struct AsymptArgs {
  int terms = 1000;
  int precision = 40;
};

int run_asympt(const AsymptArgs& args) {
  const AsymptoticEstimate est = estimate_K(args.terms, args.precision);
  std::cout << est.to_json() << "\n";
  return kExitSuccess;
}

struct PeriodicArgs {
  std::string sigma;
  std::string multiset;
  int max_period = 16;
  int max_transient = 64;
};

int run_periodic(const PeriodicArgs& args) {
  const SockPattern sigma = parse_pattern(args.sigma);
  const SockMultiset m = parse_multiset(args.multiset);
  const CycleReport report = find_periodic(sigma, m, args.max_period,
                                           args.max_transient);
  std::cout << report.to_json() << "\n";
  return kExitSuccess;
}

struct WitnessArgs {
  int tight = 0;
  std::string sigma;
  std::string multiset;
};

int run_witness_tight(int n) {
  const SockSequence witness = tightness_witness(n);
  const auto depth = sort_depth(parse_pattern("aba"), witness, n + 1);
  std::cout << render(witness) << "\n";
  if (!depth) {
    std::cout << "depth: NOT-SORTED within " << n + 1 << " passes\n";
    return kExitVerificationFailure;
  }
  std::cout << "depth: " << *depth << "\n";
  const int expected = n == 1 ? 0 : (n == 2 ? 1 : n);
  return *depth == expected ? kExitSuccess : kExitVerificationFailure;
}

int run_witness_never_sorted(const std::string& sigma_text, const std::string& ms_text) {
  const SockPattern sigma = parse_pattern(sigma_text);
  const SockMultiset m = parse_multiset(ms_text);
  const SockSequence witness = never_sorted_witness(sigma, m);
  std::cout << render(witness) << "\n";

  const SockPattern sigma_rev = standardize(reversed(sigma.sequence()));
  const bool av_sigma = avoids(witness, sigma);
  const bool av_rev = avoids(witness, sigma_rev);
  const bool unsorted = !is_sorted(witness);
  const Trajectory orbit = iterate(sigma, witness, 20);
  const bool two_cycle = orbit.terminator == Terminator::Cycle &&
                         orbit.cycle_start == 0 && orbit.cycle_period <= 2;
  std::cout << "avoids sigma: " << (av_sigma ? "true" : "false") << "\n";
  std::cout << "avoids reverse(sigma): " << (av_rev ? "true" : "false") << "\n";
  std::cout << "sorted: " << (unsorted ? "false" : "true") << "\n";
  if (two_cycle) {
    std::cout << "cycle period: " << orbit.cycle_period << "\n";
  } else {
    std::cout << "cycle period: none within 20 passes\n";
  }
  return av_sigma && av_rev && unsorted && two_cycle ? kExitSuccess
                                                     : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-avoiding stack sorting for sock sequences"};
  app.require_subcommand(1);

  SortArgs sort_args;
  auto* sort_cmd = app.add_subcommand("sort", "Run one stack pass");
  sort_cmd->add_option("--sigma", sort_args.sigma, "Stack-avoided pattern")->required();
  sort_cmd->add_option("--input", sort_args.input, "Input sequence")->required();
  sort_cmd->add_flag("--consecutive", sort_args.consecutive,
                     "Only consecutive factors of the stack reading count");
  sort_cmd->add_flag("--trace", sort_args.trace, "Also print the push/pop log as JSON");

  DepthArgs depth_args;
  auto* depth_cmd = app.add_subcommand("depth", "Passes needed to sort");
  depth_cmd->add_option("--sigma", depth_args.sigma, "Stack-avoided pattern")->required();
  depth_cmd->add_option("--input", depth_args.input, "Input sequence")->required();
  depth_cmd->add_option("--cap", depth_args.cap, "Give up after this many passes")
      ->check(CLI::Range(0, 1 << 20));

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Count sortable patterns by length");
  count_cmd->add_option("--max-len", count_args.max_len, "Largest pattern length")
      ->required()
      ->check(CLI::Range(1, 14));
  count_cmd->add_option("--k", count_args.k, "Pass budget (default 1)")
      ->check(CLI::Range(0, 64));
  count_cmd->add_flag("--refined", count_args.refined, "Break down by distinct socks");
  count_cmd->add_option("--format", count_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  count_cmd->add_option("--threads", count_args.threads, "Worker threads (0 = auto)")
      ->check(CLI::Range(0, 256));

  GfArgs gf_args;
  auto* gf_cmd = app.add_subcommand("gf", "Expand the counting series");
  gf_cmd->add_option("--terms", gf_args.terms, "Number of terms")
      ->required()
      ->check(CLI::Range(1, 5000));
  gf_cmd->add_flag("--bivariate", gf_args.bivariate, "Refine by distinct socks (q)");
  gf_cmd->add_option("--method", gf_args.method, "closed or functional")
      ->check(CLI::IsMember({"closed", "functional"}));
  gf_cmd->add_option("--format", gf_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "Brute force against both series expansions");
  verify_cmd->add_option("--max-len", verify_args.max_len, "Largest length checked")
      ->required()
      ->check(CLI::Range(1, 14));
  verify_cmd->add_flag("--refined", verify_args.refined, "Also compare per distinct-sock count");
  verify_cmd->add_option("--threads", verify_args.threads, "Worker threads (0 = auto)")
      ->check(CLI::Range(0, 256));

  AsymptArgs asympt_args;
  auto* asympt_cmd = app.add_subcommand("asympt", "Estimate the growth constant K");
  asympt_cmd->add_option("--terms", asympt_args.terms, "Series terms to use")
      ->check(CLI::Range(100, 5000));
  asympt_cmd->add_option("--precision", asympt_args.precision, "Decimal digits")
      ->check(CLI::Range(10, 1000));

  PeriodicArgs periodic_args;
  auto* periodic_cmd =
      app.add_subcommand("periodic", "All cycles of the pass on S(M)");
  periodic_cmd->add_option("--sigma", periodic_args.sigma, "Stack-avoided pattern")
      ->required();
  periodic_cmd->add_option("--multiset", periodic_args.multiset, "e.g. a:2,b:2")
      ->required();
  periodic_cmd->add_option("--max-period", periodic_args.max_period,
                           "Flag cycles longer than this")
      ->check(CLI::Range(1, 1 << 20));
  periodic_cmd->add_option("--max-transient", periodic_args.max_transient,
                           "Flag approaches longer than this")
      ->check(CLI::Range(0, 1 << 20));

  WitnessArgs witness_args;
  auto* witness_cmd = app.add_subcommand("witness", "Construct and certify a witness");
  auto* tight_opt = witness_cmd->add_option(
      "--tight", witness_args.tight, "Sequence on n socks needing n passes");
  auto* wsigma_opt =
      witness_cmd->add_option("--sigma", witness_args.sigma, "Pattern for the never-sorted witness");
  auto* wms_opt =
      witness_cmd->add_option("--multiset", witness_args.multiset, "Multiset for the witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (sort_cmd->parsed()) return run_sort(sort_args);
    if (depth_cmd->parsed()) return run_depth(depth_args);
    if (count_cmd->parsed()) return run_count(count_args);
    if (gf_cmd->parsed()) return run_gf(gf_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (asympt_cmd->parsed()) return run_asympt(asympt_args);
    if (periodic_cmd->parsed()) return run_periodic(periodic_args);
    if (witness_cmd->parsed()) {
      const bool tight = tight_opt->count() > 0;
      const bool never_sorted = wsigma_opt->count() > 0 || wms_opt->count() > 0;
      if (tight == never_sorted) {
        std::cerr << "witness needs either --tight N or --sigma/--multiset\n";
        return kExitUsage;
      }
      if (tight) {
        if (witness_args.tight < 1) {
          std::cerr << "--tight needs n >= 1\n";
          return kExitUsage;
        }
        return run_witness_tight(witness_args.tight);
      }
      if (wsigma_opt->count() == 0 || wms_opt->count() == 0) {
        std::cerr << "witness needs both --sigma and --multiset\n";
        return kExitUsage;
      }
      return run_witness_never_sorted(witness_args.sigma, witness_args.multiset);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedPattern& e) {
    std::cerr << "unsupported pattern: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
