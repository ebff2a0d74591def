// Golden tests for the command-line surface: byte-exact stdout and exact exit
// codes, run against the built binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef SOCKSORT_CLI_PATH
#error "SOCKSORT_CLI_PATH must point at the socksort binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SOCKSORT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("sort golden runs") {
  CHECK(run("sort --sigma aba --input abcab").out == "cbbaa\n");
  CHECK(run("sort --sigma aba --input abcab").exit_code == 0);
  CHECK(run("sort --sigma aba --input abcabc").out == "cbcbaa\n");
  CHECK(run("sort --sigma aba --input babcabc").out == "aaccbbb\n");
  CHECK(run("sort --sigma aba --input abcabc --consecutive").out == "cbacba\n");
  CHECK(run("sort --sigma aba --input cbacba --consecutive").out == "abcabc\n");
  CHECK(run("sort --sigma ab --input abcabc").out == "abcabc\n");
  CHECK(run("sort --sigma aa --input abcabc").out == "cbacba\n");

  SUBCASE("unsupported pattern exits 2") {
    const RunResult r = run("sort --sigma a --input ab");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
  }

  SUBCASE("bad input text exits 2") {
    CHECK(run("sort --sigma aba --input 'aB!'").exit_code == 2);
  }

  SUBCASE("trace emits the event log") {
    const RunResult r = run("sort --sigma aba --input abcab --trace");
    CHECK(r.exit_code == 0);
    const auto newline = r.out.find('\n');
    CHECK(r.out.substr(0, newline) == "cbbaa");
    const auto j = nlohmann::json::parse(r.out.substr(newline + 1));
    CHECK(j["input"] == "abcab");
    CHECK(j["output"] == "cbbaa");
    CHECK(j["events"].size() == 10);
    CHECK(j["events"][0] == nlohmann::json({{"op", "push"}, {"sock", "a"}}));
  }
}

TEST_CASE("depth") {
  CHECK(run("depth --sigma aba --input abcabc").out == "3\n");
  CHECK(run("depth --sigma aba --input a").out == "0\n");
  CHECK(run("depth --sigma abab --input abba").out == "NOT-SORTED\n");
  CHECK(run("depth --sigma aba --input abcabc --cap 2").out == "NOT-SORTED\n");
  CHECK(run("depth --sigma aba").exit_code == 2);
}

TEST_CASE("count") {
  CHECK(run("count --max-len 4").out == "1,1\n2,2\n3,5\n4,15\n");
  CHECK(run("count --max-len 2 --refined").out == "1,1,1\n2,1,1\n2,2,1\n");
  CHECK(run("count --max-len 5 --k 2").exit_code == 0);
  CHECK(run("count --max-len 0").exit_code == 2);

  SUBCASE("json run report round-trips") {
    const RunResult r = run("count --max-len 3 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "count");
    CHECK(j["parameters"]["max_len"] == 3);
    CHECK(j["results"]["rows"].size() == 3);
    CHECK(j["wall_time_ms"].is_number());
    CHECK(nlohmann::json::parse(j.dump()) == j);
  }

  SUBCASE("threads do not change the answer") {
    CHECK(run("count --max-len 6 --threads 1").out ==
          run("count --max-len 6 --threads 3").out);
  }
}

TEST_CASE("gf") {
  CHECK(run("gf --terms 5").out == "1,1\n2,2\n3,5\n4,15\n5,50\n");
  CHECK(run("gf --terms 5 --method functional").out == run("gf --terms 5").out);
  CHECK(run("gf --terms 3 --bivariate").out ==
        "1,\"q\"\n2,\"q + q^2\"\n3,\"q + 3 q^2 + q^3\"\n");
  CHECK(run("gf --terms 3 --bivariate --method functional").out ==
        run("gf --terms 3 --bivariate").out);
  CHECK(run("gf --terms 0").exit_code == 2);

  SUBCASE("json rows carry exact decimal strings") {
    const auto j = nlohmann::json::parse(run("gf --terms 12 --format json").out);
    CHECK(j["results"]["rows"][11] == nlohmann::json({{"n", 12}, {"s", "594009"}}));
  }
}

TEST_CASE("verify") {
  const RunResult ok = run("verify --max-len 8");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out ==
        "n=1 brute=1 closed=1 functional=1 MATCH\n"
        "n=2 brute=2 closed=2 functional=2 MATCH\n"
        "n=3 brute=5 closed=5 functional=5 MATCH\n"
        "n=4 brute=15 closed=15 functional=15 MATCH\n"
        "n=5 brute=50 closed=50 functional=50 MATCH\n"
        "n=6 brute=177 closed=177 functional=177 MATCH\n"
        "n=7 brute=651 closed=651 functional=651 MATCH\n"
        "n=8 brute=2460 closed=2460 functional=2460 MATCH\n"
        "RESULT: MATCH\n");

  const RunResult refined = run("verify --max-len 4 --refined");
  CHECK(refined.exit_code == 0);
  CHECK(refined.out ==
        "n=1 r=1 brute=1 closed=1 functional=1 MATCH\n"
        "n=2 r=1 brute=1 closed=1 functional=1 MATCH\n"
        "n=2 r=2 brute=1 closed=1 functional=1 MATCH\n"
        "n=3 r=1 brute=1 closed=1 functional=1 MATCH\n"
        "n=3 r=2 brute=3 closed=3 functional=3 MATCH\n"
        "n=3 r=3 brute=1 closed=1 functional=1 MATCH\n"
        "n=4 r=1 brute=1 closed=1 functional=1 MATCH\n"
        "n=4 r=2 brute=7 closed=7 functional=7 MATCH\n"
        "n=4 r=3 brute=6 closed=6 functional=6 MATCH\n"
        "n=4 r=4 brute=1 closed=1 functional=1 MATCH\n"
        "RESULT: MATCH\n");

  CHECK(run("verify --max-len 0").exit_code == 2);
}

TEST_CASE("asympt") {
  const RunResult r = run("asympt --terms 100 --precision 20");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["N"] == 100);
  CHECK(j["K_paper"] == 0.34313);
  CHECK(std::abs(j["x0"].get<double>() - 0.219952) < 1e-5);
  CHECK(std::abs(j["c"].get<double>() - 4.5464) < 5e-4);
  CHECK(std::abs(j["K_estimate"].get<double>() - 0.34313) < 0.01);
  CHECK(run("asympt --terms 10").exit_code == 2);
}

TEST_CASE("periodic") {
  const RunResult r = run("periodic --sigma abba --multiset a:2,b:2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["arrangements"] == 6);
  bool found = false;
  for (const auto& cycle : j["cycles"]) {
    if (cycle["representative"] == "abab") {
      found = true;
      CHECK(cycle["period"] == 2);
      CHECK(cycle["sorted"] == false);
    }
  }
  CHECK(found);
  CHECK(run("periodic --sigma a --multiset a:2").exit_code == 2);
}

TEST_CASE("witness") {
  const RunResult tight = run("witness --tight 3");
  CHECK(tight.exit_code == 0);
  CHECK(tight.out == "abcabc\ndepth: 3\n");

  const RunResult never_sorted = run("witness --sigma abba --multiset a:2,b:2");
  CHECK(never_sorted.exit_code == 0);
  CHECK(never_sorted.out ==
        "abab\n"
        "avoids sigma: true\n"
        "avoids reverse(sigma): true\n"
        "sorted: false\n"
        "cycle period: 2\n");

  CHECK(run("witness --sigma aaba --multiset a:2,b:2").exit_code == 2);
  CHECK(run("witness").exit_code == 2);
  CHECK(run("witness --tight 2 --sigma abba --multiset a:2,b:2").exit_code == 2);
  CHECK(run("witness --sigma abba").exit_code == 2);
}

TEST_CASE("help and usage") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}
