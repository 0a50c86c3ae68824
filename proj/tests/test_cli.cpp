#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "misseat/combinatorics.hpp"
#include "misseat/distribution.hpp"

namespace fs = std::filesystem;
using misseat::make_rational;
using misseat::Rational;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("misseat_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(MISSEAT_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

Rational rational_from(const nlohmann::json& entry) {
  return make_rational(misseat::BigInt(entry["num"].get<std::string>()),
                       misseat::BigInt(entry["den"].get<std::string>()));
}

}  // namespace

TEST_CASE("dist csv matches the exact k=1 distribution") {
  const RunResult result = run_cli("dist --n 3 --k 1 --format csv");
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "m,num,den,approx\n"
        "0,1,3,0.3333333333333333\n"
        "1,0,1,0\n"
        "2,1,2,0.5\n"
        "3,1,6,0.16666666666666666\n");
}

TEST_CASE("dist json round-trips the exact fractions") {
  const RunResult result = run_cli("dist --n 7 --k 3 --format json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.out);
  CHECK(j["n"] == 7);
  CHECK(j["k"] == 3);
  CHECK(j["method"] == "theorem1");
  CHECK(j["manifest"]["command"] == "dist");
  CHECK(j["manifest"].contains("timestamp") == false);
  const auto exact = misseat::distribution_full(7, 3);
  Rational total(0);
  REQUIRE(j["pmf"].size() == 8);
  for (const auto& entry : j["pmf"]) {
    const Rational p = rational_from(entry);
    CHECK(p == exact.probs[entry["m"].get<int>()]);
    total += p;
  }
  CHECK(total == 1);
}

TEST_CASE("dist handles the one-seat plane") {
  const RunResult result = run_cli("dist --n 1 --k 1 --format csv");
  CHECK(result.exit_code == 0);
  CHECK(result.out ==
        "m,num,den,approx\n"
        "0,1,1,1\n"
        "1,0,1,0\n");
}

TEST_CASE("dist emits exactly normalized rows at n=100") {
  const RunResult result = run_cli("dist --n 100 --k 3 --format csv");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,num,den,approx");
  Rational total(0);
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const auto third = line.find(',', second + 1);
    total += make_rational(
        misseat::BigInt(line.substr(first + 1, second - first - 1)),
        misseat::BigInt(line.substr(second + 1, third - second - 1)));
    ++rows;
  }
  CHECK(rows == 101);
  CHECK(total == 1);
}

TEST_CASE("dist rejects invalid domains with exit code 2") {
  CHECK(run_cli("dist --n 3 --k 5").exit_code == 2);
  CHECK(run_cli("dist --n 0 --k 0").exit_code == 2);
  CHECK(run_cli("dist --n 2001 --k 1").exit_code == 2);
  CHECK(run_cli("dist --n 3").exit_code == 2);           // missing --k
  CHECK(run_cli("dist --n 3 --k 1 --method bogus").exit_code == 2);
}

TEST_CASE("simulate is byte-identical across reruns") {
  const std::string args = "simulate --n 2 --k 2 --trials 1000 --seed 7";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(!first.out.empty());
  CHECK(first.out == second.out);
}

TEST_CASE("simulate passes the statistical comparison at n=100, k=3") {
  const RunResult result =
      run_cli("simulate --n 100 --k 3 --trials 100000 --seed 1");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.out);
  CHECK(j["comparison"]["pass"] == true);
  CHECK(j["comparison"]["impossible_outcomes"].empty());
  CHECK(j["counts"][1] == 0);
  std::uint64_t total = 0;
  for (const auto& count : j["counts"]) {
    total += count.get<std::uint64_t>();
  }
  CHECK(total == 100000);
}

TEST_CASE("simulate reports thread tallies under both flag spellings") {
  for (const std::string flag : {"--report-threads", "--threads-report"}) {
    const RunResult result =
        run_cli("simulate --n 3 --k 1 --trials 10 --seed 5 " + flag);
    REQUIRE(result.exit_code == 0);
    const auto j = nlohmann::json::parse(result.out);
    REQUIRE(j.contains("thread_tallies"));
    std::uint64_t total = 0;
    for (const auto& row : j["thread_tallies"]) {
      const int s = row["s"].get<int>();
      const int r = row["r"].get<int>();
      const int t = row["t"].get<int>();
      CHECK(t <= r);
      CHECK(r <= s);
      total += row["count"].get<std::uint64_t>();
    }
    CHECK(total == 10);
  }
}

TEST_CASE("simulate rejects zero trials") {
  CHECK(run_cli("simulate --n 3 --k 1 --trials 0 --seed 1").exit_code == 2);
}

TEST_CASE("oracle agrees with both closed forms") {
  const RunResult result = run_cli("oracle --n 6 --k 4");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("agreement: full (7 masses)") != std::string::npos);

  const RunResult tiny = run_cli("oracle --n 1 --k 1");
  CHECK(tiny.exit_code == 0);
  CHECK(tiny.out.find("agreement: full") != std::string::npos);

  const RunResult pair = run_cli("oracle --n 2 --k 2 --format json");
  REQUIRE(pair.exit_code == 0);
  const auto j = nlohmann::json::parse(pair.out);
  CHECK(j["agreement"] == true);
  CHECK(rational_from(j["oracle"][0]) == make_rational(1, 2));
  CHECK(rational_from(j["oracle"][1]) == 0);
  CHECK(rational_from(j["oracle"][2]) == make_rational(1, 2));
}

TEST_CASE("oracle enforces its bound, overridable with a warning") {
  CHECK(run_cli("oracle --n 20 --k 2").exit_code == 2);
  const RunResult raised = run_cli("oracle --n 10 --k 1 --max-n 10");
  CHECK(raised.exit_code == 0);
  CHECK(raised.err.find("warning") != std::string::npos);
}

TEST_CASE("check runs every suite and rejects degenerate bounds") {
  const RunResult result = run_cli("check --max-n 3");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("all 14 suites passed") != std::string::npos);
  const RunResult again = run_cli("check --max-n 3");
  CHECK(again.out == result.out);  // deterministic report
  CHECK(run_cli("check --max-n 1").exit_code == 2);
}

TEST_CASE("plot dat blocks sum to one and start at the exact base mass") {
  const fs::path out = scratch_dir() / "plot.dat";
  const RunResult result = run_cli("plot --n 20 --k 1,2,3 --format dat --out " +
                                   out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.string() + ".manifest.json"));

  std::ifstream file(out);
  std::string line;
  std::vector<std::vector<double>> blocks;
  std::vector<double> current;
  while (std::getline(file, line)) {
    if (line.empty()) {
      if (!current.empty()) {
        blocks.push_back(current);
        current.clear();
      }
      continue;
    }
    if (line[0] == '#') {
      continue;
    }
    const auto space = line.find(' ');
    current.push_back(std::stod(line.substr(space + 1)));
  }
  if (!current.empty()) {
    blocks.push_back(current);
  }
  REQUIRE(blocks.size() == 3);
  auto& tables = misseat::shared_tables();
  for (int i = 0; i < 3; ++i) {
    REQUIRE(blocks[i].size() == 21);
    double total = 0;
    for (const double height : blocks[i]) {
      total += height;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(blocks[i][1] == 0.0);
    const double base = misseat::to_double(
        make_rational(tables.factorial(20 - (i + 1)), tables.factorial(20)));
    CHECK(blocks[i][0] == base);
  }
}

TEST_CASE("plot svg is emitted and plot rejects bad k lists") {
  const RunResult svg = run_cli("plot --n 12 --k 1,2 --format svg");
  CHECK(svg.exit_code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
  CHECK(svg.out.find("</svg>") != std::string::npos);
  CHECK(svg.out.find("n=12, k=1") != std::string::npos);
  CHECK(svg.out.find("n=12, k=2") != std::string::npos);

  CHECK(run_cli("plot --n 5 --k 0,2").exit_code == 2);
  CHECK(run_cli("plot --n 5 --k 1,6").exit_code == 2);
}

TEST_CASE("unwritable output paths exit with code 5") {
  CHECK(run_cli("dist --n 3 --k 1 --out /nonexistent-dir/x.json").exit_code ==
        5);
}

TEST_CASE("moments reports the exact mean and variance") {
  const RunResult result = run_cli("moments --n 3 --k 1");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.out);
  CHECK(j["mean"]["num"] == "3");
  CHECK(j["mean"]["den"] == "2");
  CHECK(j["variance"]["num"] == "5");
  CHECK(j["variance"]["den"] == "4");
}

TEST_CASE("version flag") {
  CHECK(run_cli("--version").exit_code == 0);
}
