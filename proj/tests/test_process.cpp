#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "misseat/oracle.hpp"
#include "misseat/process.hpp"
#include "misseat/rng.hpp"

using misseat::board;
using misseat::BoardingConfig;
using misseat::BoardingOutcome;
using misseat::BoardingTrace;
using misseat::compare_empirical;
using misseat::decompose_threads;
using misseat::distribution_full;
using misseat::EmpiricalPmf;
using misseat::Execution;
using misseat::make_outcome;
using misseat::monte_carlo;
using misseat::ThreadStats;

namespace {

bool is_bijection(const std::vector<int>& seating, int n) {
  std::vector<bool> seen(n, false);
  for (const int seat : seating) {
    if (seat < 0 || seat >= n || seen[seat]) {
      return false;
    }
    seen[seat] = true;
  }
  return true;
}

void check_thread_shapes(const ThreadStats& stats, int k) {
  for (const auto& thread : stats.threads) {
    REQUIRE(!thread.empty());
    std::size_t i = 0;
    while (i < thread.size() && thread[i] < k) {
      ++i;
    }
    CHECK(i >= 1);             // non-empty absent-minded prefix
    CHECK(i < thread.size());  // non-empty main-cabin suffix
    for (; i < thread.size(); ++i) {
      CHECK(thread[i] >= k);
    }
  }
  for (const auto& cycle : stats.derangement_cycles) {
    CHECK(cycle.size() >= 2);
    for (const int p : cycle) {
      CHECK(p < k);
    }
  }
}

}  // namespace

TEST_CASE("single seat boards trivially") {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const BoardingOutcome outcome = board({1, 1}, seed, 0);
    CHECK(outcome.seating == std::vector<int>{0});
    CHECK(outcome.m() == 0);
  }
}

TEST_CASE("two seats, one absent-minded: both outcomes occur, never m=1") {
  bool saw_identity = false;
  bool saw_swap = false;
  for (std::uint64_t i = 0; i < 64; ++i) {
    const BoardingOutcome outcome = board({2, 1}, 7, i);
    CHECK(outcome.m() != 1);
    saw_identity |= outcome.m() == 0;
    saw_swap |= outcome.m() == 2;
  }
  CHECK(saw_identity);
  CHECK(saw_swap);
}

TEST_CASE("board is deterministic in (seed, trial_index)") {
  const BoardingConfig config{23, 6};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BoardingOutcome a = board(config, 123, i);
    const BoardingOutcome b = board(config, 123, i);
    CHECK(a.seating == b.seating);
  }
  // distinct trials are not all equal
  bool any_difference = false;
  const BoardingOutcome first = board(config, 123, 0);
  for (std::uint64_t i = 1; i < 16; ++i) {
    any_difference |= board(config, 123, i).seating != first.seating;
  }
  CHECK(any_difference);
}

TEST_CASE("outcomes are bijections with consistent misseated sets") {
  const BoardingConfig configs[] = {{12, 3}, {8, 8}, {30, 5}, {9, 0}};
  for (const auto& config : configs) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const BoardingOutcome outcome = board(config, 42, i);
      REQUIRE(is_bijection(outcome.seating, config.n));
      CHECK(outcome.m() != 1);
      std::vector<int> fc, mc;
      for (int p = 0; p < config.n; ++p) {
        if (outcome.seating[p] != p) {
          (p < config.k ? fc : mc).push_back(p);
        }
      }
      CHECK(outcome.misseated_fc == fc);
      CHECK(outcome.misseated_mc == mc);
      // Seats of misseated passengers are occupied by misseated passengers.
      std::set<int> misseated(fc.begin(), fc.end());
      misseated.insert(mc.begin(), mc.end());
      for (const int p : misseated) {
        CHECK(misseated.count(outcome.seating[p]) == 1);
      }
    }
  }
}

TEST_CASE("trace replay: misseated main-cabin seats were taken") {
  const BoardingConfig config{14, 4};
  for (std::uint64_t i = 0; i < 100; ++i) {
    BoardingTrace trace;
    const BoardingOutcome outcome = board(config, 9, i, &trace);
    REQUIRE(trace.size() == static_cast<std::size_t>(config.n));
    std::vector<bool> occupied(config.n, false);
    for (const auto& step : trace) {
      const bool seat_free =
          std::binary_search(step.free_seats.begin(), step.free_seats.end(),
                             step.seat);
      CHECK(seat_free);
      CHECK(!occupied[step.seat]);
      if (step.forced) {
        CHECK(step.seat == step.passenger);
      }
      if (step.passenger >= config.k &&
          outcome.seating[step.passenger] != step.passenger) {
        // own seat must already be occupied at boarding time
        CHECK(occupied[step.passenger]);
        CHECK(!step.forced);
      }
      occupied[step.seat] = true;
    }
  }
}

TEST_CASE("decompose_threads on an identity outcome") {
  const BoardingOutcome outcome = make_outcome({5, 2}, {0, 1, 2, 3, 4});
  const ThreadStats stats = decompose_threads(outcome);
  CHECK(stats.s == 0);
  CHECK(stats.r == 0);
  CHECK(stats.t == 0);
  CHECK(stats.threads.empty());
  CHECK(stats.derangement_cycles.empty());
}

TEST_CASE("decompose_threads on the two-passenger swap") {
  const BoardingOutcome outcome = make_outcome({2, 2}, {1, 0});
  const ThreadStats stats = decompose_threads(outcome);
  CHECK(stats.s == 2);
  CHECK(stats.r == 0);
  CHECK(stats.t == 0);
  REQUIRE(stats.derangement_cycles.size() == 1);
  CHECK(stats.derangement_cycles[0] == std::vector<int>{0, 1});
}

TEST_CASE("decompose_threads on a 30-passenger scenario") {
  // n=30, k=5: passengers 1 and 2 head one thread each, passengers 3
  // and 4 swap seats, passenger 5 sits correctly; 13 misseated total.
  const int n = 30;
  std::vector<int> seating(n);
  for (int p = 0; p < n; ++p) {
    seating[p] = p;
  }
  // thread A (0-based): 0 -> 5 -> 11 -> 14 -> 16 -> 18 -> seat 0
  seating[0] = 5;
  seating[5] = 11;
  seating[11] = 14;
  seating[14] = 16;
  seating[16] = 18;
  seating[18] = 0;
  // thread B: 1 -> 6 -> 8 -> 22 -> 29 -> seat 1
  seating[1] = 6;
  seating[6] = 8;
  seating[8] = 22;
  seating[22] = 29;
  seating[29] = 1;
  // derangement cycle among absent-minded passengers 2 and 3
  seating[2] = 3;
  seating[3] = 2;

  const BoardingOutcome outcome = make_outcome({n, 5}, seating);
  CHECK(outcome.m() == 13);
  CHECK(outcome.s() == 4);
  const ThreadStats stats = decompose_threads(outcome);
  CHECK(stats.s == 4);
  CHECK(stats.r == 2);
  CHECK(stats.t == 2);
  check_thread_shapes(stats, 5);
  REQUIRE(stats.threads.size() == 2);
  CHECK(stats.threads[0] == std::vector<int>{0, 5, 11, 14, 16, 18});
  CHECK(stats.threads[1] == std::vector<int>{1, 6, 8, 22, 29});
  REQUIRE(stats.derangement_cycles.size() == 1);
  CHECK(stats.derangement_cycles[0] == std::vector<int>{2, 3});
}

TEST_CASE("decomposition reconstructs m and s on sampled outcomes") {
  const BoardingConfig configs[] = {{10, 4}, {7, 7}, {20, 3}};
  for (const auto& config : configs) {
    for (std::uint64_t i = 0; i < 300; ++i) {
      const BoardingOutcome outcome = board(config, 1234, i);
      const ThreadStats stats = decompose_threads(outcome);
      CHECK(0 <= stats.t);
      CHECK(stats.t <= stats.r);
      CHECK(stats.r <= stats.s);
      CHECK(stats.s <= std::min(config.k, outcome.m()));
      long thread_members = 0;
      long mc_members = 0;
      long cycle_members = 0;
      for (const auto& thread : stats.threads) {
        thread_members += static_cast<long>(thread.size());
        mc_members += std::count_if(thread.begin(), thread.end(),
                                    [&](int p) { return p >= config.k; });
      }
      for (const auto& cycle : stats.derangement_cycles) {
        cycle_members += static_cast<long>(cycle.size());
      }
      CHECK(thread_members + cycle_members == outcome.m());
      CHECK(stats.r + cycle_members == outcome.s());
      CHECK(mc_members == outcome.m() - outcome.s());
      check_thread_shapes(stats, config.k);
    }
  }
}

TEST_CASE("malformed seatings are rejected") {
  CHECK_THROWS_AS(make_outcome({3, 1}, {0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_outcome({3, 1}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_outcome({3, 1}, {0, 1, 3}), std::invalid_argument);
  BoardingOutcome corrupt = make_outcome({3, 1}, {0, 1, 2});
  corrupt.seating[2] = 1;
  CHECK_THROWS_AS(decompose_threads(corrupt), std::invalid_argument);
  // A seating whose displacement cycle is entirely in the main cabin is
  // a valid bijection but unreachable by the process.
  const BoardingOutcome unreachable = make_outcome({6, 2}, {0, 1, 2, 3, 5, 4});
  CHECK_THROWS_AS(decompose_threads(unreachable), std::invalid_argument);
}

TEST_CASE("monte_carlo basics and determinism") {
  const EmpiricalPmf trivial = monte_carlo({1, 1}, 100, 5);
  CHECK(trivial.counts[0] == 100);

  const EmpiricalPmf a = monte_carlo({6, 2}, 5000, 11, Execution::serial);
  const EmpiricalPmf b = monte_carlo({6, 2}, 5000, 11, Execution::parallel);
  CHECK(a.counts == b.counts);

  const EmpiricalPmf c = monte_carlo({6, 2}, 5000, 11, Execution::parallel);
  CHECK(b.counts == c.counts);

  std::uint64_t total = 0;
  for (const auto count : a.counts) {
    total += count;
  }
  CHECK(total == 5000);
  CHECK(a.counts[1] == 0);

  CHECK_THROWS_AS(monte_carlo({3, 1}, 0, 1), std::invalid_argument);
}

TEST_CASE("thread tallies agree between serial and parallel") {
  misseat::ThreadTally serial_tally, parallel_tally;
  monte_carlo({8, 3}, 2000, 77, Execution::serial, &serial_tally);
  monte_carlo({8, 3}, 2000, 77, Execution::parallel, &parallel_tally);
  CHECK(serial_tally == parallel_tally);
  std::uint64_t total = 0;
  for (const auto& [key, count] : serial_tally) {
    CHECK(key[2] <= key[1]);  // t <= r
    CHECK(key[1] <= key[0]);  // r <= s
    total += count;
  }
  CHECK(total == 2000);
}

TEST_CASE("empirical frequencies track the exact pmf") {
  const EmpiricalPmf empirical = monte_carlo({3, 1}, 100000, 2024);
  const auto report = compare_empirical(empirical, distribution_full(3, 1));
  CHECK(report.pass);
  CHECK(report.impossible.empty());
  CHECK(empirical.counts[1] == 0);
}

TEST_CASE("million-trial swap frequency lands within four sigma") {
  const std::uint64_t trials = 1000000;
  const EmpiricalPmf empirical = monte_carlo({2, 2}, trials, 8);
  const double freq =
      static_cast<double>(empirical.counts[0]) / static_cast<double>(trials);
  const double sigma = std::sqrt(0.25 / static_cast<double>(trials));
  CHECK(std::abs(freq - 0.5) <= 4.0 * sigma);
  CHECK(empirical.counts[1] == 0);
  CHECK(empirical.counts[0] + empirical.counts[2] == trials);
}

TEST_CASE("compare_empirical flags impossible outcomes and mismatches") {
  const auto exact = distribution_full(2, 2);  // {1/2, 0, 1/2}
  EmpiricalPmf perfect;
  perfect.config = {2, 2};
  perfect.trials = 1000;
  perfect.seed = 0;
  perfect.counts = {500, 0, 500};
  const auto report = compare_empirical(perfect, exact);
  CHECK(report.pass);
  CHECK(report.max_abs_z == 0.0);

  EmpiricalPmf broken = perfect;
  broken.counts = {499, 1, 500};
  const auto flagged = compare_empirical(broken, exact);
  CHECK(!flagged.pass);
  REQUIRE(flagged.impossible.size() == 1);
  CHECK(flagged.impossible[0] == 1);

  EmpiricalPmf mismatched = perfect;
  mismatched.config = {3, 2};
  mismatched.counts = {500, 0, 400, 100};
  CHECK_THROWS_AS(compare_empirical(mismatched, exact),
                  std::invalid_argument);
}

TEST_CASE("sampled outcomes cover exactly the reachable seatings") {
  // Every simulated seating must be reachable per the exhaustive
  // enumeration, and with this many trials every atom of the n=4, k=2
  // process (minimum probability 1/24) appears.
  const auto atoms = misseat::enumerate_outcomes(4, 2);
  std::set<std::vector<int>> reachable;
  for (const auto& atom : atoms) {
    reachable.insert(atom.seating);
  }
  std::set<std::vector<int>> sampled;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    sampled.insert(board({4, 2}, 31, i).seating);
  }
  CHECK(sampled == reachable);
}

TEST_CASE("generator and simulation golden values pin the stream spec") {
  misseat::SplitMix64 a(1, 0);
  CHECK(a.next() == 17556220582676183746ULL);
  CHECK(a.next() == 13484190536438646357ULL);
  misseat::SplitMix64 b(2024, 77);
  CHECK(b.next() == 2843076080691364071ULL);

  const EmpiricalPmf emp = monte_carlo({5, 2}, 1000, 42, Execution::serial);
  CHECK(emp.counts ==
        std::vector<std::uint64_t>{47, 0, 231, 276, 327, 119});
}

TEST_CASE("generator streams are decorrelated and bounded draws exact") {
  misseat::SplitMix64 rng(1, 0);
  CHECK(rng.next_below(1) == 0);
  // Streams from the same seed differ
  misseat::SplitMix64 s0(9, 0), s1(9, 1);
  bool differs = false;
  for (int i = 0; i < 4; ++i) {
    differs |= s0.next() != s1.next();
  }
  CHECK(differs);
  // Bounded draws stay in range and hit every residue
  misseat::SplitMix64 r(3, 5);
  std::vector<int> histogram(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto draw = r.next_below(7);
    REQUIRE(draw < 7);
    ++histogram[static_cast<int>(draw)];
  }
  for (const int bucket : histogram) {
    CHECK(bucket > 0);
  }
}
