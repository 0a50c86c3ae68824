#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "misseat/distribution.hpp"
#include "misseat/parallel.hpp"

namespace misseat {

/// Boarding setup: n seats and n passengers, boarding in passenger
/// order; passengers 0..k-1 ignore their assignment and pick a
/// uniformly random free seat.
struct BoardingConfig {
  int n = 1;  // passengers/seats, >= 1
  int k = 0;  // absent-minded prefix, 0 <= k <= n
};

/// One boarding decision, captured only when a trace is requested.
struct TraceStep {
  int passenger = 0;
  std::vector<int> free_seats;  // free before this passenger sat, sorted
  int seat = 0;
  bool forced = false;  // sat at own assignment without drawing
};

using BoardingTrace = std::vector<TraceStep>;

/// One realized seating. Passengers and seats are 0-based; passenger
/// p's assigned seat is p.
struct BoardingOutcome {
  BoardingConfig config;
  std::vector<int> seating;       // passenger -> seat, a bijection
  std::vector<int> misseated_fc;  // sorted, subset of 0..k-1
  std::vector<int> misseated_mc;  // sorted, subset of k..n-1

  int m() const { return static_cast<int>(misseated_fc.size() + misseated_mc.size()); }
  int s() const { return static_cast<int>(misseated_fc.size()); }
};

/// Decomposition of an outcome's misseated passengers into threads
/// (a run of absent-minded passengers followed by a run of main-cabin
/// passengers, both non-empty) and all-absent-minded derangement
/// cycles of length >= 2.
struct ThreadStats {
  int s = 0;  // misseated absent-minded passengers
  int r = 0;  // of those, members of threads
  int t = 0;  // thread count
  std::vector<std::vector<int>> threads;
  std::vector<std::vector<int>> derangement_cycles;
};

/// Monte Carlo tallies of the misseated count.
struct EmpiricalPmf {
  BoardingConfig config;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // indexed by m, size n + 1
};

/// (s, r, t) -> number of trials with that decomposition.
using ThreadTally = std::map<std::array<int, 3>, std::uint64_t>;

/// Runs one boarding. Deterministic function of (config, seed,
/// trial_index). Passing `trace` records every decision.
BoardingOutcome board(const BoardingConfig& config, std::uint64_t seed,
                      std::uint64_t trial_index, BoardingTrace* trace = nullptr);

/// Builds an outcome from an explicit seating; throws
/// std::invalid_argument unless `seating` is a bijection on 0..n-1.
BoardingOutcome make_outcome(const BoardingConfig& config,
                             std::vector<int> seating);

/// Extracts threads and derangement cycles from the displacement
/// permutation p -> seating[p] restricted to misseated passengers.
/// Mixed cycles are cut after every maximal main-cabin run.
ThreadStats decompose_threads(const BoardingOutcome& outcome);

/// Aggregates `board` over trial_index 0..trials-1. Identical counts
/// for serial and parallel execution; `tally` (optional) accumulates
/// the (s, r, t) decomposition of every trial.
EmpiricalPmf monte_carlo(const BoardingConfig& config, std::uint64_t trials,
                         std::uint64_t seed,
                         Execution exec = Execution::parallel,
                         ThreadTally* tally = nullptr);

/// Per-m binomial z-scores of an empirical run against an exact pmf.
struct ComparisonReport {
  struct Entry {
    int m = 0;
    double exact = 0.0;
    double freq = 0.0;
    double z = 0.0;
  };
  std::vector<Entry> entries;   // one per m with exact mass in (0, 1)
  std::vector<int> impossible;  // m with exact mass 0 but counts > 0
  double max_abs_z = 0.0;
  double threshold = 4.0;
  bool pass = false;
};

/// Throws std::invalid_argument when (n, k) or the dimensions differ.
ComparisonReport compare_empirical(const EmpiricalPmf& empirical,
                                   const ExactPmf& exact,
                                   double z_threshold = 4.0);

}  // namespace misseat
