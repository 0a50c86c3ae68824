#include "misseat/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "misseat/rng.hpp"

namespace misseat {
namespace {

void require_config(const BoardingConfig& config) {
  if (config.n < 1 || config.k < 0 || config.k > config.n) {
    throw std::invalid_argument("requires n >= 1 and 0 <= k <= n");
  }
}

void fill_misseated(BoardingOutcome& outcome) {
  outcome.misseated_fc.clear();
  outcome.misseated_mc.clear();
  for (int p = 0; p < outcome.config.n; ++p) {
    if (outcome.seating[p] != p) {
      (p < outcome.config.k ? outcome.misseated_fc : outcome.misseated_mc)
          .push_back(p);
    }
  }
}

}  // namespace

BoardingOutcome board(const BoardingConfig& config, std::uint64_t seed,
                      std::uint64_t trial_index, BoardingTrace* trace) {
  require_config(config);
  const int n = config.n;
  const int k = config.k;
  SplitMix64 rng(seed, trial_index);

  std::vector<int> free_seats(n);
  for (int i = 0; i < n; ++i) {
    free_seats[i] = i;
  }

  BoardingOutcome outcome;
  outcome.config = config;
  outcome.seating.resize(n);
  for (int p = 0; p < n; ++p) {
    bool forced = false;
    int seat = -1;
    if (p >= k) {
      const auto it =
          std::lower_bound(free_seats.begin(), free_seats.end(), p);
      if (it != free_seats.end() && *it == p) {
        seat = p;
        forced = true;
        if (trace) {
          trace->push_back({p, free_seats, seat, true});
        }
        free_seats.erase(it);
      }
    }
    if (!forced) {
      const auto idx = static_cast<std::size_t>(
          rng.next_below(static_cast<std::uint64_t>(free_seats.size())));
      seat = free_seats[idx];
      if (trace) {
        trace->push_back({p, free_seats, seat, false});
      }
      free_seats.erase(free_seats.begin() + idx);
    }
    outcome.seating[p] = seat;
  }
  fill_misseated(outcome);
  return outcome;
}

BoardingOutcome make_outcome(const BoardingConfig& config,
                             std::vector<int> seating) {
  require_config(config);
  if (seating.size() != static_cast<std::size_t>(config.n)) {
    throw std::invalid_argument("seating size does not match n");
  }
  std::vector<bool> seen(config.n, false);
  for (const int seat : seating) {
    if (seat < 0 || seat >= config.n || seen[seat]) {
      throw std::invalid_argument("seating is not a bijection on 0..n-1");
    }
    seen[seat] = true;
  }
  BoardingOutcome outcome;
  outcome.config = config;
  outcome.seating = std::move(seating);
  fill_misseated(outcome);
  return outcome;
}

ThreadStats decompose_threads(const BoardingOutcome& outcome) {
  const int n = outcome.config.n;
  const int k = outcome.config.k;
  if (outcome.seating.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("outcome seating size does not match n");
  }
  {
    std::vector<bool> seen(n, false);
    for (const int seat : outcome.seating) {
      if (seat < 0 || seat >= n || seen[seat]) {
        throw std::invalid_argument("outcome seating is not a bijection");
      }
      seen[seat] = true;
    }
  }

  ThreadStats stats;
  for (int p = 0; p < k; ++p) {
    stats.s += outcome.seating[p] != p;
  }

  // Displacement permutation: p occupies seat seating[p], whose owner
  // is passenger seating[p]. Restricted to misseated passengers this
  // is a fixed-point-free permutation, and every cycle of it contains
  // at least one absent-minded passenger.
  std::vector<bool> visited(n, false);
  std::vector<std::vector<int>> mixed_cycles;
  for (int p = 0; p < n; ++p) {
    if (visited[p] || outcome.seating[p] == p) {
      continue;
    }
    std::vector<int> cycle;
    int q = p;
    do {
      visited[q] = true;
      cycle.push_back(q);
      q = outcome.seating[q];
    } while (q != p);

    const bool all_fc =
        std::all_of(cycle.begin(), cycle.end(), [k](int v) { return v < k; });
    if (all_fc) {
      stats.derangement_cycles.push_back(std::move(cycle));
    } else {
      mixed_cycles.push_back(std::move(cycle));
    }
  }

  for (const auto& cycle : mixed_cycles) {
    const int len = static_cast<int>(cycle.size());
    for (const int p : cycle) {
      if (p < k) {
        ++stats.r;
      }
    }
    // Cut after every maximal main-cabin run: a new thread starts at
    // each absent-minded passenger whose predecessor in the cycle is a
    // main-cabin passenger.
    int start = -1;
    for (int i = 0; i < len; ++i) {
      if (cycle[i] < k && cycle[(i + len - 1) % len] >= k) {
        start = i;
        break;
      }
    }
    if (start < 0) {
      // A displacement cycle with no absent-minded member cannot arise
      // from the boarding process.
      throw std::invalid_argument(
          "outcome has an all-main-cabin displacement cycle");
    }
    std::vector<int> current;
    for (int off = 0; off < len; ++off) {
      const int p = cycle[(start + off) % len];
      if (p < k && !current.empty() && current.back() >= k) {
        stats.threads.push_back(std::move(current));
        current.clear();
      }
      current.push_back(p);
    }
    stats.threads.push_back(std::move(current));
  }

  std::sort(stats.threads.begin(), stats.threads.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  stats.t = static_cast<int>(stats.threads.size());
  return stats;
}

EmpiricalPmf monte_carlo(const BoardingConfig& config, std::uint64_t trials,
                         std::uint64_t seed, Execution exec,
                         ThreadTally* tally) {
  require_config(config);
  if (trials < 1) {
    throw std::invalid_argument("requires trials >= 1");
  }
  EmpiricalPmf result;
  result.config = config;
  result.trials = trials;
  result.seed = seed;
  result.counts.assign(config.n + 1, 0);

  if (exec == Execution::serial) {
    for (std::uint64_t i = 0; i < trials; ++i) {
      const BoardingOutcome outcome = board(config, seed, i);
      ++result.counts[outcome.m()];
      if (tally) {
        const ThreadStats stats = decompose_threads(outcome);
        ++(*tally)[{stats.s, stats.r, stats.t}];
      }
    }
    return result;
  }

#pragma omp parallel
  {
    std::vector<std::uint64_t> local_counts(config.n + 1, 0);
    ThreadTally local_tally;
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(trials); ++i) {
      const BoardingOutcome outcome =
          board(config, seed, static_cast<std::uint64_t>(i));
      ++local_counts[outcome.m()];
      if (tally) {
        const ThreadStats stats = decompose_threads(outcome);
        ++local_tally[{stats.s, stats.r, stats.t}];
      }
    }
#pragma omp critical
    {
      for (std::size_t m = 0; m < local_counts.size(); ++m) {
        result.counts[m] += local_counts[m];
      }
      if (tally) {
        for (const auto& [key, count] : local_tally) {
          (*tally)[key] += count;
        }
      }
    }
  }
  return result;
}

ComparisonReport compare_empirical(const EmpiricalPmf& empirical,
                                   const ExactPmf& exact, double z_threshold) {
  if (empirical.config.n != exact.n || empirical.config.k != exact.k ||
      empirical.counts.size() != exact.probs.size()) {
    throw std::invalid_argument("empirical/exact dimension mismatch");
  }
  ComparisonReport report;
  report.threshold = z_threshold;
  const double trials = static_cast<double>(empirical.trials);
  for (int m = 0; m <= exact.n; ++m) {
    const Rational& p_exact = exact.probs[m];
    const double count = static_cast<double>(empirical.counts[m]);
    if (p_exact == 0) {
      if (empirical.counts[m] > 0) {
        report.impossible.push_back(m);
      }
      continue;
    }
    if (p_exact == 1) {
      if (empirical.counts[m] != empirical.trials) {
        report.impossible.push_back(m);
      }
      continue;
    }
    const double p = to_double(p_exact);
    const double freq = count / trials;
    const double z = (freq - p) * std::sqrt(trials) / std::sqrt(p * (1.0 - p));
    report.entries.push_back({m, p, freq, z});
    report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
  }
  report.pass =
      report.impossible.empty() && report.max_abs_z <= report.threshold;
  return report;
}

}  // namespace misseat
