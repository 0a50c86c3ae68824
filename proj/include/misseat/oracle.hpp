#pragma once

#include <vector>

#include "misseat/distribution.hpp"

namespace misseat {

/// Exhaustive enumeration is the ground truth at small n; the bound
/// guards against the factorial branch count.
inline constexpr int kOracleBoundDefault = 9;

/// One reachable final seating with its exact probability.
struct OutcomeAtom {
  std::vector<int> seating;  // passenger -> seat, 0-based
  Rational probability;
};

/// Depth-first traversal of every boarding decision branch with exact
/// branch weights (1/#free at each random choice), aggregated by m.
/// Requires 1 <= k <= n <= bound.
ExactPmf enumerate_process(int n, int k, int bound = kOracleBoundDefault);

/// Every reachable seating with its exact probability, merged by
/// seating and ordered lexicographically. Probabilities sum to 1.
std::vector<OutcomeAtom> enumerate_outcomes(int n, int k,
                                            int bound = kOracleBoundDefault);

/// (n-k)!/n! * prod_j 1/(n - i_j) over the misseated main-cabin
/// passengers i_j (0-based ids, so n - i_j free seats remain when i_j
/// boards). Indices must lie in [k, n).
Rational per_outcome_probability(int n, int k,
                                 const std::vector<int>& misseated_mc);

/// Number of distinct reachable seatings whose misseated sets are
/// exactly the given ones (0-based, sorted).
long count_arrangements(int n, int k, const std::vector<int>& misseated_fc,
                        const std::vector<int>& misseated_mc,
                        int bound = kOracleBoundDefault);

}  // namespace misseat
