#include "misseat/checks.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "misseat/combinatorics.hpp"
#include "misseat/distribution.hpp"
#include "misseat/oracle.hpp"
#include "misseat/process.hpp"

namespace misseat {
namespace {

std::string q_str(const Rational& q) { return q.get_str(); }

// Brute-force count of partitions of {0..count-1} into `blocks`
// nonempty linearly ordered blocks: generate every set partition, then
// count the linear orders of each block by explicit permutation
// enumeration. Independent of the lah closed form and recurrence.
long lah_by_enumeration(int count, int blocks) {
  if (count == 0 && blocks == 0) {
    return 1;
  }
  if (blocks <= 0 || blocks > count) {
    return 0;
  }
  long total = 0;
  std::vector<std::vector<int>> partition;
  const auto orders = [](const std::vector<int>& block) {
    std::vector<int> perm = block;
    long ways = 0;
    std::sort(perm.begin(), perm.end());
    do {
      ++ways;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ways;
  };
  const auto place = [&](auto&& self, int element) -> void {
    if (element == count) {
      if (static_cast<int>(partition.size()) == blocks) {
        long ways = 1;
        for (const auto& block : partition) {
          ways *= orders(block);
        }
        total += ways;
      }
      return;
    }
    // index loop: recursion may grow `partition` and reallocate
    for (std::size_t b = 0; b < partition.size(); ++b) {
      partition[b].push_back(element);
      self(self, element + 1);
      partition[b].pop_back();
    }
    if (static_cast<int>(partition.size()) < blocks) {
      partition.emplace_back(1, element);
      self(self, element + 1);
      partition.pop_back();
    }
  };
  place(place, 0);
  return total;
}

// Theorem-2 coefficient for fixed misseated sets of sizes s and e=m-s,
// restricted to one (r, t) cell.
BigInt arrangement_cell(int s, int e, int r, int t) {
  auto& tables = shared_tables();
  return tables.binomial(s, r) * tables.lah(r, t) * tables.factorial(t) *
         tables.factorial(t) * tables.stirling2(e, t) *
         tables.derangements(s - r);
}

BigInt arrangement_total(int s, int e) {
  BigInt total(0);
  for (int t = 0; t <= s; ++t) {
    for (int r = t; r <= s; ++r) {
      total += arrangement_cell(s, e, r, t);
    }
  }
  return total;
}

CheckResult check_stirling_row_sums() {
  CheckResult result{"stirling1-row-sums", true, 0, ""};
  auto& tables = shared_tables();
  for (int n = 0; n <= 25; ++n) {
    BigInt sum(0);
    for (int j = 0; j <= n; ++j) {
      sum += tables.stirling1(n, j);
    }
    ++result.cases;
    if (sum != tables.factorial(n)) {
      result.pass = false;
      result.detail = "row " + std::to_string(n) + " sums to " + sum.get_str();
      return result;
    }
  }
  return result;
}

CheckResult check_rising_factorial() {
  CheckResult result{"rising-factorial-coefficients", true, 0, ""};
  auto& tables = shared_tables();
  for (int n = 0; n <= 25; ++n) {
    const auto coeffs = rising_factorial_coefficients(n);
    for (int i = 0; i <= n; ++i) {
      ++result.cases;
      if (coeffs[i] != tables.stirling1(n, i)) {
        result.pass = false;
        result.detail = "coefficient (" + std::to_string(n) + "," +
                        std::to_string(i) + ") = " + coeffs[i].get_str();
        return result;
      }
    }
  }
  return result;
}

CheckResult check_lah() {
  CheckResult result{"lah-numbers", true, 0, ""};
  auto& tables = shared_tables();
  // Independent recurrence route: L(i,j) = L(i-1,j-1) + (i-1+j) L(i-1,j).
  std::vector<std::vector<BigInt>> rec(21);
  rec[0] = {BigInt(1)};
  for (int i = 1; i <= 20; ++i) {
    rec[i].assign(i + 1, BigInt(0));
    for (int j = 1; j <= i; ++j) {
      rec[i][j] = rec[i - 1][j - 1];
      if (j <= i - 1) {
        rec[i][j] += (i - 1 + j) * rec[i - 1][j];
      }
    }
  }
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= i; ++j) {
      ++result.cases;
      if (tables.lah(i, j) != rec[i][j]) {
        result.pass = false;
        result.detail = "L(" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + tables.lah(i, j).get_str() +
                        ", recurrence gives " + rec[i][j].get_str();
        return result;
      }
    }
  }
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= i; ++j) {
      ++result.cases;
      if (tables.lah(i, j) != lah_by_enumeration(i, j)) {
        result.pass = false;
        result.detail = "L(" + std::to_string(i) + "," + std::to_string(j) +
                        ") disagrees with enumeration";
        return result;
      }
    }
  }
  return result;
}

CheckResult check_derangements() {
  CheckResult result{"derangement-closed-form", true, 0, ""};
  auto& tables = shared_tables();
  for (int i = 0; i <= 20; ++i) {
    Rational alternating(0);
    for (int j = 0; j <= i; ++j) {
      const Rational term = make_rational(BigInt(1), tables.factorial(j));
      if (j % 2 == 0) {
        alternating += term;
      } else {
        alternating -= term;
      }
    }
    ++result.cases;
    if (Rational(tables.derangements(i)) !=
        Rational(tables.factorial(i)) * alternating) {
      result.pass = false;
      result.detail = "d_" + std::to_string(i) + " = " +
                      tables.derangements(i).get_str();
      return result;
    }
  }
  return result;
}

CheckResult check_trinomial_revision() {
  CheckResult result{"trinomial-revision", true, 0, ""};
  auto& tables = shared_tables();
  for (long w = 0; w <= 15; ++w) {
    for (long t = 0; t <= w; ++t) {
      for (long l = 0; l <= t; ++l) {
        ++result.cases;
        if (tables.binomial(w, t) * tables.binomial(t, l) !=
            tables.binomial(w, l) * tables.binomial(w - l, t - l)) {
          result.pass = false;
          result.detail = "w=" + std::to_string(w) + " t=" + std::to_string(t) +
                          " l=" + std::to_string(l);
          return result;
        }
      }
    }
  }
  return result;
}

CheckResult check_weight_sum(int max_n) {
  CheckResult result{"weight-sum-identity", true, 0, ""};
  auto& tables = shared_tables();
  const int bound = std::min(max_n, 12);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (long len = 0; len <= n - k; ++len) {
        const Rational lhs = enumerated_weight_sum(n, k, len, 0);
        const Rational rhs = make_rational(tables.stirling1(n - k + 1, len + 1),
                                           tables.factorial(n - k));
        ++result.cases;
        if (lhs != rhs) {
          result.pass = false;
          result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " len=" + std::to_string(len) + ": " + q_str(lhs) +
                          " != " + q_str(rhs);
          return result;
        }
      }
    }
  }
  return result;
}

CheckResult check_alternating_delta() {
  CheckResult result{"alternating-delta", true, 0, ""};
  for (long lower = 1; lower <= 30; ++lower) {
    for (long upper = lower; upper <= 30; ++upper) {
      const long expected =
          lower == upper ? (lower % 2 == 0 ? 1 : -1) : 0;
      ++result.cases;
      if (alternating_delta(lower, upper) != expected) {
        result.pass = false;
        result.detail =
            "L=" + std::to_string(lower) + " K=" + std::to_string(upper);
        return result;
      }
    }
  }
  return result;
}

CheckResult check_lah_derangement_sum() {
  CheckResult result{"lah-derangement-sum", true, 0, ""};
  auto& tables = shared_tables();
  for (long s = 0; s <= 20; ++s) {
    for (long t = 0; t <= s; ++t) {
      const Rational lhs = lah_derangement_sum(s, t, LahSumForm::convolution);
      const Rational rhs = lah_derangement_sum(s, t, LahSumForm::alternating);
      ++result.cases;
      if (lhs != rhs || (t == 0 && lhs != Rational(tables.derangements(s)))) {
        result.pass = false;
        result.detail = "s=" + std::to_string(s) + " t=" + std::to_string(t) +
                        ": " + q_str(lhs) + " vs " + q_str(rhs);
        return result;
      }
    }
  }
  return result;
}

CheckResult check_theorem_equivalence(int max_n) {
  CheckResult result{"theorem-equivalence", true, 0, ""};
  const int bound = std::min(max_n, 30);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ExactPmf a = distribution_full(n, k, Method::theorem1);
      const ExactPmf b = distribution_full(n, k, Method::theorem2);
      ++result.cases;
      for (int m = 0; m <= n; ++m) {
        if (a.probs[m] != b.probs[m]) {
          result.pass = false;
          result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " m=" + std::to_string(m) + ": " + q_str(a.probs[m]) +
                          " != " + q_str(b.probs[m]);
          return result;
        }
      }
    }
  }
  return result;
}

CheckResult check_pmf_structure(int max_n) {
  CheckResult result{"pmf-structure", true, 0, ""};
  auto& tables = shared_tables();
  const int bound = std::min(max_n, 100);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ExactPmf pmf = distribution_full(n, k, Method::theorem1);
      Rational sum(0);
      for (const auto& p : pmf.probs) {
        sum += p;
      }
      const Rational base =
          make_rational(tables.factorial(n - k), tables.factorial(n));
      ++result.cases;
      if (sum != 1 || pmf.probs[1] != 0 || pmf.probs[0] != base) {
        result.pass = false;
        result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        return result;
      }
    }
  }
  return result;
}

CheckResult check_specializations(int max_n) {
  CheckResult result{"small-k-specializations", true, 0, ""};
  auto& tables = shared_tables();
  const int bound = std::min(max_n, 40);
  for (int n = 3; n <= bound; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for (long m = 0; m <= n; ++m) {
        const Rational special = pmf_special(n, k, m);
        const Rational general = pmf_theorem1(n, k, m);
        ++result.cases;
        if (special != general) {
          result.pass = false;
          result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " m=" + std::to_string(m) + ": " + q_str(special) +
                          " != " + q_str(general);
          return result;
        }
        if (k == 1 && m >= 2) {
          const Rational tail =
              make_rational(tables.stirling1(n, m), tables.factorial(n));
          ++result.cases;
          if (general != tail) {
            result.pass = false;
            result.detail = "k=1 tail n=" + std::to_string(n) +
                            " m=" + std::to_string(m);
            return result;
          }
        }
      }
    }
  }
  return result;
}

CheckResult check_oracle_equivalence(int max_n) {
  CheckResult result{"oracle-equivalence", true, 0, ""};
  const int bound = std::min(max_n, 8);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ExactPmf oracle = enumerate_process(n, k);
      const ExactPmf t1 = distribution_full(n, k, Method::theorem1);
      const ExactPmf t2 = distribution_full(n, k, Method::theorem2);
      ++result.cases;
      for (int m = 0; m <= n; ++m) {
        if (oracle.probs[m] != t1.probs[m] || oracle.probs[m] != t2.probs[m]) {
          result.pass = false;
          result.detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                          " m=" + std::to_string(m);
          return result;
        }
      }
    }
  }
  return result;
}

CheckResult check_outcome_counting(int max_n) {
  CheckResult result{"outcome-counting", true, 0, ""};
  const int bound = std::min(max_n, 7);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto atoms = enumerate_outcomes(n, k);
      std::map<std::pair<std::vector<int>, std::vector<int>>, long> grouped;
      for (const auto& atom : atoms) {
        std::vector<int> fc, mc;
        for (int p = 0; p < n; ++p) {
          if (atom.seating[p] != p) {
            (p < k ? fc : mc).push_back(p);
          }
        }
        ++grouped[{fc, mc}];
        // Atom probability depends only on the main-cabin misseated set.
        ++result.cases;
        if (atom.probability != per_outcome_probability(n, k, mc)) {
          result.pass = false;
          result.detail = "atom probability mismatch at n=" +
                          std::to_string(n) + " k=" + std::to_string(k);
          return result;
        }
      }
      // Every candidate set pair, realized or not.
      for (unsigned fc_mask = 0; fc_mask < (1u << k); ++fc_mask) {
        for (unsigned mc_mask = 0; mc_mask < (1u << (n - k)); ++mc_mask) {
          std::vector<int> fc, mc;
          for (int p = 0; p < k; ++p) {
            if (fc_mask & (1u << p)) {
              fc.push_back(p);
            }
          }
          for (int p = 0; p < n - k; ++p) {
            if (mc_mask & (1u << p)) {
              mc.push_back(k + p);
            }
          }
          const int s = static_cast<int>(fc.size());
          const int e = static_cast<int>(mc.size());
          const auto it = grouped.find({fc, mc});
          const long observed = it == grouped.end() ? 0 : it->second;
          ++result.cases;
          if (arrangement_total(s, e) != observed) {
            result.pass = false;
            result.detail = "count mismatch at n=" + std::to_string(n) +
                            " k=" + std::to_string(k) +
                            " s=" + std::to_string(s) +
                            " e=" + std::to_string(e);
            return result;
          }
        }
      }
    }
  }
  return result;
}

CheckResult check_thread_decomposition(int max_n) {
  CheckResult result{"thread-decomposition", true, 0, ""};
  const int bound = std::min(max_n, 7);
  for (int n = 1; n <= bound; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto atoms = enumerate_outcomes(n, k);
      using Key = std::tuple<std::vector<int>, std::vector<int>, int, int>;
      std::map<Key, long> cells;
      std::map<std::pair<std::vector<int>, std::vector<int>>, long> pairs;
      for (const auto& atom : atoms) {
        const BoardingOutcome outcome = make_outcome({n, k}, atom.seating);
        const ThreadStats stats = decompose_threads(outcome);
        // Reconstruction: m and s recoverable from the decomposition.
        long thread_members = 0, cycle_members = 0;
        for (const auto& th : stats.threads) {
          thread_members += static_cast<long>(th.size());
        }
        for (const auto& cyc : stats.derangement_cycles) {
          cycle_members += static_cast<long>(cyc.size());
        }
        ++result.cases;
        if (thread_members + cycle_members != outcome.m() ||
            stats.r + cycle_members != outcome.s() ||
            !(0 <= stats.t && stats.t <= stats.r && stats.r <= stats.s)) {
          result.pass = false;
          result.detail = "reconstruction failed at n=" + std::to_string(n) +
                          " k=" + std::to_string(k);
          return result;
        }
        ++cells[{outcome.misseated_fc, outcome.misseated_mc, stats.r, stats.t}];
        ++pairs[{outcome.misseated_fc, outcome.misseated_mc}];
      }
      for (const auto& [pair, total] : pairs) {
        const int s = static_cast<int>(pair.first.size());
        const int e = static_cast<int>(pair.second.size());
        for (int r = 0; r <= s; ++r) {
          for (int t = 0; t <= r; ++t) {
            const auto it = cells.find({pair.first, pair.second, r, t});
            const long observed = it == cells.end() ? 0 : it->second;
            ++result.cases;
            if (arrangement_cell(s, e, r, t) != observed) {
              result.pass = false;
              result.detail = "cell mismatch at n=" + std::to_string(n) +
                              " k=" + std::to_string(k) +
                              " s=" + std::to_string(s) +
                              " e=" + std::to_string(e) +
                              " r=" + std::to_string(r) +
                              " t=" + std::to_string(t);
              return result;
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run_all_checks(int max_n) {
  if (max_n < 2) {
    throw std::invalid_argument("requires max_n >= 2");
  }
  std::vector<CheckResult> results;
  results.push_back(check_stirling_row_sums());
  results.push_back(check_rising_factorial());
  results.push_back(check_lah());
  results.push_back(check_derangements());
  results.push_back(check_trinomial_revision());
  results.push_back(check_weight_sum(max_n));
  results.push_back(check_alternating_delta());
  results.push_back(check_lah_derangement_sum());
  results.push_back(check_theorem_equivalence(max_n));
  results.push_back(check_pmf_structure(max_n));
  results.push_back(check_specializations(max_n));
  results.push_back(check_oracle_equivalence(max_n));
  results.push_back(check_outcome_counting(max_n));
  results.push_back(check_thread_decomposition(max_n));
  return results;
}

}  // namespace misseat
