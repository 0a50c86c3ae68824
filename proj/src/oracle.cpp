#include "misseat/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "misseat/combinatorics.hpp"

namespace misseat {
namespace {

void require_within_bound(int n, int k, int bound) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("requires 1 <= k <= n");
  }
  if (n > bound) {
    throw std::invalid_argument("n exceeds the enumeration bound");
  }
}

// Depth-first walk of every decision branch. Forced seatings keep the
// branch weight; random choices multiply in 1/#free.
template <typename Visitor>
void walk(int n, int k, int passenger, std::vector<int>& free_seats,
          std::vector<int>& seating, const Rational& probability,
          Visitor&& visit) {
  if (passenger == n) {
    visit(seating, probability);
    return;
  }
  if (passenger >= k) {
    const auto it =
        std::lower_bound(free_seats.begin(), free_seats.end(), passenger);
    if (it != free_seats.end() && *it == passenger) {
      const auto pos = it - free_seats.begin();
      seating[passenger] = passenger;
      free_seats.erase(it);
      walk(n, k, passenger + 1, free_seats, seating, probability, visit);
      free_seats.insert(free_seats.begin() + pos, passenger);
      return;
    }
  }
  const Rational branch =
      probability * make_rational(1L, static_cast<long>(free_seats.size()));
  for (std::size_t idx = 0; idx < free_seats.size(); ++idx) {
    const int seat = free_seats[idx];
    seating[passenger] = seat;
    free_seats.erase(free_seats.begin() + idx);
    walk(n, k, passenger + 1, free_seats, seating, branch, visit);
    free_seats.insert(free_seats.begin() + idx, seat);
  }
}

template <typename Visitor>
void enumerate(int n, int k, Visitor&& visit) {
  std::vector<int> free_seats(n);
  for (int i = 0; i < n; ++i) {
    free_seats[i] = i;
  }
  std::vector<int> seating(n, -1);
  walk(n, k, 0, free_seats, seating, Rational(1), visit);
}

}  // namespace

ExactPmf enumerate_process(int n, int k, int bound) {
  require_within_bound(n, k, bound);
  ExactPmf pmf;
  pmf.n = n;
  pmf.k = k;
  pmf.probs.assign(n + 1, Rational(0));
  enumerate(n, k, [&](const std::vector<int>& seating, const Rational& p) {
    int m = 0;
    for (int q = 0; q < n; ++q) {
      m += seating[q] != q;
    }
    pmf.probs[m] += p;
  });
  pmf.validate();
  return pmf;
}

std::vector<OutcomeAtom> enumerate_outcomes(int n, int k, int bound) {
  require_within_bound(n, k, bound);
  std::map<std::vector<int>, Rational> merged;
  enumerate(n, k, [&](const std::vector<int>& seating, const Rational& p) {
    merged[seating] += p;
  });
  std::vector<OutcomeAtom> atoms;
  atoms.reserve(merged.size());
  Rational total(0);
  for (auto& [seating, probability] : merged) {
    total += probability;
    atoms.push_back({seating, probability});
  }
  if (total != 1) {
    throw InternalConsistencyError("outcome probabilities do not sum to 1");
  }
  return atoms;
}

Rational per_outcome_probability(int n, int k,
                                 const std::vector<int>& misseated_mc) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("requires 1 <= k <= n");
  }
  auto& tables = shared_tables();
  Rational result = make_rational(tables.factorial(n - k), tables.factorial(n));
  for (const int passenger : misseated_mc) {
    if (passenger < k || passenger >= n) {
      throw std::invalid_argument("main-cabin index out of range");
    }
    // n - passenger seats are free when this passenger boards.
    result *= make_rational(1L, static_cast<long>(n - passenger));
  }
  return result;
}

long count_arrangements(int n, int k, const std::vector<int>& misseated_fc,
                        const std::vector<int>& misseated_mc, int bound) {
  require_within_bound(n, k, bound);
  for (const int p : misseated_fc) {
    if (p < 0 || p >= k) {
      throw std::invalid_argument("first-class index out of range");
    }
  }
  for (const int p : misseated_mc) {
    if (p < k || p >= n) {
      throw std::invalid_argument("main-cabin index out of range");
    }
  }
  long count = 0;
  for (const OutcomeAtom& atom : enumerate_outcomes(n, k, bound)) {
    std::vector<int> fc, mc;
    for (int p = 0; p < n; ++p) {
      if (atom.seating[p] != p) {
        (p < k ? fc : mc).push_back(p);
      }
    }
    count += fc == misseated_fc && mc == misseated_mc;
  }
  return count;
}

}  // namespace misseat
