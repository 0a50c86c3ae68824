#pragma once

#include <deque>
#include <shared_mutex>
#include <vector>

#include "misseat/arith.hpp"

namespace misseat {

/// Memoized arbitrary-precision triangles (unsigned Stirling numbers of
/// the first and second kind, binomials) and sequences (factorials,
/// derangements), built by recurrence.
///
/// Boundary conventions, applied by every accessor:
///   binomial(n, m)  = 0 for m < 0 or m > n
///   stirling1(p, 0) = 0 and stirling1(p, -q) = 0 for p, q >= 1;
///   stirling1(0, 0) = 1
///   stirling2(-p, q) = stirling2(-p, 0) = stirling2(0, q) = 0;
///   stirling2(0, 0) = 1
///   lah(0, 0) = 1; lah(i, j) = 0 for j > i, j < 0, or (i >= 1, j = 0)
/// Index pairs with no stated convention (stirling1(-p, q),
/// stirling2(p, -q), ...) are 0 by analogy: they index an empty family.
///
/// Rows grow lazily to the largest requested index; previously returned
/// values never change. Readers and growers synchronize on a shared
/// mutex, so concurrent readers always observe completed rows.
class CombinatoricsTables {
 public:
  explicit CombinatoricsTables(int limit = 0);

  /// Materializes all rows up to `limit`.
  void ensure(int limit) const;
  int limit() const;

  const BigInt& factorial(long n) const;     // n >= 0
  const BigInt& derangements(long n) const;  // n >= 0
  BigInt binomial(long n, long m) const;
  BigInt stirling1(long i, long j) const;
  BigInt stirling2(long i, long j) const;
  BigInt lah(long i, long j) const;

  /// Copies of full triangle rows (index j = 0..i).
  std::vector<BigInt> stirling1_row(int i) const;
  std::vector<BigInt> stirling2_row(int i) const;

 private:
  // Sequences are O(limit) entries and may grow far beyond the
  // triangles, which cost O(limit^2) big integers. Both require the
  // exclusive lock.
  void grow_sequences(int limit) const;
  void grow_triangles(int limit) const;
  void ensure_sequences(int limit) const;
  void ensure_triangles(int limit) const;

  mutable std::shared_mutex mutex_;
  mutable int seq_limit_ = -1;
  mutable int tri_limit_ = -1;
  mutable std::deque<std::vector<BigInt>> stirling1_;
  mutable std::deque<std::vector<BigInt>> stirling2_;
  mutable std::deque<std::vector<BigInt>> binomial_;
  mutable std::deque<BigInt> factorials_;
  mutable std::deque<BigInt> derangements_;
};

/// Process-wide shared tables instance.
CombinatoricsTables& shared_tables();

/// Coefficients of x(x+1)...(x+n-1) by ascending power, computed by
/// polynomial multiplication. Size n+1; n = 0 gives {1}.
std::vector<BigInt> rising_factorial_coefficients(int n);

/// Row i of the stirling1 triangle with O(i) memory (two-row recurrence).
std::vector<BigInt> stirling1_single_row(int i);

/// Rows 0..max_i of the stirling2 triangle, truncated at column max_j.
std::vector<std::vector<BigInt>> stirling2_rows(int max_i, int max_j);

/// Row n of Pascal's triangle via the multiplicative recurrence.
std::vector<BigInt> binomial_single_row(long n);

}  // namespace misseat
