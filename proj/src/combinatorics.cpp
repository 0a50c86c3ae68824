#include "misseat/combinatorics.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>

namespace misseat {

CombinatoricsTables::CombinatoricsTables(int limit) {
  std::unique_lock lock(mutex_);
  grow_sequences(limit < 0 ? 0 : limit);
  grow_triangles(limit < 0 ? 0 : limit);
}

void CombinatoricsTables::ensure(int limit) const {
  ensure_sequences(limit);
  ensure_triangles(limit);
}

void CombinatoricsTables::ensure_sequences(int limit) const {
  {
    std::shared_lock lock(mutex_);
    if (limit <= seq_limit_) {
      return;
    }
  }
  std::unique_lock lock(mutex_);
  if (limit > seq_limit_) {
    grow_sequences(limit);
  }
}

void CombinatoricsTables::ensure_triangles(int limit) const {
  {
    std::shared_lock lock(mutex_);
    if (limit <= tri_limit_) {
      return;
    }
  }
  std::unique_lock lock(mutex_);
  if (limit > tri_limit_) {
    grow_triangles(limit);
  }
}

int CombinatoricsTables::limit() const {
  std::shared_lock lock(mutex_);
  return tri_limit_;
}

void CombinatoricsTables::grow_sequences(int limit) const {
  for (int i = seq_limit_ + 1; i <= limit; ++i) {
    if (i == 0) {
      factorials_.push_back(BigInt(1));
      derangements_.push_back(BigInt(1));
      continue;
    }
    factorials_.push_back(i * factorials_[i - 1]);
    derangements_.push_back(
        i == 1 ? BigInt(0)
               : BigInt((i - 1) * (derangements_[i - 1] + derangements_[i - 2])));
  }
  if (limit > seq_limit_) {
    seq_limit_ = limit;
  }
}

void CombinatoricsTables::grow_triangles(int limit) const {
  for (int i = tri_limit_ + 1; i <= limit; ++i) {
    if (i == 0) {
      stirling1_.push_back({BigInt(1)});
      stirling2_.push_back({BigInt(1)});
      binomial_.push_back({BigInt(1)});
      continue;
    }
    const auto& s1_prev = stirling1_[i - 1];
    const auto& s2_prev = stirling2_[i - 1];
    const auto& b_prev = binomial_[i - 1];
    std::vector<BigInt> s1(i + 1), s2(i + 1), b(i + 1);
    b[0] = 1;
    b[i] = 1;
    s1[i] = 1;
    s2[i] = 1;
    for (int j = 1; j < i; ++j) {
      // c(i, j) = (i-1) c(i-1, j) + c(i-1, j-1)
      s1[j] = (i - 1) * s1_prev[j] + s1_prev[j - 1];
      // S(i, j) = j S(i-1, j) + S(i-1, j-1)
      s2[j] = j * s2_prev[j] + s2_prev[j - 1];
      b[j] = b_prev[j] + b_prev[j - 1];
    }
    stirling1_.push_back(std::move(s1));
    stirling2_.push_back(std::move(s2));
    binomial_.push_back(std::move(b));
  }
  if (limit > tri_limit_) {
    tri_limit_ = limit;
  }
}

const BigInt& CombinatoricsTables::factorial(long n) const {
  if (n < 0) {
    throw std::invalid_argument("factorial of negative argument");
  }
  ensure_sequences(static_cast<int>(n));
  std::shared_lock lock(mutex_);
  return factorials_[n];
}

const BigInt& CombinatoricsTables::derangements(long n) const {
  if (n < 0) {
    throw std::invalid_argument("derangements of negative argument");
  }
  ensure_sequences(static_cast<int>(n));
  std::shared_lock lock(mutex_);
  return derangements_[n];
}

BigInt CombinatoricsTables::binomial(long n, long m) const {
  if (n < 0 || m < 0 || m > n) {
    return BigInt(0);
  }
  ensure_triangles(static_cast<int>(n));
  std::shared_lock lock(mutex_);
  return binomial_[n][m];
}

BigInt CombinatoricsTables::stirling1(long i, long j) const {
  if (i < 0 || j < 0 || j > i) {
    return BigInt(0);
  }
  ensure_triangles(static_cast<int>(i));
  std::shared_lock lock(mutex_);
  return stirling1_[i][j];
}

BigInt CombinatoricsTables::stirling2(long i, long j) const {
  if (i < 0 || j < 0 || j > i) {
    return BigInt(0);
  }
  ensure_triangles(static_cast<int>(i));
  std::shared_lock lock(mutex_);
  return stirling2_[i][j];
}

BigInt CombinatoricsTables::lah(long i, long j) const {
  if (j < 0 || j > i) {
    return BigInt(0);
  }
  if (i == 0) {
    return BigInt(1);  // L(0,0); the empty partition
  }
  if (j == 0) {
    return BigInt(0);
  }
  // L(i,j) = C(i-1, j-1) * i!/j!, and i!/j! is the integer (j+1)...i.
  BigInt result = binomial(i - 1, j - 1);
  ensure_sequences(static_cast<int>(i));
  std::shared_lock lock(mutex_);
  BigInt ratio;
  mpz_divexact(ratio.get_mpz_t(), factorials_[i].get_mpz_t(),
               factorials_[j].get_mpz_t());
  return result * ratio;
}

std::vector<BigInt> CombinatoricsTables::stirling1_row(int i) const {
  if (i < 0) {
    throw std::invalid_argument("negative row index");
  }
  ensure_triangles(i);
  std::shared_lock lock(mutex_);
  return stirling1_[i];
}

std::vector<BigInt> CombinatoricsTables::stirling2_row(int i) const {
  if (i < 0) {
    throw std::invalid_argument("negative row index");
  }
  ensure_triangles(i);
  std::shared_lock lock(mutex_);
  return stirling2_[i];
}

CombinatoricsTables& shared_tables() {
  static CombinatoricsTables tables(64);
  return tables;
}

std::vector<BigInt> rising_factorial_coefficients(int n) {
  if (n < 0) {
    throw std::invalid_argument("negative factor count");
  }
  std::vector<BigInt> coeffs{BigInt(1)};
  coeffs.reserve(n + 1);
  for (int c = 0; c < n; ++c) {
    // multiply by (x + c)
    coeffs.push_back(coeffs.back());
    for (auto j = coeffs.size() - 2; j >= 1; --j) {
      coeffs[j] = c * coeffs[j] + coeffs[j - 1];
    }
    coeffs[0] *= c;
  }
  return coeffs;
}

std::vector<BigInt> stirling1_single_row(int i) {
  if (i < 0) {
    throw std::invalid_argument("negative row index");
  }
  std::vector<BigInt> row{BigInt(1)};
  std::vector<BigInt> next;
  for (int r = 1; r <= i; ++r) {
    next.assign(r + 1, BigInt(0));
    next[r] = 1;
    for (int j = 1; j < r; ++j) {
      next[j] = (r - 1) * row[j] + row[j - 1];
    }
    row.swap(next);
  }
  return row;
}

std::vector<std::vector<BigInt>> stirling2_rows(int max_i, int max_j) {
  if (max_i < 0 || max_j < 0) {
    throw std::invalid_argument("negative table bound");
  }
  std::vector<std::vector<BigInt>> rows(max_i + 1);
  rows[0] = {BigInt(1)};
  for (int i = 1; i <= max_i; ++i) {
    const int cols = std::min(i, max_j);
    auto& row = rows[i];
    const auto& prev = rows[i - 1];
    row.assign(cols + 1, BigInt(0));
    for (int j = 1; j <= cols; ++j) {
      if (j < static_cast<int>(prev.size())) {
        row[j] = j * prev[j];
      }
      if (j - 1 < static_cast<int>(prev.size())) {
        row[j] += prev[j - 1];
      }
    }
  }
  return rows;
}

std::vector<BigInt> binomial_single_row(long n) {
  if (n < 0) {
    throw std::invalid_argument("negative row index");
  }
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (long j = 0; j < n; ++j) {
    row[j + 1] = row[j] * (n - j);
    mpz_divexact_ui(row[j + 1].get_mpz_t(), row[j + 1].get_mpz_t(), j + 1);
  }
  return row;
}

}  // namespace misseat
