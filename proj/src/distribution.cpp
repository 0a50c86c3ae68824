#include "misseat/distribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "misseat/combinatorics.hpp"

namespace misseat {
namespace {

// Above this size the evaluators stop memoizing triangles in the
// shared tables and build single rows / column-limited blocks locally,
// keeping memory O(n*k) instead of O(n^2) big integers.
constexpr int kTableCacheLimit = 512;

struct EvalContext {
  int n = 0;
  int k = 0;
  int top_row = 0;                // n - k + 1
  std::vector<BigInt> fact;      // 0..n
  std::vector<BigInt> s1row;     // stirling1 row top_row, cols 0..top_row
  std::vector<BigInt> binom_k;   // C(k, 0..k)
};

EvalContext make_context(int n, int k) {
  EvalContext ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.top_row = n - k + 1;
  if (n <= kTableCacheLimit) {
    auto& tables = shared_tables();
    tables.ensure(n);
    ctx.fact.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
      ctx.fact.push_back(tables.factorial(i));
    }
    ctx.s1row = tables.stirling1_row(ctx.top_row);
  } else {
    ctx.fact.resize(n + 1);
    ctx.fact[0] = 1;
    for (int i = 1; i <= n; ++i) {
      ctx.fact[i] = i * ctx.fact[i - 1];
    }
    ctx.s1row = stirling1_single_row(ctx.top_row);
  }
  ctx.binom_k = binomial_single_row(k);
  return ctx;
}

void require_domain(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("requires 1 <= k <= n");
  }
}

// n! * P_{n,k}(m) via the alternating closed form, for one m.
// A summand is skipped as soon as its stirling1 factor vanishes, so no
// power with a negative exponent is ever formed.
BigInt theorem1_numerator(const EvalContext& ctx, long m) {
  BigInt numer(0);
  if (m >= 0 && m <= ctx.k) {
    numer = ctx.fact[ctx.n - ctx.k] * ctx.binom_k[m];
    if (m % 2 != 0) {
      numer = -numer;
    }
  }
  BigInt b, fall, pw, term;
  const long s_max = std::min<long>(ctx.k, m);
  for (long s = 1; s <= s_max; ++s) {
    const long e = m - s;  // >= 0 here
    if (e + 1 > ctx.top_row) {
      continue;  // stirling1(top_row, e+1) = 0
    }
    // b = sum_{l=1}^{s} (-1)^{s-l} l^e s!/(s-l)!
    b = 0;
    fall = 1;
    for (long l = 1; l <= s; ++l) {
      fall *= s - l + 1;  // now s!/(s-l)!
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(l),
                    static_cast<unsigned long>(e));
      if ((s - l) % 2 == 0) {
        mpz_addmul(b.get_mpz_t(), fall.get_mpz_t(), pw.get_mpz_t());
      } else {
        mpz_submul(b.get_mpz_t(), fall.get_mpz_t(), pw.get_mpz_t());
      }
    }
    term = ctx.binom_k[s] * b;
    mpz_addmul(numer.get_mpz_t(), term.get_mpz_t(),
               ctx.s1row[e + 1].get_mpz_t());
  }
  return numer;
}

// Serial reference for the full numerator vector. Walks e upward per s
// so the l^e powers grow incrementally instead of being recomputed;
// the parallel kernel recomputes them per m. Identical exact values.
std::vector<BigInt> theorem1_numerators_serial(const EvalContext& ctx) {
  const int n = ctx.n;
  const int k = ctx.k;
  std::vector<BigInt> numer(n + 1, BigInt(0));
  for (long m = 0; m <= k; ++m) {
    numer[m] = ctx.fact[n - k] * ctx.binom_k[m];
    if (m % 2 != 0) {
      numer[m] = -numer[m];
    }
  }
  BigInt b, term;
  for (long s = 1; s <= k; ++s) {
    std::vector<BigInt> fall(s + 1);
    fall[0] = 1;
    for (long l = 1; l <= s; ++l) {
      fall[l] = fall[l - 1] * (s - l + 1);
    }
    std::vector<BigInt> pows(s + 1, BigInt(1));
    const long e_max = std::min<long>(n - s, ctx.top_row - 1);
    for (long e = 0; e <= e_max; ++e) {
      if (e > 0) {
        for (long l = 2; l <= s; ++l) {
          pows[l] *= l;
        }
      }
      b = 0;
      for (long l = 1; l <= s; ++l) {
        if ((s - l) % 2 == 0) {
          mpz_addmul(b.get_mpz_t(), fall[l].get_mpz_t(), pows[l].get_mpz_t());
        } else {
          mpz_submul(b.get_mpz_t(), fall[l].get_mpz_t(), pows[l].get_mpz_t());
        }
      }
      term = ctx.binom_k[s] * b;
      mpz_addmul(numer[s + e].get_mpz_t(), term.get_mpz_t(),
                 ctx.s1row[e + 1].get_mpz_t());
    }
  }
  return numer;
}

struct ThreadExpansionData {
  std::vector<std::vector<BigInt>> s2rows;  // rows 0..n, cols <= min(row, k)
  std::vector<BigInt> tsq;                  // (t!)^2, t = 0..k
  std::vector<std::vector<BigInt>> w;       // w[s][t] = sum_r C(s,r) L(r,t) d_{s-r}
};

ThreadExpansionData make_thread_expansion_data(const EvalContext& ctx) {
  const int k = ctx.k;
  ThreadExpansionData data;
  data.s2rows = stirling2_rows(ctx.n, k);

  data.tsq.resize(k + 1);
  for (int t = 0; t <= k; ++t) {
    data.tsq[t] = ctx.fact[t] * ctx.fact[t];
  }

  std::vector<BigInt> derang(k + 1);
  derang[0] = 1;
  if (k >= 1) {
    derang[1] = 0;
  }
  for (int i = 2; i <= k; ++i) {
    derang[i] = (i - 1) * (derang[i - 1] + derang[i - 2]);
  }

  std::vector<std::vector<BigInt>> pascal(k + 1);
  pascal[0] = {BigInt(1)};
  for (int s = 1; s <= k; ++s) {
    pascal[s].assign(s + 1, BigInt(1));
    for (int r = 1; r < s; ++r) {
      pascal[s][r] = pascal[s - 1][r - 1] + pascal[s - 1][r];
    }
  }

  // lah[r][t] = C(r-1, t-1) * r!/t!
  std::vector<std::vector<BigInt>> lah(k + 1);
  lah[0] = {BigInt(1)};
  BigInt ratio;
  for (int r = 1; r <= k; ++r) {
    lah[r].assign(r + 1, BigInt(0));
    for (int t = 1; t <= r; ++t) {
      mpz_divexact(ratio.get_mpz_t(), ctx.fact[r].get_mpz_t(),
                   ctx.fact[t].get_mpz_t());
      lah[r][t] = pascal[r - 1][t - 1] * ratio;
    }
  }

  data.w.resize(k + 1);
  BigInt term;
  for (int s = 0; s <= k; ++s) {
    data.w[s].assign(s + 1, BigInt(0));
    for (int t = 0; t <= s; ++t) {
      BigInt& acc = data.w[s][t];
      for (int r = t; r <= s; ++r) {
        if (t >= static_cast<int>(lah[r].size()) || lah[r][t] == 0) {
          continue;
        }
        term = pascal[s][r] * lah[r][t];
        mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(),
                   derang[s - r].get_mpz_t());
      }
    }
  }
  return data;
}

BigInt theorem2_numerator(const EvalContext& ctx,
                          const ThreadExpansionData& data, long m) {
  BigInt numer(0), g, term;
  const long s_max = std::min<long>(ctx.k, m);
  for (long s = 0; s <= s_max; ++s) {
    const long e = m - s;
    if (e + 1 > ctx.top_row) {
      continue;
    }
    const auto& s2row = data.s2rows[e];
    g = 0;
    const long t_max = std::min<long>(s, e);
    for (long t = 0; t <= t_max; ++t) {
      if (t >= static_cast<long>(s2row.size()) || s2row[t] == 0) {
        continue;
      }
      term = data.tsq[t] * s2row[t];
      mpz_addmul(g.get_mpz_t(), term.get_mpz_t(), data.w[s][t].get_mpz_t());
    }
    term = ctx.binom_k[s] * g;
    mpz_addmul(numer.get_mpz_t(), term.get_mpz_t(),
               ctx.s1row[e + 1].get_mpz_t());
  }
  return numer;
}

}  // namespace

const char* to_string(Method method) {
  return method == Method::theorem1 ? "theorem1" : "theorem2";
}

void ExactPmf::validate() const {
  if (n < 1 || k < 0 || k > n ||
      probs.size() != static_cast<std::size_t>(n) + 1) {
    throw InternalConsistencyError("pmf has malformed shape");
  }
  Rational sum(0);
  for (const auto& p : probs) {
    if (p < 0) {
      throw InternalConsistencyError("pmf has a negative mass");
    }
    sum += p;
  }
  if (sum != 1) {
    throw InternalConsistencyError("pmf normalization failure");
  }
  if (probs[1] != 0) {
    throw InternalConsistencyError("pmf mass at m=1 is nonzero");
  }
  auto& tables = shared_tables();
  if (probs[0] != make_rational(tables.factorial(n - k), tables.factorial(n))) {
    throw InternalConsistencyError("pmf mass at m=0 is not (n-k)!/n!");
  }
}

Rational pmf_theorem1(int n, int k, long m) {
  require_domain(n, k);
  if (m < 0 || m > n) {
    return Rational(0);
  }
  const EvalContext ctx = make_context(n, k);
  return make_rational(theorem1_numerator(ctx, m), ctx.fact[n]);
}

Rational pmf_theorem2(int n, int k, long m) {
  require_domain(n, k);
  if (m < 0 || m > n) {
    return Rational(0);
  }
  const EvalContext ctx = make_context(n, k);
  const ThreadExpansionData data = make_thread_expansion_data(ctx);
  return make_rational(theorem2_numerator(ctx, data, m), ctx.fact[n]);
}

Rational pmf_special(int n, int k, long m) {
  if (k < 1 || k > 3 || n < 3) {
    throw std::invalid_argument("requires 1 <= k <= 3 <= n");
  }
  if (m < 0 || m > n) {
    return Rational(0);
  }
  if (k == 1) {
    if (m <= 1) {
      return pmf_theorem1(n, 1, m);  // the k=1 display applies for m >= 2
    }
    const EvalContext ctx = make_context(n, 1);  // row n
    return make_rational(ctx.s1row[m], ctx.fact[n]);
  }

  const EvalContext ctx = make_context(n, k);  // row n-k+1
  const auto s1 = [&ctx](long j) -> const BigInt& {
    static const BigInt zero(0);
    if (j < 0 || j > ctx.top_row) {
      return zero;
    }
    return ctx.s1row[j];
  };
  // Everything over the common denominator n!; a coefficient's power
  // of 2 or 3 is evaluated only when its stirling1 factor is nonzero,
  // which forces the exponent to be >= 0.
  BigInt numer(0);
  if (m <= k) {
    numer = ctx.fact[n - k] * ctx.binom_k[m];
    if (m % 2 != 0) {
      numer = -numer;
    }
  }
  if (k == 2) {
    numer += 2 * s1(m);
    if (s1(m - 1) != 0) {
      numer += (int_pow(2, m - 1) - 2) * s1(m - 1);
    }
  } else {
    numer += 3 * s1(m);
    if (s1(m - 1) != 0) {
      numer += 3 * (int_pow(2, m - 1) - 2) * s1(m - 1);
    }
    if (s1(m - 2) != 0) {
      numer += (2 * int_pow(3, m - 2) - 3 * int_pow(2, m - 2) + 3) * s1(m - 2);
    }
  }
  return make_rational(numer, ctx.fact[n]);
}

ExactPmf distribution_full(int n, int k, Method method, Execution exec) {
  if (n < 1 || k < 0 || k > n) {
    throw std::invalid_argument("requires n >= 1 and 0 <= k <= n");
  }
  ExactPmf pmf;
  pmf.n = n;
  pmf.k = k;
  pmf.probs.assign(n + 1, Rational(0));
  if (k == 0) {
    pmf.probs[0] = 1;  // nobody deviates, everyone sits correctly
    pmf.validate();
    return pmf;
  }

  const EvalContext ctx = make_context(n, k);
  std::vector<BigInt> numer;
  if (method == Method::theorem1) {
    if (exec == Execution::serial) {
      numer = theorem1_numerators_serial(ctx);
    } else {
      numer.assign(n + 1, BigInt(0));
#pragma omp parallel for schedule(dynamic)
      for (int m = 0; m <= n; ++m) {
        numer[m] = theorem1_numerator(ctx, m);
      }
    }
  } else {
    const ThreadExpansionData data = make_thread_expansion_data(ctx);
    numer.assign(n + 1, BigInt(0));
    if (exec == Execution::serial) {
      for (int m = 0; m <= n; ++m) {
        numer[m] = theorem2_numerator(ctx, data, m);
      }
    } else {
#pragma omp parallel for schedule(dynamic)
      for (int m = 0; m <= n; ++m) {
        numer[m] = theorem2_numerator(ctx, data, m);
      }
    }
  }
  for (int m = 0; m <= n; ++m) {
    pmf.probs[m] = make_rational(std::move(numer[m]), ctx.fact[n]);
  }
  pmf.validate();
  return pmf;
}

MomentSummary moments(const ExactPmf& pmf) {
  Rational mean(0), second(0);
  for (int m = 0; m <= pmf.n; ++m) {
    mean += m * pmf.probs[m];
    second += m * static_cast<long>(m) * pmf.probs[m];
  }
  MomentSummary summary;
  summary.mean = mean;
  summary.variance = second - mean * mean;
  if (summary.variance < 0 || summary.mean < 0 || summary.mean > pmf.n) {
    throw InternalConsistencyError("moment bounds violated");
  }
  return summary;
}

Rational enumerated_weight_sum(int n, int k, long m, long s) {
  require_domain(n, k);
  const long len = m - s;
  if (len < 0 || len > n - k) {
    throw std::invalid_argument("requires 0 <= m-s <= n-k");
  }
  // Sum over k < i_1 < ... < i_len <= n (1-based passenger ids) of
  // prod_j 1/(n - (i_j - 1)).
  Rational total(0);
  const auto descend = [&](auto&& self, long depth, long first,
                           const Rational& acc) -> void {
    if (depth == len) {
      total += acc;
      return;
    }
    for (long i = first; i <= n - (len - depth - 1); ++i) {
      self(self, depth + 1, i + 1, Rational(acc * make_rational(1L, n - (i - 1))));
    }
  };
  descend(descend, 0, k + 1, Rational(1));
  return total;
}

Rational lah_derangement_sum(long s, long t, LahSumForm form) {
  if (t < 0 || t > s) {
    throw std::invalid_argument("requires 0 <= t <= s");
  }
  auto& tables = shared_tables();
  if (form == LahSumForm::convolution) {
    BigInt acc(0);
    for (long r = t; r <= s; ++r) {
      acc += tables.binomial(s, r) * tables.lah(r, t) * tables.derangements(s - r);
    }
    return Rational(acc);
  }
  // (s!/t!) sum_{j=0}^{s-t} ((-1)^j / j!) C(s-j, t)
  BigInt prefix;
  mpz_divexact(prefix.get_mpz_t(), tables.factorial(s).get_mpz_t(),
               tables.factorial(t).get_mpz_t());
  Rational acc(0);
  for (long j = 0; j <= s - t; ++j) {
    Rational term = make_rational(tables.binomial(s - j, t), tables.factorial(j));
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return Rational(prefix) * acc;
}

long alternating_delta(long lower, long upper) {
  if (lower < 1 || lower > upper) {
    throw std::invalid_argument("requires 1 <= lower <= upper");
  }
  auto& tables = shared_tables();
  BigInt acc(0);
  for (long j = lower; j <= upper; ++j) {
    if (j % 2 == 0) {
      acc += tables.binomial(upper - lower, j - lower);
    } else {
      acc -= tables.binomial(upper - lower, j - lower);
    }
  }
  return acc.get_si();
}

}  // namespace misseat
