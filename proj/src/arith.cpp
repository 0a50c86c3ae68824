#include "misseat/arith.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace misseat {

Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

BigInt int_pow(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// Nearest-even rounding of num/den to a double, including the
// subnormal range. mpq_get_d truncates, which would make renderings
// like 1/100 disagree with the double literal 0.01.
double to_double(const Rational& value) {
  const int sign = sgn(value);
  if (sign == 0) {
    return 0.0;
  }
  BigInt num = abs(BigInt(value.get_num()));
  const BigInt& den = value.get_den();

  // exponent = floor(log2(num/den))
  long exponent =
      static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
      static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  {
    BigInt lhs = num;
    BigInt rhs = den;
    if (exponent >= 0) {
      rhs <<= exponent;
    } else {
      lhs <<= -exponent;
    }
    if (lhs < rhs) {
      --exponent;
    }
  }

  if (exponent >= 1024) {
    return sign * std::numeric_limits<double>::infinity();
  }

  // Normal numbers carry 53 significant bits; below 2^-1022 the
  // representable precision shrinks with the exponent.
  const long shift = exponent >= -1022 ? 52 - exponent : 1074;
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift >= 0) {
    scaled_num <<= shift;
  } else {
    scaled_den <<= -shift;
  }

  BigInt quotient, remainder;
  mpz_fdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(),
              scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  const BigInt twice_rem = remainder * 2;
  if (twice_rem > scaled_den ||
      (twice_rem == scaled_den && mpz_odd_p(quotient.get_mpz_t()))) {
    ++quotient;
  }

  // quotient <= 2^53, exactly representable.
  const double mantissa = quotient.get_d();
  return sign * std::ldexp(mantissa, static_cast<int>(-shift));
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw InternalConsistencyError("double formatting failed");
  }
  return std::string(buf, ptr);
}

}  // namespace misseat
