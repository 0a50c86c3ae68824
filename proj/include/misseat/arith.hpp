#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace misseat {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when a computed result violates a structural guarantee that
/// holds for every valid input (e.g. a pmf that does not sum to 1).
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Reduced fraction with positive denominator. Throws on den == 0.
Rational make_rational(BigInt num, BigInt den);

inline Rational make_rational(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

BigInt int_pow(unsigned long base, unsigned long exp);

/// Round-to-nearest-even conversion. Exactness lives in the rational;
/// the double is a rendering only.
double to_double(const Rational& value);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace misseat
