#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace artgallery {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when an internal invariant that the algorithm relies on is observed
/// to be false. The CLI maps this to exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Max bit length of numerator and denominator.
inline std::size_t bit_length(const Rational& r) {
  const std::size_t num = mpz_sizeinbase(r.get_num_mpz_t(), 2);
  const std::size_t den = mpz_sizeinbase(r.get_den_mpz_t(), 2);
  return num > den ? num : den;
}

inline int sign(const Rational& r) { return sgn(r); }

/// num/den in canonical form (mpq_class(num, den) does not reduce).
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or a finite decimal like "0.25".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

/// base^exp for a non-negative integer exponent.
Rational pow(const Rational& base, unsigned long exp);

/// Exact power of two 2^exp for any integer exponent.
Rational pow2(long exp);

/// Largest integer ell with 2^ell <= value. Requires value > 0.
long floor_log2(const Rational& value);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Natural log of a positive rational, in double precision. Only used to
/// derive integer iteration budgets, never in geometric predicates.
double ln(const Rational& r);

/// Within a few ulp of r; NaN when the numerator or denominator is out of double range.
double approx(const Rational& r);

}  // namespace artgallery
