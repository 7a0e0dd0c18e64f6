#pragma once

// Exact scalars. Rational is GMP's mpq_class: always canonical (lowest
// terms, positive denominator) after every arithmetic operation.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace lascap {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

// num/den in lowest terms (mpq_class's two-argument constructor does not
// canonicalize on its own).
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q", and finite decimals such as "-0.125".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// Nearest integer; exact half-integers round away from zero.
Integer round_nearest(const Rational& q);

// Nearest multiple of 2^-bits (ties toward +inf).
Rational round_dyadic(const Rational& q, unsigned bits);

// Bounds on sqrt(q) for q >= 0, each within 2^-bits of the true root.
Rational sqrt_lower(const Rational& q, unsigned bits);
Rational sqrt_upper(const Rational& q, unsigned bits);
// Smallest integer >= sqrt(n).
Integer ceil_sqrt(const Integer& n);

Rational dot(const RatVector& a, const RatVector& b);
Rational norm2_squared(const RatVector& a);
Rational max_abs(const RatVector& a);

}  // namespace lascap
