#pragma once

// Exact linear algebra over Q: PSD decision with negative-direction
// witnesses, characteristic polynomials, guaranteed-precision eigenvalue
// isolation, approximate eigenvectors, and a simplex LP solver.

#include <optional>
#include <vector>

#include "lascap/matrix.hpp"
#include "lascap/rational.hpp"

namespace lascap {

// Coefficients in ascending order; empty means the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  // Remainder of *this divided by `divisor` (divisor nonzero).
  Polynomial remainder(const Polynomial& divisor) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial&) const = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct PsdCertificate {
  bool psd = false;
  // Set when !psd: exact rational v with v^T M v < 0.
  RatVector witness;
};

// Decides X >= 0 by symmetric congruence elimination. Throws
// ContractViolation on non-symmetric input.
PsdCertificate psd_certificate(const RatMatrix& m);

// det(xI - M), computed through an exact Hessenberg reduction.
Polynomial char_poly(const RatMatrix& m);

// Sturm chain of a polynomial (p, p', -rem, ...), each member scaled to a
// unit-magnitude leading coefficient.
std::vector<Polynomial> sturm_chain(const Polynomial& p);
int sign_changes(const std::vector<Polynomial>& chain, const Rational& x);

// lambda with |lambda - lambda_min(M)| <= precision, by Sturm-sequence
// bisection on char_poly(M).
Rational min_eigenvalue_approx(const RatMatrix& m, const Rational& precision);

// v with ||(M - lambda I) v|| < delta/2 and ||v||^2 in [1/4, 4], found by
// exact inverse iteration. Requires lambda within delta/4 of an eigenvalue;
// throws ContractViolation when the residual search is exhausted.
RatVector approx_eigenvector(const RatMatrix& m, const Rational& lambda, const Rational& delta);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  RatVector x;
  Rational value;
};

// max <c,x> s.t. A x >= b, x free. Two-phase dense simplex with Bland's rule.
LpResult lp_optimize(const RatMatrix& a, const RatVector& b, const RatVector& c);

}  // namespace lascap
