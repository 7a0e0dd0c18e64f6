#include <random>

#include "doctest.h"
#include "lascap/exactlin.hpp"
#include "oracles.hpp"

using namespace lascap;
using lascap::testing::random_gram;
using lascap::testing::random_rational;
using lascap::testing::random_symmetric;

namespace {

RatMatrix m2(Rational a, Rational b, Rational c, Rational d) { return RatMatrix::from_rows({{a, b}, {c, d}}); }

// lambda_min(M) >= x  iff  M - xI is PSD.
bool min_eig_at_least(const RatMatrix& m, const Rational& x) { return psd_certificate(m.shifted(-x)).psd; }
// lambda_min(M) <= x  iff  M - xI is not positive definite.
bool min_eig_at_most(const RatMatrix& m, const Rational& x) {
  RatMatrix s = m.shifted(-x);
  return !psd_certificate(s).psd || determinant(s) == 0;
}

// max <c,x> over {Ax >= b} by enumerating every basis of n tight rows.
std::optional<Rational> vertex_enumeration(const RatMatrix& a, const RatVector& b, const RatVector& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      RatMatrix sub(n, n);
      RatVector rhs(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sub(i, j) = a(pick[i], j);
        rhs[i] = b[pick[i]];
      }
      RatVector x;
      if (!solve_linear(sub, rhs, x)) return;
      RatVector ax = a * x;
      for (std::size_t r = 0; r < m; ++r)
        if (ax[r] < b[r]) return;
      Rational v = dot(c, x);
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t r = start; r < m; ++r) {
      pick[depth] = r;
      rec(r + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("psd_certificate examples") {
  CHECK(psd_certificate(RatMatrix::identity(2)).psd);

  auto swap = psd_certificate(m2(0, 1, 1, 0));
  REQUIRE_FALSE(swap.psd);
  CHECK(swap.witness == RatVector{1, -1});
  CHECK(quadratic_form(m2(0, 1, 1, 0), swap.witness) == -2);

  CHECK(psd_certificate(m2(1, Rational(1, 2), Rational(1, 2), Rational(1, 2))).psd);
  CHECK_THROWS_AS(psd_certificate(m2(0, 1, 2, 0)), ContractViolation);
  CHECK(psd_certificate(RatMatrix(0, 0)).psd);
  CHECK(psd_certificate(RatMatrix(3, 3)).psd);
}

TEST_CASE("psd_certificate witnesses are exact and agree with the eigenvalue oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 6;
    RatMatrix m = trial % 3 == 0 ? random_gram(rng, n, 1 + trial % 4) : random_symmetric(rng, n);
    auto cert = psd_certificate(m);
    if (!cert.psd) {
      CHECK(quadratic_form(m, cert.witness) < 0);
    }
    Rational eps(1, 64);
    Rational lam = min_eigenvalue_approx(m, eps);
    CHECK(cert.psd == (lam >= -eps || min_eig_at_least(m, 0)));
    if (cert.psd) CHECK(lam >= -eps);
  }
}

TEST_CASE("char_poly examples") {
  CHECK(char_poly(RatMatrix::from_rows({{7}})) == Polynomial({-7, 1}));
  CHECK(char_poly(RatMatrix::identity(2)) == Polynomial({1, -2, 1}));
  CHECK(char_poly(m2(0, 1, 1, 0)) == Polynomial({-1, 0, 1}));
  CHECK_THROWS_AS(char_poly(RatMatrix(2, 3)), ContractViolation);
}

TEST_CASE("char_poly equals det(xI - M) at n+1 points") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 6;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng);
    if (trial % 4 == 0)  // sparse columns exercise the Hessenberg pivot search
      for (std::size_t i = 0; i < n; ++i) m(i, 0) = 0;
    Polynomial p = char_poly(m);
    CHECK(p.degree() == static_cast<int>(n));
    for (int x = -1; x < static_cast<int>(n); ++x) {
      Rational xr = make_rational(x, 3);
      CHECK(p(xr) == determinant(RatMatrix::identity(n) * xr - m));
    }
  }
}

TEST_CASE("char_poly vanishes at diagonal eigenvalues") {
  RatVector d{2, Rational(-1, 3), 5, 2};
  Polynomial p = char_poly(RatMatrix::diagonal(d));
  for (const auto& x : d) CHECK(p(x) == 0);
}

TEST_CASE("sturm chain counts roots") {
  // (x-1)(x-2)(x+3) = x^3 - 7x + 6
  auto chain = sturm_chain(Polynomial({6, -7, 0, 1}));
  CHECK(sign_changes(chain, -10) - sign_changes(chain, 10) == 3);
  CHECK(sign_changes(chain, 0) - sign_changes(chain, Rational(3, 2)) == 1);
}

TEST_CASE("min_eigenvalue_approx examples") {
  Rational l = min_eigenvalue_approx(m2(0, 1, 1, 0), Rational(1, 4));
  CHECK(l >= Rational(-5, 4));
  CHECK(l <= Rational(-3, 4));
  l = min_eigenvalue_approx(RatMatrix::identity(3), Rational(1, 10));
  CHECK(l >= Rational(9, 10));
  CHECK(l <= Rational(11, 10));
  l = min_eigenvalue_approx(RatMatrix::diagonal({2, 5}), Rational(1, 10));
  CHECK(l >= Rational(19, 10));
  CHECK(l <= Rational(21, 10));
  CHECK_THROWS_AS(min_eigenvalue_approx(RatMatrix::identity(2), 0), ContractViolation);
}

TEST_CASE("min_eigenvalue_approx meets its precision on random matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + trial % 6;
    RatMatrix m = random_symmetric(rng, n);
    Rational prec(1, 1 + trial % 50);
    Rational l = min_eigenvalue_approx(m, prec);
    CHECK(min_eig_at_least(m, l - prec));
    CHECK(min_eig_at_most(m, l + prec));
  }
}

TEST_CASE("approx_eigenvector examples") {
  auto residual2 = [](const RatMatrix& m, const Rational& l, const RatVector& v) {
    return norm2_squared(m.shifted(-l) * v);
  };
  RatVector v = approx_eigenvector(RatMatrix::identity(2), 1, Rational(1, 2));
  CHECK(v.size() == 2);
  CHECK(residual2(RatMatrix::identity(2), 1, v) == 0);

  v = approx_eigenvector(m2(0, 1, 1, 0), -1, Rational(1, 2));
  CHECK(v == RatVector{Rational(7, 10), Rational(-7, 10)});
  CHECK(norm2_squared(v) == Rational(49, 50));

  RatMatrix d = RatMatrix::diagonal({3, 5});
  Rational l = 3 + Rational(1, 100);
  v = approx_eigenvector(d, l, Rational(1, 2));
  CHECK(residual2(d, l, v) < Rational(1, 16));
  CHECK(norm2_squared(v) >= Rational(1, 4));
  CHECK(norm2_squared(v) <= 4);

  CHECK_THROWS_AS(approx_eigenvector(d, 4, Rational(1, 100)), ContractViolation);
}

TEST_CASE("approx_eigenvector contract on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 5;
    RatMatrix m = random_symmetric(rng, n);
    Rational delta(1, 1 + trial % 20);
    Rational l = min_eigenvalue_approx(m, delta / 4);
    RatVector v = approx_eigenvector(m, l, delta);
    CHECK(norm2_squared(m.shifted(-l) * v) < delta * delta / 4);
    CHECK(norm2_squared(v) >= Rational(1, 4));
    CHECK(norm2_squared(v) <= 4);
  }
}

TEST_CASE("lp_optimize examples") {
  RatMatrix a = RatMatrix::from_rows({{-1}, {1}});
  auto r = lp_optimize(a, {-1, 0}, {1});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x == RatVector{1});
  CHECK(r.value == 1);

  r = lp_optimize(a, {1, 0}, {1});
  CHECK(r.status == LpStatus::kInfeasible);

  r = lp_optimize(RatMatrix::from_rows({{1}}), {0}, {1});
  CHECK(r.status == LpStatus::kUnbounded);

  // No rows, zero objective: the origin is optimal.
  r = lp_optimize(RatMatrix(0, 2), {}, {0, 0});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == 0);
}

TEST_CASE("lp_optimize agrees with vertex enumeration") {
  std::mt19937_64 rng(2024);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + trial % 3;
    std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    // Box rows keep the region bounded, so enumeration is a complete oracle.
    std::vector<RatVector> rows;
    RatVector b;
    for (std::size_t j = 0; j < n; ++j) {
      RatVector e(n);
      e[j] = 1;
      rows.push_back(e);
      b.push_back(-5);
      e[j] = -1;
      rows.push_back(e);
      b.push_back(-5);
    }
    for (std::size_t k = 0; k < extra; ++k) {
      RatVector row(n);
      for (auto& x : row) x = random_rational(rng, 4, 3);
      rows.push_back(row);
      b.push_back(random_rational(rng, 8, 2));
    }
    RatVector c(n);
    for (auto& x : c) x = random_rational(rng, 5, 3);
    RatMatrix a = RatMatrix::from_rows(rows);
    auto got = lp_optimize(a, b, c);
    auto want = vertex_enumeration(a, b, c);
    if (!want) {
      CHECK(got.status == LpStatus::kInfeasible);
      ++infeasible;
    } else {
      REQUIRE(got.status == LpStatus::kOptimal);
      CHECK(got.value == *want);
      RatVector ax = a * got.x;
      for (std::size_t r = 0; r < b.size(); ++r) CHECK(ax[r] >= b[r]);
      ++optimal;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 5);
}

TEST_CASE("exactlin is deterministic") {
  std::mt19937_64 rng(3);
  RatMatrix m = random_symmetric(rng, 5);
  CHECK(min_eigenvalue_approx(m, Rational(1, 1000)) == min_eigenvalue_approx(m, Rational(1, 1000)));
  CHECK(psd_certificate(m).witness == psd_certificate(m).witness);
}
