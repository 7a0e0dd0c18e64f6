#include <random>

#include "doctest.h"
#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/sdpsolve.hpp"
#include "oracles.hpp"

using namespace lascap;
using namespace lascap::testing;

namespace {

// max x  s.t.  [[1,x],[x,1]] >= 0
InequalitySDP toy_sdp() {
  InequalitySDP s;
  s.block_sizes = {2};
  s.constant = {{0, 0, 0, 1}, {0, 1, 1, 1}};
  s.coefficients = {{{0, 0, 1, 1}}};
  s.objective = {1};
  return s;
}

ConicSDP no_rows(std::size_t n) {
  ConicSDP c;
  c.n = n;
  c.c = RatMatrix(n, n);
  return c;
}

// Brute-force sup of <S,X> over {X >= 0, <A_i,X> <= b_i} is hard in general;
// for the row-free cone the sup is 0 when -S is PSD and +inf otherwise.
bool separator_valid_for_cone(const RatMatrix& s, const RatMatrix& y, const Rational& delta) {
  return psd_certificate(s * Rational(-1)).psd && frobenius(s, y) + delta > 0;
}

}  // namespace

TEST_CASE("weak_separation examples") {
  ConicSDP one_row = no_rows(2);
  one_row.a = {RatMatrix::identity(2)};
  one_row.b = {1};
  auto r = weak_separation(one_row, RatMatrix::identity(2) * Rational(2), Rational(1, 10));
  CHECK_FALSE(r.accept);
  CHECK(r.separator == RatMatrix::identity(2));
  CHECK(frobenius(r.separator, RatMatrix::identity(2) * Rational(2)) == 4);

  CHECK(weak_separation(no_rows(2), RatMatrix::identity(2), Rational(1, 2)).accept);
  CHECK(weak_separation(no_rows(2), RatMatrix::identity(2), Rational(1, 1000)).accept);

  RatMatrix swap = RatMatrix::from_rows({{0, 1}, {1, 0}});
  auto s = weak_separation(no_rows(2), swap, Rational(1, 2));
  REQUIRE_FALSE(s.accept);
  CHECK(s.separator.max_abs_entry() == 1);
  CHECK(s.separator(0, 1) > 0);  // v near (1,-1): off-diagonal of -v v^T is positive
  // <-S,Y> approximates lambda_min(Y) = -1 in units of max v_i^2
  CHECK(frobenius(s.separator, swap) > 1);
  CHECK(separator_valid_for_cone(s.separator, swap, Rational(1, 2)));
}

TEST_CASE("weak_separation is sound on random matrices") {
  std::mt19937_64 rng(11);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 3;
    RatMatrix y = random_symmetric(rng, n, 4, 3);
    Rational delta = make_rational(1, 1 + rng() % 8);
    auto r = weak_separation(no_rows(n), y, delta);
    if (r.accept) {
      ++accepted;
      CHECK(psd_certificate(y).psd);
    } else {
      ++rejected;
      CHECK(r.separator.max_abs_entry() == 1);
      CHECK(separator_valid_for_cone(r.separator, y, delta));
    }
  }
  // Gram matrices are always accepted once well inside the cone.
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix g = random_gram(rng, 3, 3).shifted(1);
    CHECK(weak_separation(no_rows(3), g, Rational(1, 10)).accept);
    ++accepted;
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}

TEST_CASE("weak_separation with cancelling violated rows") {
  ConicSDP c = no_rows(2);
  RatMatrix e = RatMatrix::from_rows({{1, 0}, {0, 0}});
  c.a = {e, e * Rational(-1)};
  c.b = {-1, -1};
  auto r = weak_separation(c, RatMatrix(2, 2), Rational(1, 4));
  CHECK_FALSE(r.accept);
  CHECK(r.separator.max_abs_entry() == 1);
}

TEST_CASE("separate on the inequality form") {
  InequalitySDP toy = toy_sdp();
  for (auto strategy : {SeparationStrategy::kPivotWitness, SeparationStrategy::kEigen}) {
    CHECK_FALSE(separate(toy, {0}, Rational(1, 10), strategy));
    auto cut = separate(toy, {2}, Rational(1, 10), strategy);
    REQUIRE(cut);
    CHECK(dot(cut->g, RatVector{2}) <= cut->beta);
    // Deep interior points survive.
    CHECK(dot(cut->g, RatVector{Rational(1, 2)}) >= cut->beta);
    CHECK(dot(cut->g, RatVector{Rational(-1, 2)}) >= cut->beta);
  }
  // A 1 x 1 block acts as the row x >= 1.
  InequalitySDP row;
  row.block_sizes = {1};
  row.constant = {{0, 0, 0, -1}};
  row.coefficients = {{{0, 0, 0, 1}}};
  row.objective = {1};
  auto cut = separate(row, {0}, Rational(1, 10), SeparationStrategy::kPivotWitness);
  REQUIRE(cut);
  CHECK(cut->g == RatVector{1});
  CHECK(cut->beta == Rational(21, 20));
}

TEST_CASE("conic_to_inequality layout") {
  ConicSDP c = no_rows(2);
  InequalitySDP s = conic_to_inequality(c);
  CHECK(s.num_vars() == 3);
  CHECK(s.block_sizes == std::vector<std::size_t>{2});
  CHECK(s.constant.empty());
  RatMatrix x = RatMatrix::from_rows({{2, 1}, {1, 3}});
  CHECK(sym_to_vector(x) == RatVector{2, 1, 3});
  CHECK(vector_to_sym(sym_to_vector(x), 2) == x);
  CHECK(s.blocks_at(sym_to_vector(x))[0] == x);

  c.a = {RatMatrix::from_rows({{1, 2}, {2, 0}})};
  c.b = {5};
  c.c = RatMatrix::from_rows({{1, 0}, {0, -1}});
  s = conic_to_inequality(c);
  auto blocks = s.blocks_at(sym_to_vector(x));
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[1](0, 0) == 5 - frobenius(c.a[0], x));
  CHECK(dot(s.objective, sym_to_vector(x)) == c.objective_value(x));
}

TEST_CASE("conic and inequality forms agree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    ConicSDP c = no_rows(2);
    c.a = {random_symmetric(rng, 2, 3, 2)};
    c.b = {random_rational(rng, 3, 2)};
    c.c = random_symmetric(rng, 2, 3, 2);
    InequalitySDP s = conic_to_inequality(c);
    RatMatrix x = random_gram(rng, 2, 2);
    bool psd_blocks = true;
    for (const auto& b : s.blocks_at(sym_to_vector(x))) psd_blocks = psd_blocks && psd_certificate(b).psd;
    CHECK(psd_blocks == c.feasible(x));
  }

  InequalityAsConic back = inequality_to_conic(toy_sdp());
  CHECK(back.sdp.n == 2);
  // X = Z + x Y with x = 1/2 lies in the conic region and recovers x.
  RatMatrix x = RatMatrix::from_rows({{1, Rational(1, 2)}, {Rational(1, 2), 1}});
  CHECK(back.sdp.feasible(x));
  CHECK(back.variables_of(x) == RatVector{Rational(1, 2)});
  CHECK(back.sdp.objective_value(x) == Rational(1, 2));
  CHECK_FALSE(back.sdp.feasible(RatMatrix::from_rows({{2, 0}, {0, 1}})));
}

TEST_CASE("round trip preserves the toy optimum") {
  Rational delta(1, 100);
  auto direct = ellipsoid_optimize(toy_sdp(), delta, 2);
  InequalityAsConic conic = inequality_to_conic(toy_sdp());
  InequalitySDP again = conic_to_inequality(conic.sdp);
  auto via = ellipsoid_optimize(again, delta, 3);
  REQUIRE(direct.status == SolveStatus::kOptimal);
  REQUIRE(via.status == SolveStatus::kOptimal);
  CHECK(abs(direct.value - 1) <= delta);
  CHECK(abs(via.value + conic.sdp.objective_offset - 1) <= delta);
}

TEST_CASE("inequality_to_conic rejects dependent coefficients") {
  InequalitySDP s = toy_sdp();
  s.coefficients.push_back(s.coefficients[0]);
  s.objective.push_back(0);
  CHECK_THROWS_AS(inequality_to_conic(s), ContractViolation);
}

TEST_CASE("index map and folding examples") {
  IndexMap one = IndexMap::constant(2);
  RatVector x{2, 4};
  CHECK(almost_fold(x, one) == RatVector{6});
  CHECK(fold_vector(x, one) == RatVector{3});
  CHECK(unfold({3}, one) == RatVector{3, 3});

  IndexMap perm({2, 0, 1});
  CHECK(perm.injective());
  CHECK(perm.classes() == std::vector<std::size_t>{0, 1, 2});
  RatVector y{5, 6, 7};
  CHECK(unfold(fold_vector(y, perm), perm) == y);

  IndexMap m = IndexMap::constant(4);
  CHECK(m.agrees({1, 1, 1, 1}));
  CHECK_FALSE(m.agrees({1, 2, 1, 2}));
  CHECK(m.refine({1, 2, 1, 2}));
  CHECK(m.classes() == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK_FALSE(m.refine({3, 3, 3, 3}));
  CHECK(m.class_sizes() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("fold_vector preserves inner products with agreeing vectors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> cls(6);
    for (auto& c : cls) c = rng() % 3;
    IndexMap sigma(cls);
    RatVector c(sigma.num_classes()), x(6);
    for (auto& v : c) v = random_rational(rng, 5, 3);
    for (auto& v : x) v = random_rational(rng, 5, 3);
    RatVector cu = unfold(c, sigma);
    CHECK(dot(cu, x) == dot(c, almost_fold(x, sigma)));
    CHECK(sigma.agrees(cu));
  }
}

TEST_CASE("fold_psd_check examples") {
  RatMatrix f = fold_psd_check(RatMatrix::identity(2), IndexMap::constant(2));
  CHECK(f == RatMatrix::from_rows({{Rational(1, 2)}}));
  RatMatrix ones = RatMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(fold_psd_check(ones, IndexMap({0, 1, 0})) == RatMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK_THROWS_AS(fold_psd_check(RatMatrix::from_rows({{0, 1}, {1, 0}}), IndexMap::constant(2)), ContractViolation);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    RatMatrix g = random_gram(rng, 4, 3);
    std::vector<std::size_t> cls(4);
    for (auto& c : cls) c = rng() % 3;
    CHECK(psd_certificate(fold_psd_check(g, IndexMap(cls))).psd);
  }

  // Position maps must be tau x tau.
  CHECK(fold_psd_check_pairs(RatMatrix::identity(2), IndexMap::constant(4)) ==
        RatMatrix::from_rows({{Rational(1, 2)}}));
  CHECK(fold_psd_check_pairs(RatMatrix::identity(2), IndexMap({0, 1, 1, 2})) == RatMatrix::identity(2));
  CHECK_THROWS_AS(fold_psd_check_pairs(RatMatrix::identity(2), IndexMap({0, 1, 2, 0})), ContractViolation);
}

TEST_CASE("make_full_dimensional") {
  // 1 x 1 cone, objective 1, eps = 1 gives shift 1: x >= -1.
  ConicSDP c = no_rows(1);
  c.c = RatMatrix::from_rows({{1}});
  FullDimensionalSDP fd = make_full_dimensional(c, 1);
  CHECK(fd.shift == 1);
  CHECK(fd.sdp.feasible(RatMatrix::from_rows({{0}})));
  CHECK(fd.original_point(RatMatrix::from_rows({{0}})) == RatMatrix::from_rows({{-1}}));
  CHECK(fd.sdp.objective_offset == -1);

  InequalitySDP row;
  row.block_sizes = {1};
  row.coefficients = {{{0, 0, 0, 1}}};
  row.objective = {1};
  ShiftedSDP sh = make_full_dimensional(row, 1);
  CHECK(sh.shift == 1);
  CHECK(sh.sdp.blocks_at({-1})[0](0, 0) == 0);

  // Rows keep every original feasible point.
  ConicSDP r = no_rows(2);
  r.a = {RatMatrix::identity(2)};
  r.b = {1};
  r.c = RatMatrix::identity(2);
  FullDimensionalSDP fr = make_full_dimensional(r, Rational(1, 10));
  RatMatrix x = RatMatrix::from_rows({{Rational(1, 2), 0}, {0, Rational(1, 2)}});
  CHECK(r.feasible(x));
  CHECK(fr.sdp.feasible(x.shifted(fr.shift)));
}

TEST_CASE("ellipsoid on small problems") {
  Rational delta(1, 100);
  auto toy = ellipsoid_optimize(toy_sdp(), delta, 2);
  REQUIRE(toy.status == SolveStatus::kOptimal);
  CHECK(abs(toy.value - 1) <= delta);
  CHECK(toy.iterations <= toy.budget);
  CHECK_FALSE(toy.radius_guard);

  // zero objective over {X >= 0, x11 <= 1}
  ConicSDP c = no_rows(2);
  c.a = {RatMatrix::from_rows({{1, 0}, {0, 0}})};
  c.b = {1};
  auto zero = ellipsoid_optimize(conic_to_inequality(c), delta, 4);
  REQUIRE(zero.status == SolveStatus::kOptimal);
  CHECK(zero.value == 0);

  EllipsoidOptions eigen;
  eigen.strategy = SeparationStrategy::kEigen;
  auto toy_e = ellipsoid_optimize(toy_sdp(), delta, 2, eigen);
  REQUIRE(toy_e.status == SolveStatus::kOptimal);
  CHECK(abs(toy_e.value - 1) <= delta);

  InequalitySDP neg = toy_sdp();
  neg.objective = {-1};
  auto low = ellipsoid_optimize(neg, delta, 2);
  CHECK(abs(low.value - 1) <= delta);
}

TEST_CASE("ellipsoid keeps the feasible region above the objective floor") {
  // Sample feasible points of the toy problem and check containment.
  std::vector<RatVector> samples;
  for (int k = -10; k <= 10; ++k) samples.push_back({make_rational(k, 10)});
  EllipsoidOptions opts;
  bool contained = true;
  opts.on_step = [&](const EllipsoidState& s) {
    for (const auto& w : samples) {
      if (s.objective_floor && dot(RatVector{1}, w) < *s.objective_floor) continue;
      RatVector d{w[0] - s.center[0]};
      if (d[0] * d[0] > s.shape(0, 0)) contained = false;
    }
  };
  ellipsoid_optimize(toy_sdp(), Rational(1, 100), 2, opts);
  CHECK(contained);

  // Two variables, disc-like region [[1,x,y],[x,1,0],[y,0,1]] >= 0: x^2 + y^2 <= 1.
  InequalitySDP disc;
  disc.block_sizes = {3};
  disc.constant = {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}};
  disc.coefficients = {{{0, 0, 1, 1}}, {{0, 0, 2, 1}}};
  disc.objective = {1, 1};
  std::vector<RatVector> pts;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      if (i * i + j * j <= 16) pts.push_back({make_rational(i, 5), make_rational(j, 5)});
  opts.on_step = [&](const EllipsoidState& s) {
    auto adj = [&](const RatMatrix& a) {  // inverse of a 2 x 2 shape, times det
      return RatMatrix::from_rows({{a(1, 1), -a(0, 1)}, {-a(1, 0), a(0, 0)}});
    };
    RatMatrix inv = adj(s.shape);
    Rational det = determinant(s.shape);
    for (const auto& w : pts) {
      if (s.objective_floor && w[0] + w[1] < *s.objective_floor) continue;
      RatVector d{w[0] - s.center[0], w[1] - s.center[1]};
      if (quadratic_form(inv, d) > det) contained = false;
    }
  };
  auto r = ellipsoid_optimize(disc, Rational(1, 20), 2, opts);
  CHECK(contained);
  REQUIRE(r.status == SolveStatus::kOptimal);
  // max x + y on the unit disc is sqrt 2
  CHECK(r.value * r.value >= Rational(2) - Rational(1, 5));
  CHECK(r.value * r.value <= Rational(11, 5));  // the shift lets values run slightly past sqrt 2
}

TEST_CASE("ellipsoid reports empty regions and budget exhaustion") {
  InequalitySDP empty;
  empty.block_sizes = {1, 1};
  empty.constant = {{0, 0, 0, -1}, {1, 0, 0, 0}};
  empty.coefficients = {{{0, 0, 0, 1}, {1, 0, 0, -1}}};  // x >= 1 and -x >= 0
  empty.objective = {1};
  CHECK(ellipsoid_optimize(empty, Rational(1, 10), 4).status == SolveStatus::kEmpty);

  EllipsoidOptions tight;
  tight.max_iterations = 2;
  InequalitySDP disc;
  disc.block_sizes = {3};
  disc.constant = {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}};
  disc.coefficients = {{{0, 0, 1, 1}}, {{0, 0, 2, 1}}};
  disc.objective = {1, 1};
  CHECK_THROWS_AS(ellipsoid_optimize(disc, Rational(1, 100), 2, tight), BudgetExhausted);
  CHECK(default_iteration_budget(2, 2, Rational(1, 100)) > 2);

  InequalitySDP none;  // zero variables, Z = [1]
  none.block_sizes = {1};
  none.constant = {{0, 0, 0, 1}};
  auto r = ellipsoid_optimize(none, Rational(1, 10), 1);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.value == 0);
}

TEST_CASE("ellipsoid is deterministic") {
  auto a = ellipsoid_optimize(toy_sdp(), Rational(1, 50), 2);
  auto b = ellipsoid_optimize(toy_sdp(), Rational(1, 50), 2);
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("folded ellipsoid") {
  // Symmetric disc: objective x + y agrees with the constant map, and so
  // does every cut at points on the diagonal.
  InequalitySDP disc;
  disc.block_sizes = {3};
  disc.constant = {{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}};
  disc.coefficients = {{{0, 0, 1, 1}}, {{0, 0, 2, 1}}};
  disc.objective = {1, 1};
  Rational delta(1, 20);
  auto f = folded_optimize(disc, delta, 2);
  REQUIRE(f.status == SolveStatus::kOptimal);
  CHECK(f.final_classes == 1);
  CHECK(f.refinements == 0);
  CHECK(f.point[0] == f.point[1]);
  auto plain = ellipsoid_optimize(disc, delta, 2);
  CHECK(abs(f.value - plain.value) <= delta);

  // Asymmetric objective forces two classes from the start.
  disc.objective = {1, 2};
  auto g = folded_optimize(disc, delta, 2);
  CHECK(g.final_classes == 2);

  // Asymmetric region: x <= 1/2 as an extra row breaks the symmetry, so a
  // cut disagrees with the constant map and triggers a refinement.
  disc.objective = {1, 1};
  disc.block_sizes.push_back(1);
  disc.constant.push_back({1, 0, 0, Rational(1, 2)});
  disc.coefficients[0].push_back({1, 0, 0, -1});
  auto h = folded_optimize(disc, delta, 2);
  REQUIRE(h.status == SolveStatus::kOptimal);
  CHECK(h.refinements >= 1);
  CHECK(h.final_classes == 2);
  auto hp = ellipsoid_optimize(disc, delta, 2);
  CHECK(abs(h.value - hp.value) <= delta);
}

TEST_CASE("rounding") {
  CHECK(round_to_integer_optimum(Rational(9, 5), {1}) == 2);
  CHECK(round_to_integer_optimum(Rational(2), {1}) == 2);
  CHECK(round_to_integer_optimum(Rational(-1, 5), {1}) == 0);
  CHECK_THROWS_AS(round_to_integer_optimum(Rational(3, 2), {1}), ContractViolation);
  CHECK(rounding_delta({3, 4}) == Rational(1, 20));
  CHECK(rounding_delta({0}) == Rational(1, 4));
  CHECK(rounding_delta({1, 1}) == Rational(1, 8));  // ||c|| = sqrt 2 bounded by 2
}
