#include <cmath>

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/sdpsolve.hpp"

namespace lascap {

namespace {

long log2_estimate(const Rational& q) {
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

// sqrt(q) rounded up, relative error about 2^-bits.
Rational sqrt_relative_upper(const Rational& q, unsigned bits) {
  long extra = std::max(0L, -log2_estimate(q) / 2 + 2);
  return sqrt_upper(q, bits + static_cast<unsigned>(extra));
}

Integer pow2(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// det(A) when A is positive definite, by exact symmetric elimination.
std::optional<Rational> positive_definite_det(RatMatrix a) {
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) <= 0) return std::nullopt;
    det *= a(k, k);
    // Only the upper triangle is kept current.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(k, i)) == 0) continue;
      Rational f = a(k, i) / a(k, k);
      for (std::size_t j = i; j < n; ++j)
        if (sgn(a(k, j)) != 0) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

enum class OracleKind { kAccept, kCut, kRestart };

struct OracleAnswer {
  OracleKind kind = OracleKind::kAccept;
  Cut cut;
  RatVector full_point;  // accepted point in the original coordinates
};

struct CoreParams {
  RatVector objective;
  Rational kappa;
  Rational radius;
  Rational volume_radius;  // 0 disables the volume certificate
  unsigned bits = 64;
  std::uint64_t budget = 0;
};

struct Incumbent {
  std::optional<RatVector> point;
  Rational value;
  bool radius_guard = false;
};

enum class CoreOutcome { kFinished, kRestart };

// One sliding-objective run. Returns kFinished when a certificate closes the
// search (optimality if the incumbent is set, emptiness otherwise).
CoreOutcome run_core(const CoreParams& prm, const std::function<OracleAnswer(const RatVector&)>& oracle,
                     const std::function<void(const EllipsoidState&)>& on_step, Incumbent& best,
                     std::uint64_t& iterations) {
  const std::size_t n = prm.objective.size();
  const Rational inflate = 1 + Rational(1) / Rational(pow2((prm.bits + 1) / 2));
  RatVector x(n);
  RatMatrix a = RatMatrix::identity(n) * (prm.radius * prm.radius);
  Rational lo = -prm.radius, hi = prm.radius;  // n == 1
  const Rational volume_bound = [&] {
    Rational r2 = prm.volume_radius * prm.volume_radius;
    Rational v = 1;
    for (std::size_t i = 0; i < n; ++i) v *= r2;
    return v;
  }();

  auto report = [&]() {
    if (!on_step) return;
    EllipsoidState s;
    s.center = x;
    s.shape = a;
    s.iteration = iterations;
    s.best_point = best.point;
    s.best_value = best.value;
    if (best.point) s.objective_floor = best.value + prm.kappa;
    on_step(s);
  };

  while (true) {
    if (iterations >= prm.budget)
      throw BudgetExhausted("ellipsoid: iteration budget of " + std::to_string(prm.budget) + " exhausted");
    ++iterations;

    Cut cut;
    OracleAnswer ans = oracle(x);
    if (ans.kind == OracleKind::kRestart) return CoreOutcome::kRestart;
    if (ans.kind == OracleKind::kAccept) {
      Rational value = dot(prm.objective, x);
      if (!best.point || value > best.value) {
        best.point = ans.full_point;
        best.value = value;
        if (norm2_squared(ans.full_point) > prm.radius * prm.radius) best.radius_guard = true;
      }
      cut = {prm.objective, best.value + prm.kappa};
    } else {
      cut = std::move(ans.cut);
    }

    if (n == 1) {
      const Rational& g = cut.g[0];
      if (sgn(g) == 0) return CoreOutcome::kFinished;
      Rational bound = cut.beta / g;
      if (sgn(g) > 0 && bound > lo) lo = bound;
      if (sgn(g) < 0 && bound < hi) hi = bound;
      if (lo > hi || hi - lo < 2 * prm.volume_radius) return CoreOutcome::kFinished;
      x[0] = (lo + hi) / 2;
      a(0, 0) = (hi - lo) * (hi - lo) / 4;
      report();
      continue;
    }

    RatVector ag = a * cut.g;
    Rational q = dot(cut.g, ag);
    if (sgn(q) == 0) return CoreOutcome::kFinished;  // g = 0: the kept half-space is empty
    Rational gamma = sqrt_relative_upper(q, prm.bits);
    Rational alpha = (cut.beta - dot(cut.g, x)) / gamma;
    if (alpha >= 1) return CoreOutcome::kFinished;
    if (alpha < 0) alpha = 0;  // shallow answers degrade to a central cut

    const Rational nn(static_cast<unsigned long>(n));
    Rational step = (1 + nn * alpha) / ((nn + 1) * gamma);
    for (std::size_t i = 0; i < n; ++i) x[i] = round_dyadic(x[i] + step * ag[i], prm.bits);
    Rational scale = nn * nn / (nn * nn - 1) * (1 - alpha * alpha);
    Rational shrink = 2 * (1 + nn * alpha) / ((nn + 1) * (1 + alpha) * q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rational v = round_dyadic(scale * (a(i, j) - shrink * ag[i] * ag[j]), prm.bits) * inflate;
        a(i, j) = v;
        a(j, i) = v;
      }
    std::optional<Rational> det = positive_definite_det(a);
    if (!det) throw std::logic_error("ellipsoid: shape matrix lost positive definiteness");
    report();
    if (sgn(prm.volume_radius) > 0 && *det < volume_bound) return CoreOutcome::kFinished;
  }
}

struct Setup {
  InequalitySDP shifted;
  Rational eta;
  Rational theta;
  CoreParams core;
};

Setup prepare(const InequalitySDP& sdp, const Rational& delta, const Rational& radius, const EllipsoidOptions& options) {
  sdp.validate();
  require(delta > 0, "ellipsoid: delta must be positive");
  require(radius > 0, "ellipsoid: radius must be positive");
  Setup s;
  const std::size_t n = sdp.num_vars();
  const Integer cn = norm_bound(sdp.objective);
  const Rational spec_tolerance = delta / (8 * Rational(cn) * (1 + radius));
  if (options.full_dimensional_shift) {
    ShiftedSDP sh = make_full_dimensional(sdp, delta / 2);
    s.shifted = std::move(sh.sdp);
    s.eta = sh.shift;
    s.theta = std::min(spec_tolerance, Rational(s.eta / 2));
  } else {
    s.shifted = sdp;
    s.eta = 0;
    s.theta = spec_tolerance;
  }
  s.core.objective = sdp.objective;
  s.core.kappa = delta / 4;
  s.core.radius = radius;
  if (sgn(s.eta) > 0) {
    Rational ysum = 0;
    for (std::size_t v = 0; v < n; ++v) ysum += sdp.coefficient_norm2(v);
    Integer k = ceil_sqrt(ceil_of(ysum));
    if (k < 1) k = 1;
    Rational r1 = (s.eta - 3 * s.theta / 2) / Rational(k);
    Rational r2 = s.core.kappa / Rational(cn);
    s.core.volume_radius = std::min(r1, r2);
  }
  double ratio = std::max(1.0, static_cast<double>(n) * radius.get_d() / delta.get_d());
  s.core.bits = std::max(64u, static_cast<unsigned>(std::ceil(8 * std::log2(ratio))));
  s.core.budget = options.max_iterations ? *options.max_iterations : default_iteration_budget(n, radius, delta);
  return s;
}

EllipsoidResult finish(const Setup& s, const Incumbent& best, std::uint64_t iterations) {
  EllipsoidResult r;
  r.status = best.point ? SolveStatus::kOptimal : SolveStatus::kEmpty;
  if (best.point) {
    r.point = *best.point;
    r.value = best.value;
  }
  r.iterations = iterations;
  r.budget = s.core.budget;
  r.shift = s.eta;
  r.tolerance = s.theta;
  r.radius_guard = best.radius_guard;
  return r;
}

}  // namespace

std::uint64_t default_iteration_budget(std::size_t n, const Rational& radius, const Rational& delta) {
  double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  double arg = std::max(4 * radius.get_d() * nn / delta.get_d(), 1.0);
  return static_cast<std::uint64_t>(std::ceil(8 * nn * nn * std::log(arg))) + 64;
}

EllipsoidResult ellipsoid_optimize(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                   const EllipsoidOptions& options) {
  Setup s = prepare(sdp, delta, radius, options);
  Incumbent best;
  std::uint64_t iterations = 0;
  if (sdp.num_vars() == 0) {
    if (!separate(s.shifted, {}, s.theta, options.strategy)) {
      best.point = RatVector{};
      best.value = 0;
    }
    return finish(s, best, 1);
  }
  auto oracle = [&](const RatVector& x) {
    OracleAnswer ans;
    std::optional<Cut> cut = separate(s.shifted, x, s.theta, options.strategy);
    if (cut) {
      ans.kind = OracleKind::kCut;
      ans.cut = std::move(*cut);
    } else {
      ans.full_point = x;
    }
    return ans;
  };
  run_core(s.core, oracle, options.on_step, best, iterations);
  return finish(s, best, iterations);
}

EllipsoidResult folded_optimize(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                const EllipsoidOptions& options, std::optional<IndexMap> initial) {
  const std::size_t n = sdp.num_vars();
  IndexMap sigma = initial ? *initial : IndexMap::constant(n);
  require(sigma.source_size() == n, "folded_optimize: index map does not cover the variables");
  sigma.refine(sdp.objective);  // c must agree with sigma

  Setup s = prepare(sdp, delta, radius, options);
  Incumbent best;
  std::uint64_t iterations = 0;
  std::size_t refinements = 0;
  bool fallback = n == 0;

  while (!fallback) {
    CoreParams folded = s.core;
    folded.objective = almost_fold(sdp.objective, sigma);
    // A ball of radius r around a folded point unfolds into a ball of radius
    // r * sqrt(max class size); shrink the certificate radius accordingly.
    std::size_t largest = 1;
    for (auto c : sigma.class_sizes()) largest = std::max(largest, c);
    folded.volume_radius = s.core.volume_radius / Rational(ceil_sqrt(Integer(static_cast<unsigned long>(largest))));
    auto oracle = [&](const RatVector& xh) {
      OracleAnswer ans;
      RatVector x = unfold(xh, sigma);
      std::optional<Cut> cut = separate(s.shifted, x, s.theta, options.strategy);
      if (!cut) {
        ans.full_point = std::move(x);
        return ans;
      }
      // Pivot witnesses ignore symmetry; an eigenvector cut often agrees.
      if (!sigma.agrees(cut->g) && options.strategy != SeparationStrategy::kEigen) {
        std::optional<Cut> alt = separate(s.shifted, x, s.theta, SeparationStrategy::kEigen);
        if (!alt) {
          ans.full_point = std::move(x);
          return ans;
        }
        cut = std::move(alt);
      }
      if (!sigma.agrees(cut->g)) {
        sigma.refine(cut->g);
        ans.kind = OracleKind::kRestart;
        return ans;
      }
      ans.kind = OracleKind::kCut;
      ans.cut = {almost_fold(cut->g, sigma), cut->beta};
      return ans;
    };
    try {
      CoreOutcome outcome = run_core(folded, oracle, options.on_step, best, iterations);
      if (outcome == CoreOutcome::kRestart) {
        ++refinements;
        continue;
      }
      if (!best.point) fallback = true;
      break;
    } catch (const BudgetExhausted&) {
      fallback = true;
    }
  }

  if (fallback) {
    EllipsoidResult r = ellipsoid_optimize(sdp, delta, radius, options);
    // Keep the better of the folded incumbent and the plain answer.
    if (best.point && (r.status == SolveStatus::kEmpty || best.value > r.value)) {
      r.status = SolveStatus::kOptimal;
      r.value = best.value;
      r.point = *best.point;
    }
    r.iterations += iterations;
    r.refinements = refinements;
    r.final_classes = n;
    return r;
  }
  EllipsoidResult r = finish(s, best, iterations);
  r.refinements = refinements;
  r.final_classes = sigma.num_classes();
  return r;
}

Integer round_to_integer_optimum(const Rational& s, const RatVector& /*c*/) {
  Rational twice = 2 * s;
  if (twice.get_den() == 1 && twice.get_num() % 2 != 0)
    throw ContractViolation("round_to_integer_optimum: value is an exact half-integer");
  return round_nearest(s);
}

Rational rounding_delta(const RatVector& c) { return Rational(1) / (4 * Rational(norm_bound(c))); }

}  // namespace lascap
