#include <map>

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/sdpsolve.hpp"

namespace lascap {

namespace {

RatMatrix rescale_inf(const RatMatrix& s) {
  Rational m = s.max_abs_entry();
  return s * (1 / m);
}

}  // namespace

Integer norm_bound(const RatVector& v) {
  Integer bound = ceil_sqrt(ceil_of(norm2_squared(v)));
  return bound < 1 ? Integer(1) : bound;
}

SeparationResult weak_separation(const ConicSDP& sdp, const RatMatrix& y, const Rational& delta) {
  sdp.validate();
  require(delta > 0, "weak_separation: delta must be positive");
  require(y.rows() == sdp.n && y.is_symmetric(), "weak_separation: Y must be symmetric n x n");

  RatMatrix sum(sdp.n, sdp.n);
  std::optional<std::size_t> first_violated;
  for (std::size_t i = 0; i < sdp.num_rows(); ++i)
    if (frobenius(sdp.a[i], y) > sdp.b[i]) {
      sum = sum + sdp.a[i];
      if (!first_violated) first_violated = i;
    }
  if (first_violated) {
    if (sgn(sum.max_abs_entry()) != 0) return {false, rescale_inf(sum)};
    // Violated rows cancel: sum b_i < 0 = <0,Y>, so F is empty; any unit
    // matrix separates, the first violated row included when nonzero.
    const RatMatrix& a = sdp.a[*first_violated];
    if (sgn(a.max_abs_entry()) != 0) return {false, rescale_inf(a)};
    RatMatrix e(sdp.n, sdp.n);
    e(0, 0) = 1;
    return {false, e};
  }
  if (sdp.n == 0) return {true, {}};

  // Internal tolerance delta/(8n) keeps <S,Y> < delta * max_i v_i^2 after the
  // infinity-norm rescaling, given ||v||^2 in [1/4, 4].
  const Rational inner = delta / (8 * static_cast<unsigned long>(sdp.n));
  Rational lambda = min_eigenvalue_approx(y, inner / 4);
  if (lambda >= inner / 2) return {true, {}};
  RatVector v = approx_eigenvector(y, lambda, inner);
  Rational m = 0;
  for (const auto& x : v)
    if (x * x > m) m = x * x;
  return {false, outer(v, v) * (-1 / m)};
}

namespace {

// Cut from a witness v of one block: g_w = v^T Y_w v, beta = tau |v|^2 - v^T Z v.
Cut witness_cut(const InequalitySDP& sdp, std::size_t block, const RatVector& v, const Rational& tau) {
  Cut cut{RatVector(sdp.num_vars()), tau * norm2_squared(v)};
  for (const auto& e : sdp.constant)
    if (e.block == block) cut.beta -= (e.i == e.j ? 1 : 2) * e.value * v[e.i] * v[e.j];
  for (std::size_t w = 0; w < sdp.num_vars(); ++w)
    for (const auto& e : sdp.coefficients[w])
      if (e.block == block) cut.g[w] += (e.i == e.j ? 1 : 2) * e.value * v[e.i] * v[e.j];
  return cut;
}

}  // namespace

std::optional<Cut> separate(const InequalitySDP& sdp, const RatVector& x, const Rational& theta,
                            SeparationStrategy strategy) {
  require(theta > 0, "separate: tolerance must be positive");
  const std::vector<RatMatrix> blocks = sdp.blocks_at(x);
  const Rational half = theta / 2;

  // Linear rows first, aggregated by summation.
  std::vector<std::size_t> violated;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (blocks[k].rows() == 1 && blocks[k](0, 0) < half) violated.push_back(k);
  if (!violated.empty()) {
    Cut total{RatVector(sdp.num_vars()), 0};
    for (auto k : violated) {
      Cut c = witness_cut(sdp, k, {Rational(1)}, half);
      for (std::size_t w = 0; w < total.g.size(); ++w) total.g[w] += c.g[w];
      total.beta += c.beta;
    }
    return total;
  }

  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const RatMatrix& b = blocks[k];
    if (b.rows() <= 1) continue;
    if (strategy == SeparationStrategy::kPivotWitness) {
      // Cheap necessary condition: every diagonal entry must clear the bar.
      for (std::size_t i = 0; i < b.rows(); ++i)
        if (b(i, i) < half) {
          RatVector e(b.rows());
          e[i] = 1;
          return witness_cut(sdp, k, e, half);
        }
      PsdCertificate cert = psd_certificate(b.shifted(-half));
      if (!cert.psd) return witness_cut(sdp, k, cert.witness, half);
      continue;
    }
    Rational lambda = min_eigenvalue_approx(b, theta / 4);
    if (lambda >= half) continue;
    RatVector v = approx_eigenvector(b, lambda, theta);
    // Deepest valid cut: at least as deep as the central cut through x.
    Cut cut = witness_cut(sdp, k, v, half);
    Rational at_center = dot(cut.g, x);
    if (cut.beta < at_center) cut.beta = at_center;
    return cut;
  }
  return std::nullopt;
}

FullDimensionalSDP make_full_dimensional(const ConicSDP& sdp, const Rational& eps) {
  sdp.validate();
  require(eps > 0, "make_full_dimensional: eps must be positive");
  auto matrix_norm_bound = [](const RatMatrix& m) {
    Integer b = ceil_sqrt(ceil_of(frobenius(m, m)));
    return b < 1 ? Integer(1) : b;
  };
  const Integer cn = matrix_norm_bound(sdp.c);
  FullDimensionalSDP out;
  out.shift = eps / Rational(ceil_sqrt(std::max<std::size_t>(sdp.n, 1)) * cn);
  out.sdp = sdp;
  // X = X' - shift I: <A,X> = <A,X'> - shift tr(A).
  for (std::size_t i = 0; i < sdp.num_rows(); ++i) {
    Rational relax = eps / Rational(matrix_norm_bound(sdp.a[i]) * cn);
    out.row_relaxation.push_back(relax);
    out.sdp.b[i] = sdp.b[i] + relax + out.shift * sdp.a[i].trace();
  }
  out.sdp.objective_offset = sdp.objective_offset - out.shift * sdp.c.trace();
  return out;
}

ShiftedSDP make_full_dimensional(const InequalitySDP& sdp, const Rational& eps) {
  sdp.validate();
  require(eps > 0, "make_full_dimensional: eps must be positive");
  ShiftedSDP out{sdp, eps / Rational(ceil_sqrt(std::max<std::size_t>(sdp.dimension(), 1)) * norm_bound(sdp.objective))};
  // Merge the shift into existing diagonal constant entries.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> diag;
  for (std::size_t k = 0; k < out.sdp.constant.size(); ++k) {
    const auto& e = out.sdp.constant[k];
    if (e.i == e.j) diag[{e.block, e.i}] = k;
  }
  for (std::size_t blk = 0; blk < sdp.block_sizes.size(); ++blk)
    for (std::size_t i = 0; i < sdp.block_sizes[blk]; ++i) {
      auto it = diag.find({blk, i});
      if (it != diag.end())
        out.sdp.constant[it->second].value += out.shift;
      else
        out.sdp.constant.push_back({blk, i, i, out.shift});
    }
  return out;
}

}  // namespace lascap
