#include "lascap/sdp_forms.hpp"

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"

namespace lascap {

std::size_t InequalitySDP::dimension() const {
  std::size_t d = 0;
  for (auto s : block_sizes) d += s;
  return d;
}

void InequalitySDP::validate() const {
  require(objective.size() == coefficients.size(), "InequalitySDP: objective length differs from variable count");
  auto check = [&](const std::vector<SymEntry>& entries) {
    for (const auto& e : entries) {
      require(e.block < block_sizes.size(), "InequalitySDP: entry refers to an unknown block");
      require(e.i <= e.j && e.j < block_sizes[e.block], "InequalitySDP: entry outside its block");
    }
  };
  check(constant);
  for (const auto& y : coefficients) check(y);
}

namespace {

void scatter(std::vector<RatMatrix>& blocks, const std::vector<SymEntry>& entries, const Rational& scale) {
  for (const auto& e : entries) {
    Rational v = e.value * scale;
    blocks[e.block](e.i, e.j) += v;
    if (e.i != e.j) blocks[e.block](e.j, e.i) += v;
  }
}

RatMatrix to_dense(const InequalitySDP& sdp, const std::vector<SymEntry>& entries) {
  std::vector<std::size_t> offset(sdp.block_sizes.size());
  std::size_t acc = 0;
  for (std::size_t k = 0; k < offset.size(); ++k) {
    offset[k] = acc;
    acc += sdp.block_sizes[k];
  }
  RatMatrix m(acc, acc);
  for (const auto& e : entries) {
    m(offset[e.block] + e.i, offset[e.block] + e.j) += e.value;
    if (e.i != e.j) m(offset[e.block] + e.j, offset[e.block] + e.i) += e.value;
  }
  return m;
}

}  // namespace

std::vector<RatMatrix> InequalitySDP::blocks_at(const RatVector& x) const {
  require(x.size() == num_vars(), "InequalitySDP::blocks_at: wrong point dimension");
  std::vector<RatMatrix> blocks;
  blocks.reserve(block_sizes.size());
  for (auto s : block_sizes) blocks.emplace_back(s, s);
  scatter(blocks, constant, 1);
  for (std::size_t v = 0; v < x.size(); ++v)
    if (sgn(x[v]) != 0) scatter(blocks, coefficients[v], x[v]);
  return blocks;
}

RatMatrix InequalitySDP::dense_constant() const { return to_dense(*this, constant); }
RatMatrix InequalitySDP::dense_coefficient(std::size_t v) const { return to_dense(*this, coefficients.at(v)); }

Rational InequalitySDP::coefficient_norm2(std::size_t v) const {
  RatMatrix y = dense_coefficient(v);
  return frobenius(y, y);
}

void ConicSDP::validate() const {
  require(a.size() == b.size(), "ConicSDP: row count mismatch");
  require(c.rows() == n && c.cols() == n && c.is_symmetric(), "ConicSDP: objective must be symmetric n x n");
  for (const auto& ai : a)
    require(ai.rows() == n && ai.cols() == n && ai.is_symmetric(), "ConicSDP: rows must be symmetric n x n");
}

bool ConicSDP::feasible(const RatMatrix& x) const {
  if (x.rows() != n || x.cols() != n || !x.is_symmetric()) return false;
  for (std::size_t r = 0; r < a.size(); ++r)
    if (frobenius(a[r], x) > b[r]) return false;
  return psd_certificate(x).psd;
}

RatVector sym_to_vector(const RatMatrix& x) {
  require(x.is_symmetric(), "sym_to_vector: matrix is not symmetric");
  RatVector v;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = i; j < x.cols(); ++j) v.push_back(x(i, j));
  return v;
}

RatMatrix vector_to_sym(const RatVector& v, std::size_t n) {
  require(v.size() == n * (n + 1) / 2, "vector_to_sym: wrong length");
  RatMatrix x(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j, ++k) x(i, j) = x(j, i) = v[k];
  return x;
}

InequalitySDP conic_to_inequality(const ConicSDP& sdp) {
  sdp.validate();
  const std::size_t n = sdp.n;
  InequalitySDP out;
  out.block_sizes.push_back(n);
  for (std::size_t r = 0; r < sdp.num_rows(); ++r) {
    out.block_sizes.push_back(1);
    if (sgn(sdp.b[r]) != 0) out.constant.push_back({r + 1, 0, 0, sdp.b[r]});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<SymEntry> y{{0, i, j, 1}};
      for (std::size_t r = 0; r < sdp.num_rows(); ++r) {
        Rational coef = i == j ? sdp.a[r](i, i) : Rational(sdp.a[r](i, j) + sdp.a[r](j, i));
        if (sgn(coef) != 0) y.push_back({r + 1, 0, 0, -coef});
      }
      out.coefficients.push_back(std::move(y));
      out.objective.push_back(i == j ? sdp.c(i, i) : Rational(sdp.c(i, j) + sdp.c(j, i)));
    }
  return out;
}

InequalityAsConic inequality_to_conic(const InequalitySDP& sdp) {
  sdp.validate();
  const std::size_t m = sdp.dimension();
  const std::size_t nv = sdp.num_vars();
  const std::size_t tri = m * (m + 1) / 2;

  std::vector<RatMatrix> ys;
  for (std::size_t v = 0; v < nv; ++v) ys.push_back(sdp.dense_coefficient(v));

  // Gram matrix of the Y_v; its inverse yields the dual basis.
  RatMatrix gram(nv, nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = v; w < nv; ++w) gram(v, w) = gram(w, v) = frobenius(ys[v], ys[w]);
  std::vector<RatMatrix> dual(nv, RatMatrix(m, m));
  for (std::size_t v = 0; v < nv; ++v) {
    RatVector e(nv), coef;
    e[v] = 1;
    if (!solve_linear(gram, e, coef)) throw ContractViolation("inequality_to_conic: coefficient matrices are linearly dependent");
    for (std::size_t w = 0; w < nv; ++w)
      if (sgn(coef[w]) != 0) dual[v] = dual[v] + ys[w] * coef[w];
  }

  // Symmetric N orthogonal to every Y_v: <N,Y> = sum_i N_ii Y_ii + 2 sum_{i<j} N_ij Y_ij.
  RatMatrix rows(nv, tri);
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j, ++k) rows(v, k) = i == j ? ys[v](i, i) : Rational(2 * ys[v](i, j));
  }

  InequalityAsConic out;
  out.z = sdp.dense_constant();
  out.recover = dual;
  ConicSDP& c = out.sdp;
  c.n = m;
  c.c = RatMatrix(m, m);
  for (std::size_t v = 0; v < nv; ++v)
    if (sgn(sdp.objective[v]) != 0) c.c = c.c + dual[v] * sdp.objective[v];
  c.objective_offset = -frobenius(c.c, out.z);
  for (const auto& nvec : null_space(rows)) {
    RatMatrix nm = vector_to_sym(nvec, m);
    Rational r = frobenius(nm, out.z);
    c.a.push_back(nm);
    c.b.push_back(r);
    c.a.push_back(nm * Rational(-1));
    c.b.push_back(-r);
  }
  return out;
}

RatVector InequalityAsConic::variables_of(const RatMatrix& x) const {
  RatMatrix d = x - z;
  RatVector out;
  for (const auto& g : recover) out.push_back(frobenius(g, d));
  return out;
}

}  // namespace lascap
