#include "lascap/exactlin.hpp"

#include <algorithm>
#include <utility>

namespace lascap {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  require(!divisor.is_zero(), "polynomial division by zero");
  std::vector<Rational> r = coeffs_;
  const auto& d = divisor.coeffs_;
  const std::size_t dn = d.size();
  while (r.size() >= dn) {
    if (sgn(r.back()) == 0) {
      r.pop_back();
      continue;
    }
    Rational f = r.back() / d.back();
    std::size_t shift = r.size() - dn;
    for (std::size_t i = 0; i < dn; ++i) r[shift + i] -= f * d[i];
    r.pop_back();
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

// ---------------------------------------------------------------------------
// PSD certificate
//
// Works on W = B^T M B, starting from B = I. Pivoting on a positive diagonal
// entry of W and clearing its row/column is a congruence, so W stays equal to
// B^T M B exactly and any negative diagonal entry W_ii hands back b_i as a
// witness. When every remaining diagonal is zero but W_ij != 0, the vector
// b_i - sign(W_ij) b_j has value -2|W_ij|.

PsdCertificate psd_certificate(const RatMatrix& m) {
  require(m.is_symmetric(), "psd_certificate: matrix is not symmetric");
  const std::size_t n = m.rows();
  RatMatrix w = m;
  RatMatrix basis = RatMatrix::identity(n);  // column i is b_i
  std::vector<bool> done(n, false);

  auto column = [&](std::size_t i) {
    RatVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = basis(k, i);
    return v;
  };

  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      int s = sgn(w(i, i));
      if (s < 0) return {false, column(i)};
      if (s > 0 && !pivot) pivot = i;
    }
    if (!pivot) {
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (done[j] || sgn(w(i, j)) == 0) continue;
          RatVector v = column(i);
          RatVector bj = column(j);
          int s = sgn(w(i, j));
          for (std::size_t k = 0; k < n; ++k) v[k] -= s * bj[k];
          return {false, std::move(v)};
        }
      }
      return {true, {}};
    }
    const std::size_t p = *pivot;
    done[p] = true;
    const Rational d = w(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(w(i, p)) == 0) continue;
      Rational f = w(i, p) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] && j != p) continue;
        if (sgn(w(p, j)) != 0) w(i, j) -= f * w(p, j);
      }
      for (std::size_t j = 0; j < n; ++j) w(j, i) = w(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(basis(k, p)) != 0) basis(k, i) -= f * basis(k, p);
    }
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Characteristic polynomial (Hessenberg reduction + recurrence)

Polynomial char_poly(const RatMatrix& m) {
  require(m.square(), "char_poly: matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix h = m;
  for (std::size_t k = 1; k + 1 < n + 1 && k < n; ++k) {
    std::size_t i = k;
    while (i < n && sgn(h(i, k - 1)) == 0) ++i;
    if (i == n) continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sgn(h(r, k - 1)) == 0) continue;
      Rational u = h(r, k - 1) / h(k, k - 1);
      for (std::size_t j = 0; j < n; ++j) h(r, j) -= u * h(k, j);
      for (std::size_t j = 0; j < n; ++j) h(j, k) += u * h(j, r);
    }
  }
  // p_0 = 1; p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
  std::vector<std::vector<Rational>> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t kk = k - 1;
    std::vector<Rational> next(k + 1);
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      next[d + 1] += p[k - 1][d];
      next[d] -= h(kk, kk) * p[k - 1][d];
    }
    Rational prod = 1;
    for (std::size_t i = kk; i-- > 0;) {
      prod *= h(i + 1, i);
      if (sgn(prod) == 0) break;
      Rational f = h(i, kk) * prod;
      if (sgn(f) == 0) continue;
      for (std::size_t d = 0; d < p[i].size(); ++d) next[d] -= f * p[i][d];
    }
    p[k] = std::move(next);
  }
  return Polynomial(p[n]);
}

// ---------------------------------------------------------------------------
// Sturm sequences and eigenvalue isolation

namespace {

Polynomial unit_leading(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational s = abs(p.leading());
  std::vector<Rational> c = p.coefficients();
  for (auto& x : c) x /= s;
  return Polynomial(std::move(c));
}

}  // namespace

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(unit_leading(p));
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(unit_leading(d));
  while (true) {
    Polynomial r = chain[chain.size() - 2].remainder(chain.back());
    if (r.is_zero()) break;
    chain.push_back(unit_leading(-r));
  }
  return chain;
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational min_eigenvalue_approx(const RatMatrix& m, const Rational& precision) {
  require(m.is_symmetric(), "min_eigenvalue_approx: matrix is not symmetric");
  require(precision > 0, "min_eigenvalue_approx: precision must be positive");
  require(m.rows() > 0, "min_eigenvalue_approx: empty matrix");
  // Every eigenvalue lies within the max absolute row sum.
  Rational bound = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(i, j));
    if (s > bound) bound = s;
  }
  bound += 1;
  const auto chain = sturm_chain(char_poly(m));
  // Invariant: no root in (-inf, lo], at least one root in (lo, hi].
  Rational lo = -bound;
  Rational hi = bound;
  int changes_lo = sign_changes(chain, lo);
  const Rational width = 2 * precision;
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int changes_mid = sign_changes(chain, mid);
    if (changes_lo - changes_mid >= 1) {
      hi = mid;
    } else {
      lo = mid;
      changes_lo = changes_mid;
    }
  }
  return (lo + hi) / 2;
}

namespace {

// Scale u (max |entry| = 1) by r = floor(10^k / ||u||) / 10^k, with k the
// smallest exponent that keeps ||r u||^2 within [1/4, 1].
RatVector near_unit(RatVector u) {
  Rational n2 = norm2_squared(u);
  Integer ten_k = 10;
  while (n2 > make_rational(ten_k * ten_k, 4)) ten_k *= 10;
  Integer root;
  Integer radicand = floor_of(Rational(ten_k * ten_k) / n2);
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  Rational r = make_rational(root, ten_k);
  for (auto& x : u) x *= r;
  return u;
}

// Max |entry| = 1 and first nonzero entry positive.
RatVector normalize_inf(RatVector v) {
  Rational m = max_abs(v);
  for (const auto& x : v)
    if (sgn(x) != 0) {
      if (sgn(x) < 0) m = -m;
      break;
    }
  for (auto& x : v) x /= m;
  return v;
}

bool residual_ok(const RatMatrix& shifted, const RatVector& v, const Rational& delta) {
  Rational n2 = norm2_squared(v);
  if (n2 < Rational(1, 4) || n2 > 4) return false;
  return norm2_squared(shifted * v) < delta * delta / 4;
}

}  // namespace

RatVector approx_eigenvector(const RatMatrix& m, const Rational& lambda, const Rational& delta) {
  require(m.is_symmetric(), "approx_eigenvector: matrix is not symmetric");
  require(delta > 0, "approx_eigenvector: delta must be positive");
  const std::size_t n = m.rows();
  require(n > 0, "approx_eigenvector: empty matrix");
  const RatMatrix shifted = m.shifted(-lambda);

  auto kernel = null_space(shifted);
  if (!kernel.empty()) {
    RatVector v = near_unit(normalize_inf(kernel.front()));
    if (residual_ok(shifted, v, delta)) return v;
  }

  // Rounding grid fine enough that rounding moves the residual by far less
  // than delta.
  Rational scale = (shifted.max_abs_entry() + 1) * static_cast<unsigned long>(n) / delta;
  unsigned bits = 64 + static_cast<unsigned>(mpz_sizeinbase(ceil_of(scale).get_mpz_t(), 2));

  std::vector<RatVector> starts;
  starts.emplace_back(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    starts.push_back(std::move(e));
  }
  constexpr int kMaxIterations = 64;
  for (const auto& start : starts) {
    RatVector v = start;
    for (int it = 0; it < kMaxIterations; ++it) {
      RatVector w;
      if (!solve_linear(shifted, v, w)) break;
      if (sgn(max_abs(w)) == 0) break;
      w = normalize_inf(std::move(w));
      for (auto& x : w) x = round_dyadic(x, bits);
      if (sgn(max_abs(w)) == 0) break;
      v = normalize_inf(std::move(w));
      RatVector candidate = near_unit(v);
      if (residual_ok(shifted, candidate, delta)) return candidate;
    }
  }
  throw ContractViolation("approx_eigenvector: residual search exhausted (lambda not within delta/4 of an eigenvalue)");
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1)) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  Rational& obj(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c)
      if (sgn(at(pr, c)) != 0) at(pr, c) *= inv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      Rational f = at(r, pc);
      for (std::size_t c = 0; c <= cols_; ++c)
        if (sgn(at(pr, c)) != 0) at(r, c) -= f * at(pr, c);
    }
  }

  void drop_row(std::size_t r) {
    std::vector<Rational> next;
    next.reserve(rows_ * (cols_ + 1));
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      for (std::size_t c = 0; c <= cols_; ++c) next.push_back(std::move(at(i, c)));
    }
    t_ = std::move(next);
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> t_;
};

// Maximizes the objective row (entries are -reduced costs) over columns
// [0, active_cols). Returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t active_cols) {
  while (true) {
    std::optional<std::size_t> enter;
    for (std::size_t c = 0; c < active_cols; ++c)
      if (sgn(t.obj(c)) < 0) {
        enter = c;
        break;
      }
    if (!enter) return true;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (sgn(t.at(r, *enter)) <= 0) continue;
      Rational ratio = t.rhs(r) / t.at(r, *enter);
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[*leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (!leave) return false;
    t.pivot(*leave, *enter);
    basis[*leave] = *enter;
  }
}

}  // namespace

LpResult lp_optimize(const RatMatrix& a, const RatVector& b, const RatVector& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  require(b.size() == m && c.size() == n, "lp_optimize: dimension mismatch");

  // Columns: x+ (n), x- (n), surplus (m), artificial (m).
  const std::size_t art0 = 2 * n + m;
  const std::size_t total = art0 + m;
  Tableau t(m, total);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const int flip = sgn(b[r]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(r, j) = a(r, j) * flip;
      t.at(r, n + j) = -a(r, j) * flip;
    }
    t.at(r, 2 * n + r) = -flip;
    t.at(r, art0 + r) = 1;
    t.rhs(r) = b[r] * flip;
    basis[r] = art0 + r;
  }
  // Phase 1: maximize -sum(artificial).
  for (std::size_t col = 0; col <= total; ++col) {
    Rational s = 0;
    for (std::size_t r = 0; r < m; ++r) s += t.at(r, col);
    t.obj(col) = col >= art0 && col < total ? Rational(0) : Rational(-s);
  }
  run_simplex(t, basis, total);
  if (sgn(t.obj(total)) != 0) return {LpStatus::kInfeasible, {}, 0};

  // Drive zero-level artificials out of the basis, dropping redundant rows.
  for (std::size_t r = 0; r < t.rows();) {
    if (basis[r] < art0) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < art0; ++j)
      if (sgn(t.at(r, j)) != 0) {
        col = j;
        break;
      }
    if (col) {
      t.pivot(r, *col);
      basis[r] = *col;
      ++r;
    } else {
      t.drop_row(r);
      basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  // Phase 2 over the non-artificial columns.
  for (std::size_t col = 0; col <= total; ++col) t.obj(col) = 0;
  for (std::size_t j = 0; j < n; ++j) {
    t.obj(j) = -c[j];
    t.obj(n + j) = c[j];
  }
  for (std::size_t r = 0; r < t.rows(); ++r) {
    Rational f = t.obj(basis[r]);
    if (sgn(f) == 0) continue;
    for (std::size_t col = 0; col <= total; ++col)
      if (sgn(t.at(r, col)) != 0) t.obj(col) -= f * t.at(r, col);
  }
  if (!run_simplex(t, basis, art0)) return {LpStatus::kUnbounded, {}, 0};

  RatVector x(n);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (basis[r] < n)
      x[basis[r]] += t.rhs(r);
    else if (basis[r] < 2 * n)
      x[basis[r] - n] -= t.rhs(r);
  }
  Rational value = dot(c, x);
  return {LpStatus::kOptimal, std::move(x), std::move(value)};
}

}  // namespace lascap
