#include "lascap/lasserre.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "lascap/errors.hpp"

namespace lascap {

namespace {

void combinations(std::size_t n, std::size_t size, std::size_t start, Subset acc, std::vector<Subset>& out) {
  if (size == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t v = start; v + size <= n; ++v) combinations(n, size - 1, v + 1, acc | (Subset{1} << v), out);
}

}  // namespace

SubsetIndex::SubsetIndex(std::size_t num_vars, std::size_t k) : num_vars_(num_vars), bound_(std::min(k, num_vars)) {
  require(num_vars <= 64, "SubsetIndex: at most 64 variables");
  for (std::size_t size = 0; size <= bound_; ++size) combinations(num_vars, size, 0, 0, subsets_);
  position_.reserve(subsets_.size());
  for (std::size_t i = 0; i < subsets_.size(); ++i) position_.emplace(subsets_[i], i);
}

std::uint64_t SubsetIndex::count(std::size_t num_vars, std::size_t k) {
  k = std::min(k, num_vars);
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, i)
  for (std::size_t i = 0; i <= k; ++i) {
    if (i > 0) {
      unsigned __int128 next = static_cast<unsigned __int128>(binom) * (num_vars - i + 1) / i;
      if (next > UINT64_MAX) return UINT64_MAX;
      binom = static_cast<std::uint64_t>(next);
    }
    if (total > UINT64_MAX - binom) return UINT64_MAX;
    total += binom;
  }
  return total;
}

std::size_t SubsetIndex::lookup(Subset s) const {
  auto it = position_.find(s);
  if (it == position_.end()) throw ContractViolation("subset not present in the index");
  return it->second;
}

std::vector<std::size_t> subset_elements(Subset s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

RatMatrix moment_matrix(const MomentVector& y, std::size_t t) {
  SubsetIndex rows(y.index.num_vars(), t);
  const std::size_t n = rows.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = y.at(rows[i] | rows[j]);
  return m;
}

RatMatrix slack_matrix(const MomentVector& y, const RatMatrix& a, const RatVector& b, std::size_t u, std::size_t t) {
  require(u < a.rows() && a.rows() == b.size(), "slack_matrix: row out of range");
  require(a.cols() == y.index.num_vars(), "slack_matrix: LP and moment vector disagree on variables");
  SubsetIndex rows(y.index.num_vars(), t);
  const std::size_t n = rows.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Subset base = rows[i] | rows[j];
      Rational s = -b[u] * y.at(base);
      for (std::size_t v = 0; v < a.cols(); ++v)
        if (sgn(a(u, v)) != 0) s += a(u, v) * y.at(base | (Subset{1} << v));
      m(i, j) = m(j, i) = s;
    }
  return m;
}

LasserrePencil lift(const ZeroOneLP& lp, std::size_t t, std::size_t max_coordinates) {
  lp.validate();
  const std::size_t n = lp.num_vars();
  if (n > 64) throw TooLarge("lift: more than 64 LP variables");
  const std::uint64_t total = SubsetIndex::count(n, 2 * t + 1);
  if (total - 1 > max_coordinates)
    throw TooLarge("lift: " + std::to_string(total - 1) + " coordinates exceed the cap of " +
                   std::to_string(max_coordinates));

  LasserrePencil p;
  p.t = t;
  p.index = SubsetIndex(n, 2 * t + 1);
  const std::size_t coords = p.index.size() - 1;
  for (std::size_t v = 0; v < n; ++v) p.singleton.push_back(p.index.lookup(Subset{1} << v) - 1);

  SubsetIndex rows(n, t);
  const std::size_t bs = rows.size();
  InequalitySDP& sdp = p.sdp;
  sdp.block_sizes.assign(1 + lp.num_rows(), bs);
  sdp.coefficients.resize(coords);
  sdp.objective.assign(coords, Rational(0));
  for (std::size_t v = 0; v < n; ++v) sdp.objective[p.singleton[v]] = lp.c[v];

  // Accumulate per block entry so repeated unions merge into one value.
  auto emit = [&](std::size_t block, std::size_t i, std::size_t j, const std::map<Subset, Rational>& terms) {
    for (const auto& [s, value] : terms) {
      if (sgn(value) == 0) continue;
      if (s == 0)
        sdp.constant.push_back({block, i, j, value});
      else
        sdp.coefficients[p.index.lookup(s) - 1].push_back({block, i, j, value});
    }
  };
  for (std::size_t i = 0; i < bs; ++i)
    for (std::size_t j = i; j < bs; ++j) emit(0, i, j, {{rows[i] | rows[j], Rational(1)}});
  for (std::size_t u = 0; u < lp.num_rows(); ++u)
    for (std::size_t i = 0; i < bs; ++i)
      for (std::size_t j = i; j < bs; ++j) {
        Subset base = rows[i] | rows[j];
        std::map<Subset, Rational> terms;
        if (sgn(lp.b[u]) != 0) terms[base] -= lp.b[u];
        for (std::size_t v = 0; v < n; ++v)
          if (sgn(lp.a(u, v)) != 0) terms[base | (Subset{1} << v)] += lp.a(u, v);
        emit(1 + u, i, j, terms);
      }
  return p;
}

MomentVector LasserrePencil::moment_vector(const RatVector& coords) const {
  require(coords.size() == num_coordinates(), "moment_vector: wrong coordinate count");
  MomentVector y{t, index, RatVector(index.size())};
  y.values[0] = 1;
  for (std::size_t k = 0; k < coords.size(); ++k) y.values[k + 1] = coords[k];
  return y;
}

RatVector LasserrePencil::coordinates_of(const MomentVector& y) const {
  require(y.index.subsets() == index.subsets(), "coordinates_of: index mismatch");
  return RatVector(y.values.begin() + 1, y.values.end());
}

MomentVector rank_one_lift(const RatVector& x, std::size_t t) {
  for (const auto& v : x) require(v == 0 || v == 1, "rank_one_lift: point is not 0-1");
  Subset ones = 0;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v] == 1) ones |= Subset{1} << v;
  MomentVector y{t, SubsetIndex(x.size(), 2 * t + 1), {}};
  y.values.reserve(y.index.size());
  for (auto s : y.index.subsets()) y.values.emplace_back((s & ~ones) == 0 ? 1 : 0);
  return y;
}

RatVector project(const MomentVector& y) {
  RatVector x;
  for (std::size_t v = 0; v < y.index.num_vars(); ++v) x.push_back(y.at(Subset{1} << v));
  return x;
}

}  // namespace lascap
