#include <map>

#include "lascap/errors.hpp"
#include "lascap/exactlin.hpp"
#include "lascap/sdpsolve.hpp"

namespace lascap {

IndexMap::IndexMap(std::vector<std::size_t> classes) : map_(std::move(classes)) { normalize(); }

IndexMap IndexMap::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return IndexMap(std::move(m));
}

IndexMap IndexMap::constant(std::size_t n) { return IndexMap(std::vector<std::size_t>(n, 0)); }

void IndexMap::normalize() {
  std::map<std::size_t, std::size_t> relabel;
  sizes_.clear();
  for (auto& c : map_) {
    auto [it, inserted] = relabel.emplace(c, relabel.size());
    if (inserted) sizes_.push_back(0);
    c = it->second;
    ++sizes_[c];
  }
}

bool IndexMap::agrees(const RatVector& s) const {
  require(s.size() == map_.size(), "IndexMap::agrees: wrong vector length");
  std::vector<const Rational*> rep(num_classes(), nullptr);
  for (std::size_t v = 0; v < map_.size(); ++v) {
    const Rational*& r = rep[map_[v]];
    if (!r)
      r = &s[v];
    else if (*r != s[v])
      return false;
  }
  return true;
}

bool IndexMap::refine(const RatVector& s) {
  require(s.size() == map_.size(), "IndexMap::refine: wrong vector length");
  std::map<std::pair<std::size_t, Rational>, std::size_t> split;
  std::vector<std::size_t> next(map_.size());
  for (std::size_t v = 0; v < map_.size(); ++v) {
    auto [it, inserted] = split.emplace(std::make_pair(map_[v], s[v]), split.size());
    next[v] = it->second;
  }
  const std::size_t before = num_classes();
  map_ = std::move(next);
  normalize();
  return num_classes() != before;
}

RatVector almost_fold(const RatVector& x, const IndexMap& sigma) {
  require(x.size() == sigma.source_size(), "almost_fold: wrong vector length");
  RatVector out(sigma.num_classes());
  for (std::size_t v = 0; v < x.size(); ++v) out[sigma(v)] += x[v];
  return out;
}

RatVector fold_vector(const RatVector& x, const IndexMap& sigma) {
  RatVector out = almost_fold(x, sigma);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= static_cast<unsigned long>(sigma.class_sizes()[i]);
  return out;
}

RatVector unfold(const RatVector& x, const IndexMap& sigma) {
  require(x.size() == sigma.num_classes(), "unfold: wrong vector length");
  RatVector out(sigma.source_size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = x[sigma(v)];
  return out;
}

RatMatrix fold_psd_check(const RatMatrix& x, const IndexMap& tau) {
  require(x.is_symmetric() && x.rows() == tau.source_size(), "fold_psd_check: shape mismatch");
  require(psd_certificate(x).psd, "fold_psd_check: input is not positive semidefinite");
  const std::size_t k = tau.num_classes();
  RatMatrix f(k, k);
  for (std::size_t u = 0; u < x.rows(); ++u)
    for (std::size_t v = 0; v < x.cols(); ++v) f(tau(u), tau(v)) += x(u, v);
  const auto& sizes = tau.class_sizes();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) f(i, j) /= static_cast<unsigned long>(sizes[i] * sizes[j]);
  if (!psd_certificate(f).psd) throw std::logic_error("fold_psd_check: folded matrix failed certification");
  return f;
}

RatMatrix fold_psd_check_pairs(const RatMatrix& x, const IndexMap& sigma) {
  const std::size_t n = x.rows();
  require(sigma.source_size() == n * n, "fold_psd_check_pairs: map must cover every matrix position");
  // tau from the diagonal classes, then sigma must be exactly tau x tau.
  std::vector<std::size_t> diag(n);
  for (std::size_t u = 0; u < n; ++u) diag[u] = sigma(u * n + u);
  IndexMap tau(diag);
  const std::size_t k = tau.num_classes();
  std::map<std::size_t, std::size_t> pair_of_class;
  std::vector<std::optional<std::size_t>> class_of_pair(k * k);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      // X is symmetric, so (i,j) and (j,i) name the same class pair.
      std::size_t p = std::min(tau(u), tau(v)) * k + std::max(tau(u), tau(v));
      std::size_t c = sigma(u * n + v);
      auto [it, inserted] = pair_of_class.emplace(c, p);
      require(it->second == p, "fold_psd_check_pairs: index map is not consistent with any tau");
      if (!class_of_pair[p]) class_of_pair[p] = c;
      require(*class_of_pair[p] == c, "fold_psd_check_pairs: index map is not consistent with any tau");
    }
  return fold_psd_check(x, tau);
}

}  // namespace lascap
