#pragma once

// Level-t Lasserre lift of a 0-1 LP. Subsets of the LP variables are
// bitmasks (bit v = variable v), so lifts are limited to 64 variables.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lascap/encode.hpp"
#include "lascap/sdp_forms.hpp"

namespace lascap {

using Subset = std::uint64_t;

// All subsets of {0..n-1} with at most k elements (k capped at n), ordered
// by size and then lexicographically by sorted element list. The empty set
// comes first.
class SubsetIndex {
 public:
  SubsetIndex() = default;
  SubsetIndex(std::size_t num_vars, std::size_t k);

  // |P_k| without building it; saturates at UINT64_MAX.
  static std::uint64_t count(std::size_t num_vars, std::size_t k);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t bound() const { return bound_; }
  std::size_t size() const { return subsets_.size(); }
  const std::vector<Subset>& subsets() const { return subsets_; }
  Subset operator[](std::size_t i) const { return subsets_[i]; }
  bool contains(Subset s) const { return position_.count(s) != 0; }
  // Position of s; ContractViolation when s is not indexed.
  std::size_t lookup(Subset s) const;

 private:
  std::size_t num_vars_ = 0;
  std::size_t bound_ = 0;
  std::vector<Subset> subsets_;
  std::unordered_map<Subset, std::size_t> position_;
};

std::vector<std::size_t> subset_elements(Subset s);

// y indexed by P_{2t+1}(V); values[0] is y_empty.
struct MomentVector {
  std::size_t t = 0;
  SubsetIndex index;
  RatVector values;

  const Rational& at(Subset s) const { return values[index.lookup(s)]; }
};

RatMatrix moment_matrix(const MomentVector& y, std::size_t t);
RatMatrix slack_matrix(const MomentVector& y, const RatMatrix& a, const RatVector& b, std::size_t u, std::size_t t);

inline constexpr std::size_t kDefaultMaxCoordinates = 50000;

// Inequality-form SDP over the nonempty subsets of P_{2t+1}(V) (y_empty is
// substituted by 1). Block 0 is M_t, block 1+u is the slack matrix of row u.
struct LasserrePencil {
  std::size_t t = 0;
  SubsetIndex index;                // P_{2t+1}(V); coordinate k is index[k+1]
  std::vector<std::size_t> singleton;  // coordinate of {v}
  InequalitySDP sdp;

  std::size_t num_coordinates() const { return sdp.num_vars(); }
  MomentVector moment_vector(const RatVector& coords) const;
  RatVector coordinates_of(const MomentVector& y) const;
};

// t = 0 gives M_0 = [1] and 1 x 1 slack blocks, i.e. the LP relaxation.
// Throws TooLarge beyond max_coordinates coordinates or 64 variables.
LasserrePencil lift(const ZeroOneLP& lp, std::size_t t, std::size_t max_coordinates = kDefaultMaxCoordinates);

// y_S = prod_{v in S} x_v for a 0-1 point x.
MomentVector rank_one_lift(const RatVector& x, std::size_t t);
// (y_{v})_v
RatVector project(const MomentVector& y);

}  // namespace lascap
