#pragma once

// Weak separation for explicit SDP regions, symmetry folding, the
// full-dimensionality shift, the rational ellipsoid method, and rounding.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lascap/matrix.hpp"
#include "lascap/rational.hpp"
#include "lascap/sdp_forms.hpp"

namespace lascap {

// ---------------------------------------------------------------------------
// Weak separation

struct SeparationResult {
  bool accept = false;
  RatMatrix separator;  // ||S||_inf = 1 when !accept
};

// Accepts Y only when Y is in F (all rows hold and lambda_min(Y) >= delta/(32n)).
// Otherwise S satisfies <S,Y> + delta > sup_{X in F} <S,X>: violated rows are
// summed, else S = -v v^T / max_i v_i^2 for an approximate eigenvector v of
// the smallest eigenvalue.
SeparationResult weak_separation(const ConicSDP& sdp, const RatMatrix& y, const Rational& delta);

enum class SeparationStrategy {
  kEigen,         // Sturm-sequence eigenvalue + approximate eigenvector
  kPivotWitness,  // exact LDL^T witness of the shifted block
};

// Half-space {z | <g,z> >= beta}.
struct Cut {
  RatVector g;
  Rational beta;
};

// Separation for Z + sum_v x_v Y_v at tolerance theta > 0. Returns nullopt
// (accept) only when every block B satisfies B >= (theta/4) I (kEigen) or
// B >= (theta/2) I (kPivotWitness). A returned cut has <g,x> <= beta and keeps
// every z whose blocks satisfy B(z) >= (3/2) theta I. 1 x 1 blocks are treated
// as linear rows and violated ones are summed.
std::optional<Cut> separate(const InequalitySDP& sdp, const RatVector& x, const Rational& theta,
                            SeparationStrategy strategy);

// ---------------------------------------------------------------------------
// Full-dimensionality

// X = X' - shift * I where X' ranges over the returned SDP. The PSD
// constraint of the original becomes X + shift*I >= 0 and row i is relaxed by
// eps / (||A_i|| ||C||) (norms bounded above by integers, max{1,.} applied).
struct FullDimensionalSDP {
  ConicSDP sdp;
  Rational shift;
  RatVector row_relaxation;
  RatMatrix original_point(const RatMatrix& x_prime) const { return x_prime.shifted(-shift); }
};
FullDimensionalSDP make_full_dimensional(const ConicSDP& sdp, const Rational& eps);

// Z + eta I with eta = eps / (ceil(sqrt(dim)) * ceil(max{1,||c||})).
struct ShiftedSDP {
  InequalitySDP sdp;
  Rational shift;
};
ShiftedSDP make_full_dimensional(const InequalitySDP& sdp, const Rational& eps);

// Integer upper bound on max{1, ||v||}.
Integer norm_bound(const RatVector& v);

// ---------------------------------------------------------------------------
// Folding

// Surjection sigma: V -> {0..k-1}; classes are numbered by first appearance.
class IndexMap {
 public:
  IndexMap() = default;
  explicit IndexMap(std::vector<std::size_t> classes);
  static IndexMap identity(std::size_t n);
  static IndexMap constant(std::size_t n);

  std::size_t source_size() const { return map_.size(); }
  std::size_t num_classes() const { return sizes_.size(); }
  std::size_t operator()(std::size_t v) const { return map_[v]; }
  const std::vector<std::size_t>& class_sizes() const { return sizes_; }
  const std::vector<std::size_t>& classes() const { return map_; }
  bool injective() const { return num_classes() == source_size(); }

  // s is constant on every class.
  bool agrees(const RatVector& s) const;
  // Splits classes by the values of s; returns whether anything changed.
  bool refine(const RatVector& s);

 private:
  void normalize();
  std::vector<std::size_t> map_;
  std::vector<std::size_t> sizes_;
};

RatVector almost_fold(const RatVector& x, const IndexMap& sigma);  // class sums
RatVector fold_vector(const RatVector& x, const IndexMap& sigma);  // class averages
RatVector unfold(const RatVector& x, const IndexMap& sigma);

// Folds a PSD matrix along tau x tau: entry (i,j) is the average of X over
// V_i x V_j. Throws ContractViolation unless X is PSD; the result is checked
// with psd_certificate.
RatMatrix fold_psd_check(const RatMatrix& x, const IndexMap& tau);
// Same, for a map on matrix positions u*n+v that must be consistent with
// some tau, with (i,j) and (j,i) sharing a class (ContractViolation otherwise).
RatMatrix fold_psd_check_pairs(const RatMatrix& x, const IndexMap& sigma_pairs);

// ---------------------------------------------------------------------------
// Ellipsoid

struct EllipsoidState {
  RatVector center;
  RatMatrix shape;  // E = {z | (z-center)^T shape^{-1} (z-center) <= 1}
  std::uint64_t iteration = 0;
  std::optional<RatVector> best_point;
  Rational best_value;
  // Objective floor: every kept point has <c,z> >= floor (when best exists).
  std::optional<Rational> objective_floor;
};

struct EllipsoidOptions {
  SeparationStrategy strategy = SeparationStrategy::kPivotWitness;
  std::optional<std::uint64_t> max_iterations;
  std::function<void(const EllipsoidState&)> on_step;
  bool full_dimensional_shift = true;
};

enum class SolveStatus { kOptimal, kEmpty };

struct EllipsoidResult {
  SolveStatus status = SolveStatus::kEmpty;
  Rational value;
  RatVector point;
  std::uint64_t iterations = 0;
  std::uint64_t budget = 0;
  Rational shift;      // eta added to Z
  Rational tolerance;  // internal separation tolerance theta
  bool radius_guard = false;  // an accepted point left the R-ball
  std::size_t refinements = 0;  // folded runs only
  std::size_t final_classes = 0;
};

// Default budget ceil(8 N^2 ln(4 R N / delta)) + 64.
std::uint64_t default_iteration_budget(std::size_t n, const Rational& radius, const Rational& delta);

// Sliding-objective ellipsoid over {x | Z + sum x_v Y_v >= 0} within B(0,R).
// kOptimal: value s of an accepted point with s >= max_F <c,x> - delta/2.
// kEmpty: certified that no point of F exists. Throws BudgetExhausted.
EllipsoidResult ellipsoid_optimize(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                   const EllipsoidOptions& options = {});

// Ellipsoid in folded coordinates with partition refinement; falls back to
// the injective map when a folded run certifies emptiness or runs out of
// budget.
EllipsoidResult folded_optimize(const InequalitySDP& sdp, const Rational& delta, const Rational& radius,
                                const EllipsoidOptions& options = {},
                                std::optional<IndexMap> initial = std::nullopt);

// Nearest integer to s; an exact half-integer violates the precondition.
Integer round_to_integer_optimum(const Rational& s, const RatVector& c);

// 1 / (4 max{1, ||c||}) with ||c|| replaced by norm_bound(c).
Rational rounding_delta(const RatVector& c);

}  // namespace lascap
