#pragma once

// The two SDP standard forms.
//
// Conic:       max <C,X> + offset  s.t.  X >= 0 (PSD), <A_i,X> <= b_i.
// Inequality:  max <c,x>           s.t.  Z + sum_v x_v Y_v >= 0 (PSD).
//
// Inequality-form matrices are block diagonal and stored sparsely: each
// SymEntry sets positions (i,j) and (j,i) of one block.

#include <vector>

#include "lascap/matrix.hpp"
#include "lascap/rational.hpp"

namespace lascap {

struct SymEntry {
  std::size_t block = 0;
  std::size_t i = 0;  // i <= j
  std::size_t j = 0;
  Rational value;
};

struct InequalitySDP {
  std::vector<std::size_t> block_sizes;
  std::vector<SymEntry> constant;                  // Z
  std::vector<std::vector<SymEntry>> coefficients;  // Y_v, one list per variable
  RatVector objective;                              // c

  std::size_t num_vars() const { return coefficients.size(); }
  std::size_t dimension() const;  // sum of block sizes
  void validate() const;

  // Blocks of Z + sum_v x_v Y_v.
  std::vector<RatMatrix> blocks_at(const RatVector& x) const;
  // Dense block-diagonal Z and Y_v.
  RatMatrix dense_constant() const;
  RatMatrix dense_coefficient(std::size_t v) const;
  // Squared Frobenius norm of Y_v.
  Rational coefficient_norm2(std::size_t v) const;
};

struct ConicSDP {
  std::size_t n = 0;  // X is n x n
  std::vector<RatMatrix> a;
  RatVector b;
  RatMatrix c;
  Rational objective_offset = 0;

  std::size_t num_rows() const { return b.size(); }
  void validate() const;
  Rational objective_value(const RatMatrix& x) const { return frobenius(c, x) + objective_offset; }
  // Exact membership test X in F.
  bool feasible(const RatMatrix& x) const;
};

// Variables are X_ij for i <= j (row-major upper triangle), one n x n PSD
// block plus one 1 x 1 slack block b_i - <A_i,X> per row.
InequalitySDP conic_to_inequality(const ConicSDP& sdp);
// Upper-triangle vector <-> symmetric matrix for the layout above.
RatVector sym_to_vector(const RatMatrix& x);
RatMatrix vector_to_sym(const RatVector& v, std::size_t n);

// Inverse direction: X ranges over the PSD cone of dimension m = dimension()
// and the affine constraint X in Z + span{Y_v} becomes equality row pairs.
// The objective is carried by the dual basis of the Y_v; requires the Y_v to
// be linearly independent (ContractViolation otherwise).
struct InequalityAsConic {
  ConicSDP sdp;
  // x_v = <G_v, X - Z> recovers the inequality-form variables.
  std::vector<RatMatrix> recover;
  RatMatrix z;
  RatVector variables_of(const RatMatrix& x) const;
};
InequalityAsConic inequality_to_conic(const InequalitySDP& sdp);

}  // namespace lascap
