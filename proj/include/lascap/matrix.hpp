#pragma once

#include <cstddef>
#include <vector>

#include "lascap/errors.hpp"
#include "lascap/rational.hpp"

namespace lascap {

// Dense row-major matrix over the rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);
  // Row lists; all rows must have the same length.
  static RatMatrix from_rows(const std::vector<RatVector>& rows);
  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(const RatVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const;
  RatMatrix transpose() const;
  bool is_symmetric() const;

  RatMatrix operator+(const RatMatrix& other) const;
  RatMatrix operator-(const RatMatrix& other) const;
  RatMatrix operator*(const RatMatrix& other) const;
  RatMatrix operator*(const Rational& s) const;
  RatVector operator*(const RatVector& v) const;
  bool operator==(const RatMatrix& other) const = default;

  // this + s*I
  RatMatrix shifted(const Rational& s) const;

  // Frobenius inner product <A,B> = sum_ij A_ij B_ij.
  friend Rational frobenius(const RatMatrix& a, const RatMatrix& b);
  Rational max_abs_entry() const;
  Rational trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational frobenius(const RatMatrix& a, const RatMatrix& b);
Rational quadratic_form(const RatMatrix& m, const RatVector& v);
RatMatrix outer(const RatVector& a, const RatVector& b);

// Exact determinant by fraction-carrying Gaussian elimination.
Rational determinant(RatMatrix m);

// Solves M x = rhs for square nonsingular M; returns false when singular.
bool solve_linear(RatMatrix m, RatVector rhs, RatVector& out);

// Basis of the right null space of M (possibly empty).
std::vector<RatVector> null_space(RatMatrix m);

}  // namespace lascap
