#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nqs/op_poly.hpp"

namespace nqs {

/// Column of operator polynomials sharing one mode count.
class OpVector {
 public:
  OpVector() = default;
  OpVector(std::size_t modes, std::size_t length) : modes_(modes), entries_(length, OpPoly(modes)) {}
  OpVector(std::size_t modes, std::vector<OpPoly> entries);

  /// The generator column a = [a_1; ...; a_n].
  static OpVector annihilators(std::size_t modes);

  std::size_t modes() const { return modes_; }
  std::size_t size() const { return entries_.size(); }
  const OpPoly& operator[](std::size_t i) const { return entries_[i]; }
  OpPoly& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<OpPoly>& entries() const { return entries_; }
  bool is_zero() const;

  OpVector& operator+=(const OpVector& o);
  OpVector& operator-=(const OpVector& o);
  OpVector& operator*=(const Scalar& c);
  friend OpVector operator+(OpVector a, const OpVector& b) { return a += b; }
  friend OpVector operator-(OpVector a, const OpVector& b) { return a -= b; }
  friend OpVector operator*(const Scalar& c, OpVector a) { return a *= c; }

  friend bool operator==(const OpVector&, const OpVector&) = default;

 private:
  std::size_t modes_ = 0;
  std::vector<OpPoly> entries_;
};

/// Rectangular matrix of operator polynomials, row-major.
class OpMatrix {
 public:
  OpMatrix() = default;
  OpMatrix(std::size_t modes, std::size_t rows, std::size_t cols)
      : modes_(modes), rows_(rows), cols_(cols), entries_(rows * cols, OpPoly(modes)) {}

  static OpMatrix identity(std::size_t modes, std::size_t size);
  /// Scalar matrix from row-major entries.
  static OpMatrix from_scalars(std::size_t modes, std::size_t rows, std::size_t cols,
                               const std::vector<Scalar>& entries);
  /// Single-column matrix holding v.
  static OpMatrix column(const OpVector& v);
  /// [[top, 0], [0, bottom]].
  static OpMatrix block_diag(const OpMatrix& top, const OpMatrix& bottom);

  std::size_t modes() const { return modes_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const OpPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  OpPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_scalar() const;
  bool is_identity() const;
  OpVector column_vector(std::size_t c) const;

  OpMatrix& operator+=(const OpMatrix& o);
  OpMatrix& operator-=(const OpMatrix& o);
  OpMatrix& operator*=(const Scalar& c);
  friend OpMatrix operator+(OpMatrix a, const OpMatrix& b) { return a += b; }
  friend OpMatrix operator-(OpMatrix a, const OpMatrix& b) { return a -= b; }
  friend OpMatrix operator*(const Scalar& c, OpMatrix a) { return a *= c; }

  friend bool operator==(const OpMatrix&, const OpMatrix&) = default;

 private:
  std::size_t modes_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<OpPoly> entries_;
};

/// M*N with entry products taken left to right.
OpMatrix matmul(const OpMatrix& m, const OpMatrix& n, const CommutationMatrix& theta);
OpVector matvec(const OpMatrix& m, const OpVector& v, const CommutationMatrix& theta);

/// Conjugate transpose with entrywise operator adjoint.
OpMatrix adjoint_matrix(const OpMatrix& m);
/// Entrywise operator adjoint, no transpose (the `*` of a vector).
OpVector adjoint_entries(const OpVector& v);

/// [M, v^dagger]: entry (j,k) = [M_j, v_k*].
OpMatrix comm_vec_adj(const OpVector& m, const OpVector& v, const CommutationMatrix& theta);
/// [u^dagger, v]: entry (j,k) = [u_k*, v_j]; shape |v| x |u|.
OpMatrix comm_adj_vec(const OpVector& u, const OpVector& v, const CommutationMatrix& theta);
/// [M, v^T]: entry (j,k) = [M_j, v_k].
OpMatrix comm_vec_transpose(const OpVector& m, const OpVector& v, const CommutationMatrix& theta);
/// [x, v] for a single operator x: entry j = [x, v_j].
OpVector comm_scalar_vec(const OpPoly& x, const OpVector& v, const CommutationMatrix& theta);
/// sum_{j,k} u_j* S_jk w_k in that operator order. S must have scalar entries.
OpPoly quad_form(const OpVector& u, const OpMatrix& s, const OpVector& w, const CommutationMatrix& theta);

/// Exact inverse of a matrix with scalar entries (Gaussian elimination).
/// Throws DivisionByZero when singular.
OpMatrix invert_scalar_matrix(const OpMatrix& m);

/// Paper-style block layout, one row per line with aligned columns.
std::string format_matrix(const OpMatrix& m, const ModeNames& names);
std::string format_vector(const OpVector& v, const ModeNames& names);

}  // namespace nqs
