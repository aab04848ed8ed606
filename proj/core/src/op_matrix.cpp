#include "nqs/op_matrix.hpp"

#include <algorithm>

#include "nqs/error.hpp"

namespace nqs {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// OpVector

OpVector::OpVector(std::size_t modes, std::vector<OpPoly> entries) : modes_(modes), entries_(std::move(entries)) {
  for (const auto& e : entries_) require(e.modes() == modes_, "vector entries have inconsistent mode counts");
}

OpVector OpVector::annihilators(std::size_t modes) {
  OpVector v(modes, modes);
  for (std::size_t j = 0; j < modes; ++j) v[j] = OpPoly::annihilator(modes, j);
  return v;
}

bool OpVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const OpPoly& p) { return p.is_zero(); });
}

OpVector& OpVector::operator+=(const OpVector& o) {
  require(size() == o.size(), "vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

OpVector& OpVector::operator-=(const OpVector& o) {
  require(size() == o.size(), "vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

OpVector& OpVector::operator*=(const Scalar& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// OpMatrix

OpMatrix OpMatrix::identity(std::size_t modes, std::size_t size) {
  OpMatrix m(modes, size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = OpPoly::constant(modes, Scalar(1));
  return m;
}

OpMatrix OpMatrix::from_scalars(std::size_t modes, std::size_t rows, std::size_t cols,
                                const std::vector<Scalar>& entries) {
  require(entries.size() == rows * cols, "scalar entry count does not match shape");
  OpMatrix m(modes, rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) m.entries_[i] = OpPoly::constant(modes, entries[i]);
  return m;
}

OpMatrix OpMatrix::column(const OpVector& v) {
  OpMatrix m(v.modes(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

OpMatrix OpMatrix::block_diag(const OpMatrix& top, const OpMatrix& bottom) {
  require(top.modes() == bottom.modes(), "block mode count mismatch");
  OpMatrix m(top.modes(), top.rows() + bottom.rows(), top.cols() + bottom.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) m(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < bottom.cols(); ++c) m(top.rows() + r, top.cols() + c) = bottom(r, c);
  return m;
}

bool OpMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const OpPoly& p) { return p.is_zero(); });
}

bool OpMatrix::is_scalar() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const OpPoly& p) { return p.is_scalar(); });
}

bool OpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const OpPoly& e = (*this)(r, c);
      if (r == c ? !(e.is_scalar() && e.scalar_value().is_one()) : !e.is_zero()) return false;
    }
  }
  return true;
}

OpVector OpMatrix::column_vector(std::size_t c) const {
  OpVector v(modes_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

OpMatrix& OpMatrix::operator+=(const OpMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

OpMatrix& OpMatrix::operator-=(const OpMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

OpMatrix& OpMatrix::operator*=(const Scalar& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// Products and commutator patterns

OpMatrix matmul(const OpMatrix& m, const OpMatrix& n, const CommutationMatrix& theta) {
  require(m.cols() == n.rows(), "inner dimensions disagree: " + std::to_string(m.cols()) + " vs " +
                                    std::to_string(n.rows()));
  require(m.modes() == n.modes(), "matrix mode count mismatch");
  OpMatrix r(m.modes(), m.rows(), n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n.cols(); ++j) {
      OpPoly acc(m.modes());
      for (std::size_t k = 0; k < m.cols(); ++k) {
        if (m(i, k).is_zero() || n(k, j).is_zero()) continue;
        acc += product(m(i, k), n(k, j), theta);
      }
      r(i, j) = std::move(acc);
    }
  }
  return r;
}

OpVector matvec(const OpMatrix& m, const OpVector& v, const CommutationMatrix& theta) {
  return matmul(m, OpMatrix::column(v), theta).column_vector(0);
}

OpMatrix adjoint_matrix(const OpMatrix& m) {
  OpMatrix r(m.modes(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = adjoint(m(i, j));
  return r;
}

OpVector adjoint_entries(const OpVector& v) {
  OpVector r(v.modes(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = adjoint(v[i]);
  return r;
}

OpMatrix comm_vec_adj(const OpVector& m, const OpVector& v, const CommutationMatrix& theta) {
  require(m.modes() == v.modes(), "vector mode count mismatch");
  OpMatrix r(m.modes(), m.size(), v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    OpPoly vk_adj = adjoint(v[k]);
    for (std::size_t j = 0; j < m.size(); ++j) r(j, k) = commutator(m[j], vk_adj, theta);
  }
  return r;
}

OpMatrix comm_adj_vec(const OpVector& u, const OpVector& v, const CommutationMatrix& theta) {
  require(u.modes() == v.modes(), "vector mode count mismatch");
  OpMatrix r(u.modes(), v.size(), u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    OpPoly uk_adj = adjoint(u[k]);
    for (std::size_t j = 0; j < v.size(); ++j) r(j, k) = commutator(uk_adj, v[j], theta);
  }
  return r;
}

OpMatrix comm_vec_transpose(const OpVector& m, const OpVector& v, const CommutationMatrix& theta) {
  require(m.modes() == v.modes(), "vector mode count mismatch");
  OpMatrix r(m.modes(), m.size(), v.size());
  for (std::size_t j = 0; j < m.size(); ++j)
    for (std::size_t k = 0; k < v.size(); ++k) r(j, k) = commutator(m[j], v[k], theta);
  return r;
}

OpVector comm_scalar_vec(const OpPoly& x, const OpVector& v, const CommutationMatrix& theta) {
  OpVector r(v.modes(), v.size());
  for (std::size_t j = 0; j < v.size(); ++j) r[j] = commutator(x, v[j], theta);
  return r;
}

OpPoly quad_form(const OpVector& u, const OpMatrix& s, const OpVector& w, const CommutationMatrix& theta) {
  require(s.rows() == u.size() && s.cols() == w.size(), "quadratic form shape mismatch");
  require(s.is_scalar(), "quadratic form kernel must have scalar entries");
  OpPoly acc(u.modes());
  for (std::size_t j = 0; j < u.size(); ++j) {
    OpPoly uj_adj = adjoint(u[j]);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (s(j, k).is_zero() || w[k].is_zero()) continue;
      acc += product(uj_adj, w[k], theta) * s(j, k).scalar_value();
    }
  }
  return acc;
}

OpMatrix invert_scalar_matrix(const OpMatrix& m) {
  require(m.rows() == m.cols(), "only square matrices can be inverted");
  require(m.is_scalar(), "only scalar matrices can be inverted");
  const std::size_t n = m.rows();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).scalar_value();
    a[i][n + i] = Scalar(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw DivisionByZero("matrix is singular");
    std::swap(a[pivot], a[col]);
    Scalar inv = a[col][col].inverse();
    for (auto& e : a[col]) e *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Scalar f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) {
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
      }
    }
  }
  OpMatrix r(m.modes(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = OpPoly::constant(m.modes(), a[i][n + j]);
  return r;
}

// ---------------------------------------------------------------------------
// Layout

std::string format_matrix(const OpMatrix& m, const ModeNames& names) {
  if (m.rows() == 0 || m.cols() == 0) return "[]\n";
  std::vector<std::string> cells(m.rows() * m.cols());
  std::vector<std::size_t> width(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells[r * m.cols() + c] = to_string(m(r, c), names);
      width[c] = std::max(width[c], cells[r * m.cols() + c].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += "[ ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const std::string& cell = cells[r * m.cols() + c];
      out += cell + std::string(width[c] - cell.size(), ' ');
      out += c + 1 < m.cols() ? " | " : " ]\n";
    }
  }
  return out;
}

std::string format_vector(const OpVector& v, const ModeNames& names) {
  return format_matrix(OpMatrix::column(v), names);
}

}  // namespace nqs
