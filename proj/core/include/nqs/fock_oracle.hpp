#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nqs/op_poly.hpp"

namespace nqs::fock {

/// n modes, each truncated to the occupations 0..cutoff-1.
class TruncatedRep {
 public:
  TruncatedRep(std::size_t modes, std::size_t cutoff);

  std::size_t modes() const { return modes_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t dimension() const { return dimension_; }

  std::vector<unsigned> occupation(std::size_t index) const;
  std::size_t index(const std::vector<unsigned>& occupation) const;
  unsigned excitation(std::size_t index) const;

 private:
  std::size_t modes_;
  std::size_t cutoff_;
  std::size_t dimension_;
};

/// Row-compressed sparse square matrix over a field T.
template <class T>
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t dim = 0) : rows_(dim) {}

  std::size_t dimension() const { return rows_.size(); }
  const std::map<std::size_t, T>& row(std::size_t r) const { return rows_[r]; }

  T at(std::size_t r, std::size_t c) const {
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? T{} : it->second;
  }

  void add(std::size_t r, std::size_t c, const T& v) {
    if (v == T{}) return;
    auto [it, inserted] = rows_[r].try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second == T{}) rows_[r].erase(it);
    }
  }

  SparseMatrix& operator+=(const SparseMatrix& o) {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add(r, c, v);
    return *this;
  }

  SparseMatrix& operator-=(const SparseMatrix& o) {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add(r, c, -v);
    return *this;
  }

  SparseMatrix& operator*=(const T& s) {
    for (auto& row : rows_)
      for (auto& [c, v] : row) v *= s;
    return *this;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix r(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      for (const auto& [k, av] : a.rows_[i]) {
        for (const auto& [j, bv] : b.rows_[k]) r.add(i, j, av * bv);
      }
    }
    return r;
  }

 private:
  std::vector<std::map<std::size_t, T>> rows_;
};

/// Orthonormal number basis: a|m> = sqrt(m)|m-1>.
using FloatMatrix = SparseMatrix<std::complex<double>>;
/// Unnormalised ladder basis e_m = a*^m|0>: a* e_m = e_{m+1}, a e_m = m e_{m-1}.
/// Every ladder entry is an integer, so rational parameter values keep it exact.
using ExactMatrix = SparseMatrix<GaussRational>;

/// Matrix of p in the orthonormal basis. Requires Theta = I and a pole-free assignment.
FloatMatrix represent(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                      const ParamAssignment& assignment);
/// Matrix of p in the ladder basis.
ExactMatrix represent_exact(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                            const ParamAssignment& assignment);

/// Conjugate transpose (orthonormal basis).
FloatMatrix adjoint(const FloatMatrix& m);
/// Matrix of the operator adjoint in the ladder basis: Gram^-1 M^H Gram, Gram = diag(prod m_j!).
ExactMatrix adjoint(const ExactMatrix& m, const TruncatedRep& rep);

/// Result of comparing two matrices on states of total excitation <= cutoff - degree_bound.
struct Agreement {
  bool agree = false;
  double max_relative_error = 0.0;
  std::size_t compared = 0;  ///< matrix elements inspected
};

/// Throws Error when cutoff <= degree_bound.
Agreement compare_on_safe_subspace(const FloatMatrix& lhs, const FloatMatrix& rhs, const TruncatedRep& rep,
                                   unsigned degree_bound, double tol = 1e-9);
Agreement compare_on_safe_subspace(const ExactMatrix& lhs, const ExactMatrix& rhs, const TruncatedRep& rep,
                                   unsigned degree_bound);

/// Represent p and q and compare them on the safe subspace.
bool agree_on_safe_subspace(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                            const TruncatedRep& rep, const ParamAssignment& assignment, unsigned degree_bound,
                            double tol = 1e-9);

enum class Arithmetic { floating, exact };

/// Symbolic operation checked against the matrix computation.
struct OracleCheck {
  std::string what;
  Agreement agreement;
};

OracleCheck check_product(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                          const TruncatedRep& rep, const ParamAssignment& assignment, Arithmetic arithmetic,
                          double tol = 1e-9);
OracleCheck check_commutator(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                             const TruncatedRep& rep, const ParamAssignment& assignment, Arithmetic arithmetic,
                             double tol = 1e-9);
OracleCheck check_adjoint(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                          const ParamAssignment& assignment, Arithmetic arithmetic, double tol = 1e-9);

}  // namespace nqs::fock
