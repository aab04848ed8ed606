#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nqs/scalar.hpp"

namespace nqs {

/// Display names of the annihilation generators, index j -> name of a_{j+1}.
using ModeNames = std::vector<std::string>;

ModeNames default_mode_names(std::size_t n);

/// Commutation matrix Theta with [a_j, a_k*] = Theta_jk. Always Hermitian.
class CommutationMatrix {
 public:
  CommutationMatrix() = default;
  /// Row-major entries; throws if the matrix is not square or not Hermitian.
  CommutationMatrix(std::size_t n, std::vector<Scalar> entries);
  static CommutationMatrix identity(std::size_t n);

  std::size_t modes() const { return n_; }
  const Scalar& operator()(std::size_t j, std::size_t k) const { return entries_[j * n_ + k]; }
  const std::vector<Scalar>& entries() const { return entries_; }
  bool is_identity() const;

  friend bool operator==(const CommutationMatrix&, const CommutationMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> entries_;
};

/// a*^creation a^annihilation; exponent vectors have one slot per mode.
struct NormalMonomial {
  std::vector<unsigned> creation;
  std::vector<unsigned> annihilation;

  unsigned degree() const;
  bool is_one() const { return degree() == 0; }

  friend bool operator==(const NormalMonomial&, const NormalMonomial&) = default;
};

/// Ascending total degree, then creation exponents, then annihilation exponents.
struct NormalMonomialLess {
  bool operator()(const NormalMonomial& a, const NormalMonomial& b) const;
};

/// Normal-ordered polynomial in a_1..a_n and a_1*..a_n* with Scalar coefficients.
class OpPoly {
 public:
  using Terms = std::map<NormalMonomial, Scalar, NormalMonomialLess>;

  explicit OpPoly(std::size_t modes = 0) : modes_(modes) {}
  static OpPoly constant(std::size_t modes, const Scalar& value);
  static OpPoly annihilator(std::size_t modes, std::size_t j);
  static OpPoly creator(std::size_t modes, std::size_t j);
  static OpPoly monomial(std::size_t modes, NormalMonomial m, const Scalar& coeff);

  std::size_t modes() const { return modes_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the polynomial has no operator content (including zero).
  bool is_scalar() const;
  Scalar scalar_value() const;
  /// Coefficient of the identity monomial.
  Scalar constant_term() const;
  /// Highest total degree; nullopt for the zero polynomial.
  std::optional<unsigned> degree() const;

  void add_term(const NormalMonomial& m, const Scalar& c);

  OpPoly& operator+=(const OpPoly& o);
  OpPoly& operator-=(const OpPoly& o);
  OpPoly& operator*=(const Scalar& c);
  friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
  friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
  friend OpPoly operator*(OpPoly a, const Scalar& c) { return a *= c; }
  friend OpPoly operator*(const Scalar& c, OpPoly a) { return a *= c; }
  OpPoly operator-() const;

  friend bool operator==(const OpPoly& a, const OpPoly& b) {
    return a.modes_ == b.modes_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const OpPoly& a, const OpPoly& b) { return !(a == b); }

 private:
  std::size_t modes_ = 0;
  Terms terms_;
};

/// Normal-ordered product p*q, rewriting a_j a_k* -> a_k* a_j + Theta_jk.
OpPoly product(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta);
/// [p, q] = pq - qp.
OpPoly commutator(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta);
/// Operator adjoint: c a*^h a^k -> conj(c) a*^k a^h.
OpPoly adjoint(const OpPoly& p);
/// Homogeneous total-degree components; empty for zero.
std::map<unsigned, OpPoly> grade(const OpPoly& p);
bool is_annihilation_only(const OpPoly& p);

/// Canonical text form, e.g. `(-2*chi) * a1'^2 * a2`.
std::string to_string(const OpPoly& p, const ModeNames& names);
std::string to_string(const OpPoly& p);

}  // namespace nqs
