#pragma once

#include <map>
#include <set>
#include <string>

#include "nqs/gauss_rational.hpp"
#include "nqs/polynomial.hpp"

namespace nqs {

/// Assignment of exact rational values to real parameters.
using ParamAssignment = std::map<std::string, mpq_class>;

/// Complex rational function in named real parameters.
///
/// Always canonical: numerator and denominator are coprime and the
/// denominator's leading coefficient (grlex) is 1, so a constant
/// denominator is exactly 1. Structural equality is mathematical equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(GaussRational c) : num_(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long c) : num_(c) {}                      // NOLINT(google-explicit-constructor)
  Scalar(Polynomial p) : num_(std::move(p)) {}     // NOLINT(google-explicit-constructor)
  /// num/den, canonicalized. Throws DivisionByZero when den == 0.
  Scalar(Polynomial num, Polynomial den);

  static Scalar param(const std::string& name) { return Scalar(Polynomial::variable(name)); }
  static Scalar imaginary_unit() { return Scalar(GaussRational::imaginary_unit()); }
  static Scalar ratio(long num, long den) { return Scalar(GaussRational::ratio(num, den)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a parameter-free scalar.
  GaussRational constant_value() const;
  std::set<std::string> parameters() const;

  Scalar conj() const;
  Scalar inverse() const;

  /// Exact substitution. Throws EvaluationError on a missing parameter or a pole.
  GaussRational evaluate(const ParamAssignment& assignment) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  void canonicalize();

  Polynomial num_;
  Polynomial den_{1};
};

}  // namespace nqs
