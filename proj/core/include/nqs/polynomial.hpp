#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nqs/gauss_rational.hpp"

namespace nqs {

/// Power product of named real parameters, e.g. chi^2*kappa.
/// Factors are kept sorted by parameter name with positive exponents.
class ParamMonomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  ParamMonomial() = default;
  static ParamMonomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned total_degree() const;
  unsigned degree_in(const std::string& name) const;

  ParamMonomial operator*(const ParamMonomial& o) const;
  bool divides(const ParamMonomial& o) const;
  /// o / *this; requires divides(o).
  ParamMonomial quotient_of(const ParamMonomial& o) const;
  ParamMonomial without(const std::string& name) const;

  friend bool operator==(const ParamMonomial&, const ParamMonomial&) = default;

  std::string str() const;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order; parameters earlier in alphabetical order rank higher.
struct GrlexLess {
  bool operator()(const ParamMonomial& a, const ParamMonomial& b) const;
};

int grlex_compare(const ParamMonomial& a, const ParamMonomial& b);

/// Multivariate polynomial with Gaussian-rational coefficients over named real parameters.
class Polynomial {
 public:
  using Terms = std::map<ParamMonomial, GaussRational, GrlexLess>;

  Polynomial() = default;
  Polynomial(GaussRational c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(const std::string& name);
  static Polynomial term(ParamMonomial m, GaussRational c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  GaussRational constant_value() const;

  /// Largest monomial in grlex order; undefined on zero.
  const ParamMonomial& leading_monomial() const { return terms_.rbegin()->first; }
  const GaussRational& leading_coefficient() const { return terms_.rbegin()->second; }

  unsigned total_degree() const;
  unsigned degree_in(const std::string& name) const;
  /// Coefficients of `name`^e as polynomials in the other parameters.
  std::map<unsigned, Polynomial> coefficients_in(const std::string& name) const;
  std::set<std::string> variables() const;
  bool has_variable(const std::string& name) const;

  Polynomial conj() const;
  Polynomial monic() const;
  GaussRational evaluate(const std::map<std::string, mpq_class>& assignment) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussRational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Parseable text with terms in descending grlex order.
  std::string str() const;

 private:
  void add_term(const ParamMonomial& m, const GaussRational& c);
  Terms terms_;
};

/// a / b when b divides a exactly, nullopt otherwise. Throws on b == 0.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (1 when coprime, the monic other argument when one is zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b viewed as univariate polynomials in `name`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& name);

}  // namespace nqs
