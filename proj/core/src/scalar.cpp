#include "nqs/scalar.hpp"

#include "nqs/error.hpp"

namespace nqs {

Scalar::Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("scalar with zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ *= den_.constant_value().inverse();
      den_ = Polynomial(1);
    }
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = *exact_divide(num_, g);
    den_ = *exact_divide(den_, g);
  }
  GaussRational lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    GaussRational inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

GaussRational Scalar::constant_value() const {
  if (!is_constant()) throw Error("scalar depends on parameters: " + str());
  return num_.constant_value();
}

std::set<std::string> Scalar::parameters() const {
  auto vars = num_.variables();
  vars.merge(den_.variables());
  return vars;
}

Scalar Scalar::conj() const {
  Scalar r;
  r.num_ = num_.conj();
  r.den_ = den_.conj();
  r.canonicalize();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  return Scalar(den_, num_);
}

GaussRational Scalar::evaluate(const ParamAssignment& assignment) const {
  GaussRational d = den_.evaluate(assignment);
  if (d.is_zero()) throw EvaluationError("pole at assignment: denominator " + den_.str() + " vanishes");
  return num_.evaluate(assignment) / d;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) canonicalize();
    else if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) return *this;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string Scalar::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace nqs
