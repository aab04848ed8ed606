#include "doctest.h"
#include "generators.hpp"

using namespace nqs;
using nqs::testing::random_scalar;
using nqs::testing::Rng;

namespace {

Scalar b1() { return Scalar::param("b1"); }
Scalar chi() { return Scalar::param("chi"); }
Scalar kappa() { return Scalar::param("k1"); }

}  // namespace

TEST_SUITE("scalar_field") {
  TEST_CASE("additive inverse") { CHECK((chi() + (-chi())).is_zero()); }

  TEST_CASE("ring arithmetic") {
    Scalar half_b1_sq = b1() * b1() / Scalar(2);
    CHECK(half_b1_sq * Scalar(2) == b1() * b1());
  }

  TEST_CASE("multiplicative inverse") {
    Scalar two_k = Scalar(2) * kappa();
    CHECK((two_k.inverse() * two_k).is_one());
    CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
  }

  TEST_CASE("conjugation") {
    Scalar i = Scalar::imaginary_unit();
    CHECK((Scalar(2) * i * chi()).conj() == Scalar(-2) * i * chi());
    CHECK(kappa().conj() == kappa());
  }

  TEST_CASE("evaluation") {
    ParamAssignment at{{"b1", 2}};
    CHECK((b1() * b1() / Scalar(2)).evaluate(at) == GaussRational(2));
    ParamAssignment pole{{"chi", 1}, {"k1", 0}};
    CHECK_THROWS_AS((chi() / kappa()).evaluate(pole), EvaluationError);
    CHECK_THROWS_AS(chi().evaluate({}), EvaluationError);
  }

  TEST_CASE("canonical form") {
    Scalar x = Scalar::param("x"), y = Scalar::param("y");
    Scalar q = (x * x - y * y) / (x + y);
    CHECK(q == x - y);
    CHECK(q.denominator().is_one());
    Scalar r = (Scalar(2) * x) / (Scalar(4) * x * y + Scalar(2) * x);
    CHECK(r == Scalar(1) / (Scalar(2) * y + Scalar(1)));
    CHECK(r.denominator().leading_coefficient().is_one());
    CHECK(Scalar(r.numerator(), r.denominator()) == r);
  }

  TEST_CASE("printing") {
    CHECK(Scalar(GaussRational::ratio(3, 2)).str() == "3/2");
    CHECK(Scalar::imaginary_unit().str() == "i");
    CHECK((-Scalar::imaginary_unit()).str() == "-i");
    CHECK((Scalar(-2) * chi()).str() == "-2*chi");
    CHECK((b1() * b1() / Scalar(2)).str() == "1/2*b1^2");
  }

  TEST_CASE("field axioms on random scalars") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x - x).is_zero());
      if (!x.is_zero()) CHECK((x / x).is_one());
    }
  }

  TEST_CASE("canonicalization is idempotent") {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
      Scalar x = random_scalar(rng);
      Scalar again(x.numerator(), x.denominator());
      CHECK(again == x);
      CHECK(again.str() == x.str());
    }
  }

  TEST_CASE("conj is an involutive automorphism") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
      Scalar x = random_scalar(rng), y = random_scalar(rng);
      CHECK(x.conj().conj() == x);
      CHECK((x * y).conj() == x.conj() * y.conj());
      CHECK((x + y).conj() == x.conj() + y.conj());
    }
  }

  TEST_CASE("evaluation commutes with conj") {
    Rng rng(14);
    int evaluated = 0;
    for (int trial = 0; trial < 80; ++trial) {
      Scalar x = random_scalar(rng);
      ParamAssignment at{{"x", nqs::testing::random_rational(rng)},
                         {"y", nqs::testing::random_rational(rng)},
                         {"z", nqs::testing::random_rational(rng)}};
      try {
        CHECK(x.conj().evaluate(at) == x.evaluate(at).conj());
        ++evaluated;
      } catch (const EvaluationError&) {
        // landed on a pole
      }
    }
    CHECK(evaluated > 40);
  }

  TEST_CASE("polynomial gcd") {
    Polynomial x = Polynomial::variable("x"), y = Polynomial::variable("y");
    Polynomial g = x * x + y;
    Polynomial p = g * (x - y * y), q = g * (Polynomial(3) * x * y + Polynomial(1));
    CHECK(gcd(p, q) == g);
    CHECK(gcd(Polynomial(), q) == q.monic());
  }
}
