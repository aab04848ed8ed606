#include "doctest.h"
#include "generators.hpp"
#include "opo.hpp"

using namespace nqs;
using nqs::testing::Opo;

namespace {

QSystem cavity() {
  Scalar g = Scalar::param("g");
  QSystem s = QSystem::zero(1, 1, CommutationMatrix::identity(1));
  s.name = "cavity";
  s.drift[0] = Scalar(-1) * g * g / Scalar(2) * OpPoly::annihilator(1, 0);
  s.diffusion(0, 0) = OpPoly::constant(1, -g);
  s.output[0] = g * OpPoly::annihilator(1, 0);
  return s;
}

}  // namespace

TEST_SUITE("system_model") {
  TEST_CASE("doubling the OPO") {
    Opo o;
    DoubledSystem d = double_up(o.system());
    REQUIRE(d.drift.size() == 4);
    CHECK(d.drift[0] == o.drift1());
    CHECK(d.drift[1] == o.drift2());
    CHECK(d.drift[2] == adjoint(o.drift1()));
    CHECK(d.drift[3] == adjoint(o.drift2()));
    OpMatrix b = OpMatrix::from_scalars(2, 4, 4, {-o.b1, 0, 0, 0, 0, -o.b2, 0, 0, 0, 0, -o.b1, 0, 0, 0, 0, -o.b2});
    CHECK(d.diffusion == b);
    CHECK(d.noise_commutation == d.signature);
    CHECK(d.theta == OpMatrix::from_scalars(2, 4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1}));
  }

  TEST_CASE("doubling the empty system") {
    DoubledSystem d = double_up(QSystem::zero(0, 0, CommutationMatrix::identity(0)));
    CHECK(d.state.size() == 0);
    CHECK(d.drift.size() == 0);
    CHECK(d.diffusion.rows() == 0);
  }

  TEST_CASE("Theta-bar conventions") {
    Scalar t = Scalar::param("t");
    Scalar i = Scalar::imaginary_unit();
    CommutationMatrix theta(2, {Scalar(1), t * i, -t * i, Scalar(1)});
    QSystem s = QSystem::zero(2, 0, theta);
    DoubledSystem physical = double_up(s);
    DoubledSystem paper = double_up(s, ThetaBarConvention::paper);
    CHECK(comm_vec_adj(physical.state, physical.state, theta) == physical.theta);
    CHECK(physical.theta(2, 3) == OpPoly::constant(2, t * i));
    CHECK(paper.theta(2, 3) == OpPoly::constant(2, -t * i));
    CHECK(paper.theta(2, 2) == OpPoly::constant(2, Scalar(1)));
    CHECK(parse_theta_bar("paper") == ThetaBarConvention::paper);
    CHECK_FALSE(parse_theta_bar("other").has_value());
  }

  TEST_CASE("doubled drift is conjugation coherent") {
    nqs::testing::Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      QSystem s = QSystem::zero(2, 1, CommutationMatrix::identity(2));
      s.drift[0] = nqs::testing::random_oppoly(rng, 2, 3, 3, {"x"});
      s.drift[1] = nqs::testing::random_oppoly(rng, 2, 3, 3);
      DoubledSystem d = double_up(s);
      for (std::size_t j = 0; j < 2; ++j) CHECK(d.drift[2 + j] == adjoint(d.drift[j]));
    }
  }

  TEST_CASE("class check on the OPO") {
    Opo o;
    ClassReport r = class_check(o.system(), {NbarSpec::fixed(3)});
    CHECK(r.shape_pass);
    CHECK(r.coupling_commutes.pass);
    CHECK(r.drift_symmetric.pass);
    CHECK(r.generator_identity.pass);
    CHECK(class_check(o.system()).pass());
  }

  TEST_CASE("creation operator in the output fails the class") {
    Opo o;
    QSystem s = o.system();
    s.output[0] = o.a1d;
    ClassReport r = class_check(s);
    CHECK_FALSE(r.shape_pass);
    REQUIRE(r.shape_violations.size() == 1);
    CHECK(r.shape_violations[0].entry == "C[1]");
    CHECK_FALSE(r.coupling_commutes.pass);
  }

  TEST_CASE("multi-generator monomials and the relaxed shape") {
    QSystem s = QSystem::zero(3, 0, CommutationMatrix::identity(3));
    OpPoly a1 = OpPoly::annihilator(3, 0), a2 = OpPoly::annihilator(3, 1), a3d = OpPoly::creator(3, 2);
    s.drift[0] = product(product(a1, a2, CommutationMatrix::identity(3)), a3d, CommutationMatrix::identity(3));
    CHECK_FALSE(class_check(s).shape_pass);
    CHECK(class_check(s, {NbarSpec::graded(), ThetaBarConvention::physical, true}).shape_pass);
  }

  TEST_CASE("linear cavity is in the class") {
    ClassReport r = class_check(cavity());
    CHECK(r.pass());
  }

  TEST_CASE("nbar") {
    Opo o;
    CHECK(literal_nbar(o.system()) == 2);
    CHECK(graded_nbar(double_up(o.system())) == std::set<unsigned>{3});
    QSystem s = QSystem::zero(1, 0, CommutationMatrix::identity(1));
    s.drift[0] = Scalar::param("k") * OpPoly::annihilator(1, 0) * Scalar(-1);
    CHECK(literal_nbar(s) == 1);
    CHECK_THROWS_AS(literal_nbar(QSystem::zero(1, 0, CommutationMatrix::identity(1))), Error);
    CHECK(parse_nbar("3") == NbarSpec::fixed(3));
    CHECK(parse_nbar("graded") == NbarSpec::graded());
    CHECK_FALSE(parse_nbar("0").has_value());
    CHECK_FALSE(parse_nbar("-1").has_value());
  }

  TEST_CASE("literal nbar does not reproduce the OPO generator") {
    Opo o;
    ClassReport r = class_check(o.system(), {NbarSpec::literal()});
    CHECK(r.nbar_used == 2u);
    CHECK_FALSE(r.generator_identity.pass);
  }

  TEST_CASE("canonical Ito table") {
    NoiseModel two = canonical_ito_table(2);
    CHECK(two.ito == std::vector<Scalar>{1, 0, 0, 1});
    CHECK(two.commutation == std::vector<Scalar>{1, 0, 0, 1});
    CHECK(two.is_canonical());
    NoiseModel none = canonical_ito_table(0);
    CHECK(none.ito.empty());
    CHECK(none.commutation.empty());
  }

  TEST_CASE("validation") {
    QSystem s = QSystem::zero(2, 1, CommutationMatrix::identity(2));
    CHECK_NOTHROW(s.validate());
    s.feedthrough(0, 0) = OpPoly::annihilator(2, 0);
    CHECK_THROWS_AS(s.validate(), Error);
    QSystem t = QSystem::zero(2, 1, CommutationMatrix::identity(2));
    t.output = OpVector(2, 2);
    CHECK_THROWS_AS(t.validate(), DimensionMismatch);
  }
}
