#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "nqs/runner.hpp"
#include "opo.hpp"

using namespace nqs;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(NQS_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Diagnostic diagnose(const std::string& source) {
  try {
    parse_description(source);
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  FAIL("expected a parse error for: " << source);
  return {};
}

const std::string kHeader = "params k1 chi\nmodes a1 a2\nchannels 1\n";

}  // namespace

TEST_SUITE("frontend") {
  TEST_CASE("drift expression") {
    SystemDescription d = parse_description(kHeader + "A[1] = -k1*a1 - 2*chi*a1'*a2\n");
    OpPoly a1 = OpPoly::annihilator(2, 0), a2 = OpPoly::annihilator(2, 1), a1d = OpPoly::creator(2, 0);
    Scalar k1 = Scalar::param("k1"), chi = Scalar::param("chi");
    CHECK(d.drift[0] == -k1 * a1 - Scalar(2) * chi * product(a1d, a2, CommutationMatrix::identity(2)));
    CHECK(d.drift[1].is_zero());
    CHECK(d.feedthrough.is_identity());
  }

  TEST_CASE("undeclared identifier") {
    Diagnostic d = diagnose(kHeader + "A[1] = a3\n");
    CHECK(d.kind == Diagnostic::Kind::semantic);
    CHECK(d.line == 4);
    CHECK(d.column == 8);
    CHECK(d.message.find("a3") != std::string::npos);
  }

  TEST_CASE("grammar details") {
    SystemDescription d = parse_description(
        "params x\nmodes a\nchannels 0\n"
        "A[1] = adj(a) + a'' - x^-2*a + (1 + i)'*a^2/2 + 0.25*a\n");
    const CommutationMatrix t = CommutationMatrix::identity(1);
    OpPoly a = OpPoly::annihilator(1, 0), ad = OpPoly::creator(1, 0);
    Scalar x = Scalar::param("x");
    Scalar one_minus_i = Scalar(1) - Scalar::imaginary_unit();
    OpPoly expected = ad + a - (Scalar(1) / (x * x)) * a + one_minus_i / Scalar(2) * product(a, a, t) +
                      Scalar::ratio(1, 4) * a;
    CHECK(d.drift[0] == expected);
    CHECK(parse_description("modes a\nchannels 0\nA[1] = -a^2\n").drift[0] ==
          Scalar(-1) * product(a, a, t));
    CHECK(parse_description("modes a\nchannels 0\nA[1] = (a*a')\n").drift[0] == product(ad, a, t) + OpPoly::constant(1, Scalar(1)));
  }

  TEST_CASE("let definitions") {
    SystemDescription d = parse_description("params b\nlet k = b^2/2\nlet k2 = 2*k\nmodes a\nchannels 0\nA[1] = -k2*a\n");
    Scalar b = Scalar::param("b");
    CHECK(d.drift[0] == Scalar(-1) * b * b * OpPoly::annihilator(1, 0));
    REQUIRE(d.lets.size() == 2);
    CHECK(d.lets[0].second == b * b / Scalar(2));
  }

  TEST_CASE("theta and options") {
    SystemDescription d = parse_description(
        "params t\nmodes a b\nchannels 0\ntheta = [1, i*t; -i*t, 2]\n"
        "option nbar = 3\noption theta_bar = paper\noption monomial_shape = relaxed\n");
    REQUIRE(d.theta.has_value());
    CHECK(d.commutation()(0, 1) == Scalar::imaginary_unit() * Scalar::param("t"));
    CHECK(d.nbar == NbarSpec::fixed(3));
    CHECK(d.theta_bar == ThetaBarConvention::paper);
    CHECK(d.relaxed_shape);
    CHECK_FALSE(parse_description("modes a b\nchannels 0\ntheta = [1, 0; 0, 1]\n").theta.has_value());
  }

  TEST_CASE("diagnostics") {
    CHECK(diagnose("modes a\nA[1] = a $ 2\n").kind == Diagnostic::Kind::lexical);
    CHECK(diagnose("modes a\nA[1] = (a\n").kind == Diagnostic::Kind::syntax);
    CHECK(diagnose("modes a\nA[1] = a +\n").kind == Diagnostic::Kind::syntax);
    CHECK(diagnose("modes a\nfoo = 1\n").message.find("unknown statement") != std::string::npos);
    CHECK(diagnose("modes a\nchannels 1\nB[1][1] = a\n").message.find("scalar") != std::string::npos);
    CHECK(diagnose("modes a\nchannels 1\nD[1][1] = a'\n").message.find("scalar") != std::string::npos);
    CHECK(diagnose("modes a\nchannels 1\nA[2] = a\n").message.find("out of range") != std::string::npos);
    CHECK(diagnose("modes a\nchannels 1\nB[1] = 1\n").message.find("index") != std::string::npos);
    CHECK(diagnose("modes a\nA[1] = a\nA[1] = 2*a\n").message.find("duplicate") != std::string::npos);
    CHECK(diagnose("modes a\nA[1] = a/a\n").message.find("division") != std::string::npos);
    CHECK(diagnose("modes a\nA[1] = a/0\n").message.find("division by zero") != std::string::npos);
    CHECK(diagnose("params x\nmodes x\n").message.find("already declared") != std::string::npos);
    CHECK(diagnose("params i\n").message.find("reserved") != std::string::npos);
    CHECK(diagnose("modes a\ntheta = [1, 1; 1, 1]\n").message.find("row") != std::string::npos);
    CHECK(diagnose("modes a b\ntheta = [1, 2; 3, 1]\n").message.find("Hermitian") != std::string::npos);
    CHECK(diagnose("modes a\nA[1] = a^20\n").message.find("exponent") != std::string::npos);
    CHECK(diagnose("modes a\noption nbar = 0\n").message.find("nbar") != std::string::npos);
    CHECK(diagnose("let k = a\nmodes a\n").kind == Diagnostic::Kind::semantic);
    CHECK(diagnose("modes a\nA[1] = " + std::string(500, '(') + "a\n").message.find("nested") != std::string::npos);
    Diagnostic late = diagnose("modes a\n\n   A[1] = 1 +* a\n");
    CHECK(late.line == 3);
    CHECK(late.column == 14);
  }

  TEST_CASE("fixtures print and reparse to equal descriptions") {
    for (const auto& entry : std::filesystem::directory_iterator(NQS_FIXTURE_DIR)) {
      if (entry.path().extension() != ".qs") continue;
      CAPTURE(entry.path().filename().string());
      SystemDescription d = parse_description(fixture(entry.path().filename().string()));
      std::string printed = print_description(d);
      SystemDescription again = parse_description(printed);
      CHECK(again == d);
      CHECK(print_description(again) == printed);
    }
  }

  TEST_CASE("random descriptions round trip") {
    nqs::testing::Rng rng(71);
    for (int trial = 0; trial < 30; ++trial) {
      SystemDescription d;
      d.name = "random";
      d.params = {"x", "y"};
      d.modes = {"p", "q"};
      d.channels = 2;
      d.drift = OpVector(2, {nqs::testing::random_oppoly(rng, 2, 3, 4, {"x", "y"}),
                             nqs::testing::random_oppoly(rng, 2, 3, 4, {"x"})});
      d.diffusion = OpMatrix::from_scalars(2, 2, 2, {nqs::testing::random_scalar(rng, {"x", "y"}), 0, 0,
                                                     nqs::testing::random_scalar(rng, {"x", "y"})});
      d.output = OpVector(2, {nqs::testing::random_oppoly(rng, 2, 2, 2, {"y"}), OpPoly(2)});
      d.feedthrough = OpMatrix::from_scalars(2, 2, 2, {nqs::testing::random_scalar(rng, {"x"}), 0, 0, 1});
      d.hamiltonian = OpPoly(2);
      d.coupling = OpVector(2, 2);
      CAPTURE(print_description(d));
      CHECK(parse_description(print_description(d)) == d);
    }
  }

  TEST_CASE("parser is total on mangled input") {
    const std::string base = fixture("opo.qs");
    nqs::testing::Rng rng(72);
    const std::string alphabet = "ab12'^*/+-()[];,=#\n i.Ixk";
    int diagnosed = 0;
    for (int trial = 0; trial < 400; ++trial) {
      std::string s = base;
      const int edits = static_cast<int>(nqs::testing::uniform(rng, 1, 6));
      for (int e = 0; e < edits; ++e) {
        const auto pos = static_cast<std::size_t>(nqs::testing::uniform(rng, 0, static_cast<long>(s.size()) - 1));
        switch (nqs::testing::uniform(rng, 0, 2)) {
          case 0: s.erase(pos, 1); break;
          case 1: s.insert(pos, 1, alphabet[static_cast<std::size_t>(nqs::testing::uniform(rng, 0, static_cast<long>(alphabet.size()) - 1))]); break;
          default: s[pos] = static_cast<char>(nqs::testing::uniform(rng, 1, 255)); break;
        }
      }
      try {
        parse_description(s);
      } catch (const ParseError& e) {
        CHECK(e.diagnostic().line >= 1);
        ++diagnosed;
      }
    }
    CHECK(diagnosed > 0);
  }

  TEST_CASE("check on the OPO fixture") {
    RunResult r = run("check", fixture("opo.qs"));
    CHECK(r.exit_code == 0);
    REQUIRE(r.report.has_value());
    CHECK(r.report->verdict == "realizable");
    REQUIRE(r.report->hamiltonian.has_value());
    CHECK(*r.report->hamiltonian == "(-i*chi) * a1'^2 * a2 + (i*chi) * a2' * a1^2");
    CHECK(r.output.find("H = ") != std::string::npos);
  }

  TEST_CASE("negative fixtures name the failing condition") {
    RunResult d2 = run("check", fixture("opo_d2.qs"));
    CHECK(d2.exit_code == 1);
    CHECK(d2.output.find("FAIL  (5) Dbar = I") != std::string::npos);
    RunResult flipped = run("check", fixture("opo_flipped_b.qs"));
    CHECK(flipped.exit_code == 1);
    CHECK(flipped.output.find("FAIL  (4) Bbar = [Cbar^dagger, abar] Jbar") != std::string::npos);
    RunResult creation = run("check", fixture("opo_creation_output.qs"));
    CHECK(creation.exit_code == 1);
    CHECK(creation.output.find("C[1]") != std::string::npos);
  }

  TEST_CASE("synthesize the cavity") {
    RunResult r = run("synthesize", fixture("cavity.qs"));
    CHECK(r.exit_code == 0);
    REQUIRE(r.report.has_value());
    REQUIRE(r.report->synthesized.has_value());
    SystemDescription s = parse_description(*r.report->synthesized);
    SystemDescription expected = parse_description(fixture("cavity.qs"));
    CHECK(s.drift == expected.drift);
    CHECK(s.diffusion == expected.diffusion);
    CHECK(s.output == expected.output);
    CHECK(r.report->synthesized->find("A[1] = (-1/2*g^2) * a1") != std::string::npos);
  }

  TEST_CASE("input errors exit with 2") {
    CHECK(run("check", "modes a\nA[1] = b\n").exit_code == 2);
    CHECK(run("frobnicate", fixture("opo.qs")).exit_code == 2);
    CHECK(run("synthesize", fixture("opo.qs")).exit_code == 2);
    RunOptions oracle;
    oracle.oracle_cutoff = 6;
    CHECK(run("check", fixture("opo.qs"), oracle).exit_code == 2);  // parameters missing
  }

  TEST_CASE("oracle cross-check from the runner") {
    RunOptions o;
    o.oracle_cutoff = 6;
    o.params = parse_assignments("b1=1, b2=1/2,chi=0.3");
    CHECK(o.params.at("chi") == mpq_class(3, 10));
    RunResult r = run("check", fixture("opo.qs"), o);
    CHECK(r.exit_code == 0);
    REQUIRE(r.report.has_value());
    CHECK_FALSE(r.report->oracle.empty());
    CHECK_THROWS_AS(parse_assignments("b1"), Error);
    CHECK_THROWS_AS(parse_assignments("b1=1/0"), Error);
  }

  TEST_CASE("flags override file options") {
    RunOptions o;
    o.nbar = NbarSpec::literal();
    RunResult r = run("check", fixture("opo.qs"), o);
    CHECK(r.exit_code == 1);
    CHECK(r.report->extraction_mode == "literal");
  }

  TEST_CASE("structured reports round trip and are deterministic") {
    RunOptions o;
    o.format = Report::Format::structured;
    for (const char* command : {"check", "extract", "explain"}) {
      RunResult r = run(command, fixture("opo.qs"), o);
      REQUIRE(r.report.has_value());
      CHECK(report_from_json(r.output) == *r.report);
      CHECK(to_json(report_from_json(r.output)) == r.output);
      CHECK(run(command, fixture("opo.qs"), o).output == r.output);
    }
    RunResult s = run("synthesize", fixture("kerr.qs"), o);
    CHECK(report_from_json(s.output) == *s.report);
    CHECK(s.output.find("\"schema\": 1") != std::string::npos);
    CHECK_THROWS_AS(report_from_json("{}"), Error);
    CHECK_THROWS_AS(report_from_json("not json"), Error);
  }

  TEST_CASE("explain shows the intermediate matrices") {
    RunResult r = run("explain", fixture("opo.qs"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[Abar, abar^dagger] =") != std::string::npos);
    CHECK(r.output.find("Abar - 1/2 Bbar Cbar =") != std::string::npos);
    CHECK(r.output.find("nbar = 3") != std::string::npos);
  }
}
