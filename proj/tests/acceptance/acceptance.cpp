// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "nqs/fock_oracle.hpp"
#include "nqs/runner.hpp"
#include "opo.hpp"

using namespace nqs;
using nqs::testing::Opo;
using nqs::testing::Rng;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(NQS_FIXTURE_DIR) + "/" + name);
  if (!in) throw Error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool all_pass(const std::vector<ConditionResidual>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.pass && c.residual.is_zero(); });
}

OpMatrix diag(std::size_t n, const std::vector<Scalar>& d) {
  OpMatrix m(n, d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = OpPoly::constant(n, d[k]);
  return m;
}

Outcome opo_golden() {
  const auto start = Clock::now();
  const std::string source = read_fixture("opo.qs");
  SystemDescription desc = parse_description(source);
  RealizabilityReport r = analyze(desc.system(), desc.analysis_options());
  RunResult run_result = run("check", source);
  const double elapsed = seconds_since(start);
  const auto& cs = r.realizability.conditions;
  const auto zero = std::count_if(cs.begin(), cs.end(), [](const auto& c) { return c.pass && c.residual.is_zero(); });
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld/5 conditions exactly zero, verdict %s, exit %d, %.3f s", static_cast<long>(zero),
                r.verdict().c_str(), run_result.exit_code, elapsed);
  return {zero == 5 && cs.size() == 5 && run_result.exit_code == 0 && elapsed < 1.0, buf};
}

Outcome displayed_matrices() {
  Opo o;
  const SystemDescription desc = parse_description(read_fixture("opo.qs"));
  const DoubledSystem d = double_up(desc.system());
  const CommutationMatrix& th = o.theta;
  const Scalar two_chi = Scalar(2) * o.chi;
  int matched = 0, total = 0;
  auto expect = [&](bool ok) {
    ++total;
    matched += ok ? 1 : 0;
  };

  OpMatrix abar_adj(2, 4, 4);
  abar_adj(0, 0) = o.constant(-o.k1);
  abar_adj(0, 1) = -two_chi * o.a1d;
  abar_adj(0, 2) = two_chi * o.a2;
  abar_adj(1, 0) = two_chi * o.a1;
  abar_adj(1, 1) = o.constant(-o.k2);
  abar_adj(2, 0) = -two_chi * o.a2d;
  abar_adj(2, 2) = o.constant(o.k1);
  abar_adj(2, 3) = two_chi * o.a1;
  abar_adj(3, 2) = -two_chi * o.a1d;
  abar_adj(3, 3) = o.constant(o.k2);
  const OpMatrix lhs = comm_vec_adj(d.drift, d.state, th);
  expect(lhs == abar_adj);
  expect(comm_vec_adj(d.state, d.drift, th) == adjoint_matrix(abar_adj));

  const OpMatrix bjb = matmul(matmul(d.diffusion, d.signature, th), adjoint_matrix(d.diffusion), th);
  expect(bjb == diag(2, {Scalar(2) * o.k1, Scalar(2) * o.k2, Scalar(-2) * o.k1, Scalar(-2) * o.k2}));

  const OpMatrix cj = matmul(comm_adj_vec(d.output, d.state, th), d.signature, th);
  expect(cj == diag(2, {-o.b1, -o.b2, -o.b1, -o.b2}));

  OpVector half_form = comm_scalar_vec(drift_form(d), d.state, th);
  half_form *= Scalar::ratio(1, 6);
  const OpVector expected_form(2, {-o.chi * o.mul(o.a1d, o.a2), Scalar::ratio(1, 2) * o.chi * o.mul(o.a1, o.a1),
                                   -o.chi * o.mul(o.a2d, o.a1), Scalar::ratio(1, 2) * o.chi * o.mul(o.a1d, o.a1d)});
  expect(half_form == expected_form);

  const OpVector expected_target(2, {-two_chi * o.mul(o.a1d, o.a2), o.chi * o.mul(o.a1, o.a1),
                                     -two_chi * o.mul(o.a2d, o.a1), o.chi * o.mul(o.a1d, o.a1d)});
  expect(generator_target(d) == expected_target);

  return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " displayed matrices equal entry for entry"};
}

Outcome extracted_hamiltonian() {
  Opo o;
  const SystemDescription desc = parse_description(read_fixture("opo.qs"));
  const RealizabilityReport r = analyze(desc.system(), desc.analysis_options());
  if (!r.hamiltonian) return {false, "no Hamiltonian extracted"};
  const OpPoly& h = *r.hamiltonian;
  const DoubledSystem d = double_up(desc.system());

  const NormalMonomial up{{2, 0}, {0, 1}}, down{{0, 1}, {2, 0}};
  bool support = h.terms().size() == 2 && h.terms().count(up) && h.terms().count(down);
  bool magnitude = support;
  if (support) {
    for (const auto& [m, c] : h.terms()) magnitude = magnitude && (c * c.conj() == o.chi * o.chi);
  }
  const bool self_adjoint = adjoint(h) == h;
  const bool identity = hamiltonian_generator(d, h) == generator_target(d);
  const bool printed_form_fails = hamiltonian_generator(d, -h) != generator_target(d);
  const bool documented = std::any_of(r.notes.begin(), r.notes.end(), [](const std::string& n) {
    return n.find("sign") != std::string::npos;
  });
  std::string detail = "H = " + to_string(h, desc.modes) + "; self-adjoint " + (self_adjoint ? "yes" : "no") +
                       ", support " + (support ? "ok" : "wrong") + ", |coef| = chi " + (magnitude ? "yes" : "no") +
                       ", -i[abar,H] = Abar - 1/2 BbarCbar " + (identity ? "yes" : "no") +
                       ", opposite sign reproduces " + (printed_form_fails ? "no" : "yes") + ", sign note " +
                       (documented ? "present" : "missing");
  return {support && magnitude && self_adjoint && identity && printed_form_fails && documented, detail};
}

struct RoundTrip {
  int systems = 0;
  int realizable = 0;
  int preserved = 0;
  int recovered = 0;
  int affine = 0;
  int affine_realizable = 0;
  double seconds = 0;
};

RoundTrip round_trip_suite() {
  Rng rng(2024);
  RoundTrip t;
  const auto start = Clock::now();
  for (int trial = 0; trial < 60; ++trial) {
    Oscillator osc = nqs::testing::random_oscillator(rng, 3, 2);
    QSystem s = synthesize(osc);
    DoubledSystem d = double_up(s);
    ++t.systems;
    const bool realizable = check_physical_realizability(d).pass();
    t.realizable += realizable;
    t.preserved += all_pass(check_preservation(d)) && d.noise_commutation == d.signature;
    t.recovered += extract_hamiltonian(d).hamiltonian == nqs::testing::drop_constant(osc.hamiltonian);
    const bool affine = std::all_of(osc.coupling.entries().begin(), osc.coupling.entries().end(),
                                    [](const OpPoly& l) { return l.degree().value_or(0) <= 1; });
    t.affine += affine;
    t.affine_realizable += affine && realizable;
  }
  t.seconds = seconds_since(start);
  return t;
}

Outcome round_trip(const RoundTrip& t) {
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "%d oscillators, %d/%d pass all five conditions, %d/%d recover H exactly, %.2f s; "
                "with affine L only %d/%d pass",
                t.systems, t.realizable, t.systems, t.recovered, t.systems, t.seconds, t.affine_realizable, t.affine);
  return {t.systems >= 50 && t.realizable == t.systems && t.recovered == t.systems && t.seconds < 30.0, buf};
}

Outcome preservation(const RoundTrip& t) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%d synthesized systems pass the three preservation conditions with Tbar = Jbar",
                t.preserved, t.systems);
  return {t.systems >= 50 && t.preserved == t.systems, buf};
}

Outcome algebra_laws() {
  Rng rng(77);
  int instances = 0, failures = 0;
  for (int trial = 0; trial < 220; ++trial) {
    const auto n = static_cast<std::size_t>(nqs::testing::uniform(rng, 1, 3));
    const CommutationMatrix theta = CommutationMatrix::identity(n);
    OpPoly p = nqs::testing::random_oppoly(rng, n, 4, 3, {"x"});
    OpPoly q = nqs::testing::random_oppoly(rng, n, 4, 3);
    OpPoly r = nqs::testing::random_oppoly(rng, n, 4, 3, {"y"});
    auto mul = [&](const OpPoly& u, const OpPoly& v) { return product(u, v, theta); };
    auto com = [&](const OpPoly& u, const OpPoly& v) { return commutator(u, v, theta); };
    bool ok = mul(mul(p, q), r) == mul(p, mul(q, r));
    ok = ok && com(p, mul(q, r)) == mul(com(p, q), r) + mul(q, com(p, r));
    ok = ok && (com(p, com(q, r)) + com(q, com(r, p)) + com(r, com(p, q))).is_zero();
    ok = ok && adjoint(adjoint(p)) == p;
    ok = ok && com(p, q) == -com(q, p);
    ++instances;
    failures += ok ? 0 : 1;
  }
  return {instances >= 200 && failures == 0,
          std::to_string(instances) + " random triples, " + std::to_string(failures) + " law violations"};
}

Outcome oracle_agreement() {
  Rng rng(99);
  int checks = 0, agreed = 0;
  double worst = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(nqs::testing::uniform(rng, 1, 2));
    const std::size_t cutoff = static_cast<std::size_t>(nqs::testing::uniform(rng, 6, 8));
    const CommutationMatrix theta = CommutationMatrix::identity(n);
    const fock::TruncatedRep rep(n, cutoff);
    const unsigned max_degree = cutoff >= 8 ? 3 : 2;
    OpPoly p = nqs::testing::random_oppoly(rng, n, max_degree, 3, {"x"});
    OpPoly q = nqs::testing::random_oppoly(rng, n, max_degree, 3);
    ParamAssignment at{{"x", nqs::testing::random_rational(rng)}};
    for (const auto arith : {fock::Arithmetic::floating, fock::Arithmetic::exact}) {
      for (const auto& c : {fock::check_product(p, q, theta, rep, at, arith),
                            fock::check_commutator(p, q, theta, rep, at, arith)}) {
        ++checks;
        agreed += c.agreement.agree;
        worst = std::max(worst, c.agreement.max_relative_error);
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d products and commutators agree at cutoff 6-8, max relative error %.2e",
                agreed, checks, worst);
  return {checks >= 100 && agreed == checks && worst <= 1e-9, buf};
}

Outcome frontend() {
  int fixtures = 0, idempotent = 0;
  for (const char* name : {"opo.qs", "cavity.qs", "empty.qs", "kerr.qs", "opo_d2.qs", "opo_flipped_b.qs",
                           "opo_creation_output.qs"}) {
    ++fixtures;
    SystemDescription d = parse_description(read_fixture(name));
    const std::string printed = print_description(d);
    SystemDescription again = parse_description(printed);
    idempotent += again == d && print_description(again) == printed;
  }
  RunResult d2 = run("check", read_fixture("opo_d2.qs"));
  RunResult flipped = run("check", read_fixture("opo_flipped_b.qs"));
  const bool d2_named = d2.exit_code == 1 && d2.output.find("FAIL  (5) Dbar = I") != std::string::npos;
  const bool flipped_named =
      flipped.exit_code == 1 && flipped.output.find("FAIL  (4) Bbar = [Cbar^dagger, abar] Jbar") != std::string::npos;
  std::string detail = std::to_string(idempotent) + "/" + std::to_string(fixtures) +
                       " fixtures print/parse idempotent; D = 2I exit " + std::to_string(d2.exit_code) +
                       (d2_named ? " naming condition 5" : " without naming condition 5") + "; flipped B exit " +
                       std::to_string(flipped.exit_code) + (flipped_named ? " naming condition 4" : " without naming condition 4");
  return {idempotent == fixtures && d2_named && flipped_named, detail};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int number, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %d, %s: %s\n", o.pass ? "PASS" : "FAIL", number, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
  };

  RoundTrip rt;
  report(1, "OPO golden fixture", opo_golden);
  report(2, "displayed matrices", displayed_matrices);
  report(3, "extracted OPO Hamiltonian", extracted_hamiltonian);
  report(4, "synthesis round trip", [&] {
    rt = round_trip_suite();
    return round_trip(rt);
  });
  report(5, "algebra laws", algebra_laws);
  report(6, "Fock-space oracle", oracle_agreement);
  report(7, "commutation preservation of synthesized systems", [&] { return preservation(rt); });
  report(8, "frontend", frontend);
  return failed == 0 ? 0 : 1;
}
