#include "nqs/runner.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nqs/fock_oracle.hpp"

namespace nqs {

namespace {

const std::set<std::string> kCommands = {"check", "extract", "synthesize", "explain"};

mpq_class parse_rational(const std::string& text) {
  std::string t = text;
  bool negative = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    negative = t[0] == '-';
    t.erase(0, 1);
  }
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  mpq_class v;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw Error("malformed rational '" + text + "'");
    mpz_class d(den, 10);
    if (d == 0) throw Error("zero denominator in '" + text + "'");
    v = mpq_class(mpz_class(num, 10), d);
  } else if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string whole = t.substr(0, dot), frac = t.substr(dot + 1);
    if (!digits(frac) || (!whole.empty() && !digits(whole))) throw Error("malformed number '" + text + "'");
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    v = mpq_class(mpz_class((whole.empty() ? "0" : whole) + frac, 10), den);
  } else {
    if (!digits(t)) throw Error("malformed number '" + text + "'");
    v = mpq_class(mpz_class(t, 10));
  }
  v.canonicalize();
  return negative ? mpq_class(-v) : v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

RunResult input_error(std::string message) {
  RunResult r;
  r.exit_code = exit_input_error;
  r.diagnostic = std::move(message);
  return r;
}

std::vector<OracleText> oracle_checks(const QSystem& s, const RealizabilityReport& rep, unsigned cutoff,
                                      const ParamAssignment& params) {
  const DoubledSystem d = double_up(s, rep.options.convention);
  const CommutationMatrix& theta = d.algebra();
  const fock::TruncatedRep basis(s.modes(), cutoff);
  const ModeNames& names = rep.mode_names;
  std::vector<OracleText> out;
  auto record = [&](const fock::OracleCheck& c) {
    out.push_back({c.what, c.agreement.agree, c.agreement.max_relative_error, c.agreement.compared});
  };
  for (std::size_t j = 0; j < d.state.size(); ++j) {
    for (std::size_t k = 0; k < d.state.size(); ++k) {
      auto c = fock::check_commutator(d.drift[j], adjoint(d.state[k]), theta, basis, params, fock::Arithmetic::exact);
      c.what = "[Abar" + std::to_string(j + 1) + ", abar" + std::to_string(k + 1) + "^dagger]";
      record(c);
    }
  }
  const OpPoly& h = rep.extraction.hamiltonian;
  auto adj = fock::check_adjoint(h, theta, basis, params, fock::Arithmetic::exact);
  adj.what = "H^dagger, H = " + to_string(h, names);
  record(adj);
  for (std::size_t j = 0; j < d.state.size(); ++j) {
    auto c = fock::check_commutator(d.state[j], h, theta, basis, params, fock::Arithmetic::exact);
    c.what = "[abar" + std::to_string(j + 1) + ", H]";
    record(c);
  }
  return out;
}

}  // namespace

ParamAssignment parse_assignments(const std::string& text) {
  ParamAssignment out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("expected name=value, got '" + item + "'");
      std::string name = trim(item.substr(0, eq));
      if (name.empty()) throw Error("missing parameter name in '" + item + "'");
      out[name] = parse_rational(trim(item.substr(eq + 1)));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

RunResult run(const std::string& command, const std::string& source, const RunOptions& options) {
  if (!kCommands.count(command)) return input_error("unknown command '" + command + "'");

  SystemDescription desc;
  try {
    desc = parse_description(source);
  } catch (const ParseError& e) {
    return input_error(e.what());
  }

  AnalysisOptions analysis = desc.analysis_options();
  if (options.nbar) analysis.nbar = *options.nbar;
  if (options.theta_bar) analysis.convention = *options.theta_bar;
  analysis.relaxed_shape = analysis.relaxed_shape || options.relaxed_shape;

  RunResult result;
  try {
    QSystem system;
    std::optional<std::string> synthesized;
    if (command == "synthesize") {
      Oscillator osc = desc.oscillator();
      osc.validate();
      system = synthesize(osc);
      system.name = desc.name;
      SystemDescription out = describe(system, desc.params);
      out.lets = desc.lets;
      synthesized = print_description(out);
    } else {
      system = desc.system();
    }

    RealizabilityReport analysis_report = analyze(system, analysis);
    Report report = make_report(analysis_report, command);
    report.format = options.format;
    report.synthesized = synthesized;
    if (command == "explain") report.displays = realizability_displays(system, analysis_report);

    if (options.oracle_cutoff) {
      report.oracle_cutoff = options.oracle_cutoff;
      report.oracle = oracle_checks(system, analysis_report, *options.oracle_cutoff, options.params);
    }
    bool oracle_ok = std::all_of(report.oracle.begin(), report.oracle.end(), [](const auto& o) { return o.agree; });

    if (command == "synthesize") {
      result.exit_code = oracle_ok ? exit_success : exit_failed;
    } else if (command == "extract") {
      result.exit_code = analysis_report.realizable() && analysis_report.extraction.reproduction.pass && oracle_ok
                             ? exit_success
                             : exit_failed;
    } else {
      result.exit_code = analysis_report.all_pass() && oracle_ok ? exit_success : exit_failed;
    }
    result.output = options.format == Report::Format::structured ? to_json(report) : to_text(report);
    result.report = std::move(report);
  } catch (const Error& e) {
    return input_error(desc.name + ": " + e.what());
  } catch (const std::exception& e) {
    return input_error(desc.name + ": internal error: " + e.what());
  }
  return result;
}

}  // namespace nqs
