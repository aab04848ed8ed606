#include "nqs/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace nqs {

using nlohmann::json;

MatrixText render(const OpMatrix& m, const ModeNames& names) {
  MatrixText t{m.rows(), m.cols(), {}};
  t.cells.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t.cells.push_back(to_string(m(r, c), names));
  return t;
}

MatrixText render(const OpVector& v, const ModeNames& names) { return render(OpMatrix::column(v), names); }

std::string layout(const MatrixText& m) {
  if (m.rows == 0 || m.cols == 0) return "[]\n";
  std::vector<std::size_t> width(m.cols, 0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) width[c] = std::max(width[c], m.cells[r * m.cols + c].size());
  std::string out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    out += "[ ";
    for (std::size_t c = 0; c < m.cols; ++c) {
      const std::string& cell = m.cells[r * m.cols + c];
      out += cell + std::string(width[c] - cell.size(), ' ');
      out += c + 1 < m.cols ? " | " : " ]\n";
    }
  }
  return out;
}

namespace {

ConditionText text_of(const ConditionResidual& c, const ModeNames& names) {
  return {c.name, c.pass, render(c.residual, names)};
}

ModeNames names_for(const RealizabilityReport& r) {
  std::size_t n = r.extraction.hamiltonian.modes();
  return r.mode_names.size() >= n ? r.mode_names : default_mode_names(n);
}

}  // namespace

Report make_report(const RealizabilityReport& r, const std::string& command) {
  const ModeNames names = names_for(r);
  Report out;
  out.command = command;
  out.system_name = r.system_name;
  out.mode_names = names;

  const ClassReport& c = r.class_report;
  out.class_pass = c.pass();
  out.shape_pass = c.shape_pass;
  for (const auto& v : c.shape_violations) out.shape_violations.push_back(v.entry + ": " + to_string(v.term, names));
  out.class_conditions = {text_of(c.coupling_commutes, names), text_of(c.drift_symmetric, names),
                          text_of(c.generator_identity, names)};
  out.class_nbar = c.nbar.str();
  out.class_nbar_used = c.nbar_used;

  for (const auto& p : r.preservation) out.preservation.push_back(text_of(p, names));
  for (const auto& p : r.realizability.conditions) out.realizability.push_back(text_of(p, names));
  out.premise_ok = r.realizability.premise_ok;
  out.premise_note = r.realizability.premise_note;

  if (r.hamiltonian) out.hamiltonian = to_string(*r.hamiltonian, names);
  if (r.coupling)
    for (const auto& l : r.coupling->entries()) out.coupling.push_back(to_string(l, names));
  out.extracted_hamiltonian = to_string(r.extraction.hamiltonian, names);
  out.extraction_self_adjoint = r.extraction.self_adjoint;
  out.extraction_reproduces = r.extraction.reproduction.pass;
  out.extraction_advisory = r.extraction.advisory;
  out.extraction_nbar_used = r.extraction.nbar_used;

  out.nbar_literal = r.nbar_literal;
  out.nbar_graded.assign(r.nbar_graded.begin(), r.nbar_graded.end());
  out.theta_bar = to_string(r.options.convention);
  out.extraction_mode = r.options.nbar.str();
  out.verdict = r.verdict();
  out.notes = r.notes;
  return out;
}

std::vector<std::pair<std::string, MatrixText>> realizability_displays(const QSystem& s,
                                                                       const RealizabilityReport& r) {
  const ModeNames names = names_for(r);
  const DoubledSystem d = double_up(s, r.options.convention);
  const CommutationMatrix& theta = d.algebra();
  std::vector<std::pair<std::string, MatrixText>> out;
  out.emplace_back("[Abar, abar^dagger]", render(comm_vec_adj(d.drift, d.state, theta), names));
  out.emplace_back("[abar, Abar^dagger]", render(comm_vec_adj(d.state, d.drift, theta), names));
  OpMatrix bj = matmul(d.diffusion, d.signature, theta);
  out.emplace_back("Bbar Jbar Bbar^dagger", render(matmul(bj, adjoint_matrix(d.diffusion), theta), names));
  out.emplace_back("[Cbar^dagger, abar] Jbar",
                   render(matmul(comm_adj_vec(d.output, d.state, theta), d.signature, theta), names));
  unsigned nbar = 0;
  if (r.class_report.nbar_used) nbar = *r.class_report.nbar_used;
  else if (!r.nbar_graded.empty()) nbar = *r.nbar_graded.rbegin();
  if (nbar > 0) {
    OpVector v = comm_scalar_vec(drift_form(d), d.state, theta);
    v *= Scalar::ratio(1, 2 * static_cast<long>(nbar));
    out.emplace_back("(1/2nbar) [Abar^dagger Theta-bar^-1 abar, abar], nbar = " + std::to_string(nbar),
                     render(v, names));
  }
  out.emplace_back("Abar - 1/2 Bbar Cbar", render(generator_target(d), names));
  out.emplace_back("-i[abar, H]", render(hamiltonian_generator(d, r.extraction.hamiltonian), names));
  return out;
}

// ---------------------------------------------------------------------------
// Structured form

namespace {

json matrix_json(const MatrixText& m) { return {{"rows", m.rows}, {"cols", m.cols}, {"entries", m.cells}}; }

MatrixText matrix_from(const json& j) {
  MatrixText m{j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
               j.at("entries").get<std::vector<std::string>>()};
  if (m.cells.size() != m.rows * m.cols) throw Error("report matrix has the wrong number of entries");
  return m;
}

json conditions_json(const std::vector<ConditionText>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", matrix_json(c.residual)}});
  return a;
}

std::vector<ConditionText> conditions_from(const json& a) {
  std::vector<ConditionText> out;
  for (const auto& c : a) out.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), matrix_from(c.at("residual"))});
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string to_json(const Report& r) {
  json j;
  j["schema"] = r.schema;
  j["command"] = r.command;
  j["format"] = r.format == Report::Format::text ? "text" : "structured";
  j["system_name"] = r.system_name;
  j["modes"] = r.mode_names;
  j["class"] = {{"pass", r.class_pass},
                {"shape", {{"pass", r.shape_pass}, {"violations", r.shape_violations}}},
                {"conditions", conditions_json(r.class_conditions)},
                {"nbar", r.class_nbar},
                {"nbar_used", optional_json(r.class_nbar_used)}};
  j["preservation"] = conditions_json(r.preservation);
  j["realizability"] = conditions_json(r.realizability);
  j["premise"] = {{"ok", r.premise_ok}, {"note", r.premise_note}};
  j["hamiltonian"] = optional_json(r.hamiltonian);
  j["coupling"] = r.coupling;
  j["extraction"] = {{"hamiltonian", r.extracted_hamiltonian},
                     {"self_adjoint", r.extraction_self_adjoint},
                     {"reproduces_drift", r.extraction_reproduces},
                     {"advisory", r.extraction_advisory},
                     {"nbar_used", optional_json(r.extraction_nbar_used)}};
  j["nbar"] = {{"literal", optional_json(r.nbar_literal)}, {"graded", r.nbar_graded}};
  j["conventions"] = {{"theta_bar", r.theta_bar}, {"extraction_mode", r.extraction_mode}};
  j["verdict"] = r.verdict;
  j["notes"] = r.notes;
  json displays = json::array();
  for (const auto& [name, m] : r.displays) displays.push_back({{"name", name}, {"matrix", matrix_json(m)}});
  j["displays"] = displays;
  j["synthesized"] = optional_json(r.synthesized);
  json oracle = json::array();
  for (const auto& o : r.oracle)
    oracle.push_back({{"what", o.what},
                      {"agree", o.agree},
                      {"max_relative_error", o.max_relative_error},
                      {"compared", o.compared}});
  j["oracle"] = {{"cutoff", optional_json(r.oracle_cutoff)}, {"checks", oracle}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Report r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != 1) throw Error("unsupported report schema " + std::to_string(r.schema));
    r.command = j.at("command").get<std::string>();
    const auto format = j.at("format").get<std::string>();
    if (format != "text" && format != "structured") throw Error("unknown report format '" + format + "'");
    r.format = format == "text" ? Report::Format::text : Report::Format::structured;
    r.system_name = j.at("system_name").get<std::string>();
    r.mode_names = j.at("modes").get<std::vector<std::string>>();
    const json& c = j.at("class");
    r.class_pass = c.at("pass").get<bool>();
    r.shape_pass = c.at("shape").at("pass").get<bool>();
    r.shape_violations = c.at("shape").at("violations").get<std::vector<std::string>>();
    r.class_conditions = conditions_from(c.at("conditions"));
    r.class_nbar = c.at("nbar").get<std::string>();
    r.class_nbar_used = optional_from<unsigned>(c.at("nbar_used"));
    r.preservation = conditions_from(j.at("preservation"));
    r.realizability = conditions_from(j.at("realizability"));
    r.premise_ok = j.at("premise").at("ok").get<bool>();
    r.premise_note = j.at("premise").at("note").get<std::string>();
    r.hamiltonian = optional_from<std::string>(j.at("hamiltonian"));
    r.coupling = j.at("coupling").get<std::vector<std::string>>();
    const json& e = j.at("extraction");
    r.extracted_hamiltonian = e.at("hamiltonian").get<std::string>();
    r.extraction_self_adjoint = e.at("self_adjoint").get<bool>();
    r.extraction_reproduces = e.at("reproduces_drift").get<bool>();
    r.extraction_advisory = e.at("advisory").get<bool>();
    r.extraction_nbar_used = optional_from<unsigned>(e.at("nbar_used"));
    r.nbar_literal = optional_from<unsigned>(j.at("nbar").at("literal"));
    r.nbar_graded = j.at("nbar").at("graded").get<std::vector<unsigned>>();
    r.theta_bar = j.at("conventions").at("theta_bar").get<std::string>();
    r.extraction_mode = j.at("conventions").at("extraction_mode").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& d : j.at("displays")) r.displays.emplace_back(d.at("name").get<std::string>(), matrix_from(d.at("matrix")));
    r.synthesized = optional_from<std::string>(j.at("synthesized"));
    r.oracle_cutoff = optional_from<unsigned>(j.at("oracle").at("cutoff"));
    for (const auto& o : j.at("oracle").at("checks"))
      r.oracle.push_back({o.at("what").get<std::string>(), o.at("agree").get<bool>(),
                          o.at("max_relative_error").get<double>(), o.at("compared").get<std::size_t>()});
    return r;
  } catch (const json::exception& ex) {
    throw Error(std::string("malformed report: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string indent(const std::string& block, const std::string& pad) {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

std::string status(bool pass) { return pass ? "pass" : "FAIL"; }

void condition_lines(std::ostringstream& out, const std::vector<ConditionText>& cs, bool numbered, bool residuals) {
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& c = cs[k];
    std::string label = numbered ? "(" + std::to_string(k + 1) + ") " + c.name : c.name;
    out << "    " << status(c.pass) << "  " << label << "\n";
    if (residuals || !c.pass) out << indent(layout(c.residual), "          ");
  }
}

}  // namespace

std::string to_text(const Report& r) {
  const bool explain = r.command == "explain";
  std::ostringstream out;
  out << "system " << r.system_name << ": " << r.verdict << "\n";

  out << "  class membership: " << status(r.class_pass) << " (nbar " << r.class_nbar;
  if (r.class_nbar_used) out << " = " << *r.class_nbar_used;
  out << ")\n";
  out << "    " << status(r.shape_pass) << "  monomial shape\n";
  for (const auto& v : r.shape_violations) out << "          " << v << "\n";
  condition_lines(out, r.class_conditions, false, explain);

  out << "  commutation preservation:\n";
  condition_lines(out, r.preservation, true, explain);
  out << "  physical realizability (T = J):\n";
  if (!r.premise_ok) out << "    premise: " << r.premise_note << "\n";
  condition_lines(out, r.realizability, true, explain);

  out << "  nbar: literal ";
  if (r.nbar_literal) out << *r.nbar_literal;
  else out << "-";
  out << ", graded {";
  for (std::size_t k = 0; k < r.nbar_graded.size(); ++k) out << (k ? ", " : "") << r.nbar_graded[k];
  out << "}\n";
  out << "  conventions: theta_bar " << r.theta_bar << ", extraction " << r.extraction_mode << "\n";

  if (r.hamiltonian) {
    out << "  H = " << *r.hamiltonian << "\n";
    for (std::size_t j = 0; j < r.coupling.size(); ++j) out << "  Lbar[" << j + 1 << "] = " << r.coupling[j] << "\n";
  } else if (r.command == "extract" || explain) {
    out << "  H (advisory) = " << r.extracted_hamiltonian << "\n";
  }
  if (r.command == "extract" || explain) {
    out << "  extraction: self-adjoint " << (r.extraction_self_adjoint ? "yes" : "no") << ", reproduces drift "
        << (r.extraction_reproduces ? "yes" : "no") << "\n";
  }

  for (const auto& [name, m] : r.displays) out << "  " << name << " =\n" << indent(layout(m), "    ");

  if (r.oracle_cutoff) {
    out << "  Fock-space cross-check, cutoff " << *r.oracle_cutoff << ":\n";
    for (const auto& o : r.oracle) {
      out << "    " << (o.agree ? "pass" : "FAIL") << "  " << o.what << " (" << o.compared << " elements";
      if (o.max_relative_error > 0) out << ", max rel. error " << o.max_relative_error;
      out << ")\n";
    }
  }
  if (!r.notes.empty()) {
    out << "  notes:\n";
    for (const auto& n : r.notes) out << "    - " << n << "\n";
  }
  if (r.synthesized) out << "\n" << *r.synthesized;
  return out.str();
}

}  // namespace nqs
