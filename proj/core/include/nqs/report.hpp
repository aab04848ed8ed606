#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nqs/error.hpp"
#include "nqs/realizability.hpp"

namespace nqs {

/// Printed matrix, row-major.
struct MatrixText {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> cells;

  friend bool operator==(const MatrixText&, const MatrixText&) = default;
};

MatrixText render(const OpMatrix& m, const ModeNames& names);
MatrixText render(const OpVector& v, const ModeNames& names);
/// Bracketed block layout, one line per row.
std::string layout(const MatrixText& m);

struct ConditionText {
  std::string name;
  bool pass = false;
  MatrixText residual;

  friend bool operator==(const ConditionText&, const ConditionText&) = default;
};

struct OracleText {
  std::string what;
  bool agree = false;
  double max_relative_error = 0.0;
  std::size_t compared = 0;

  friend bool operator==(const OracleText&, const OracleText&) = default;
};

/// Printed analysis result shared by every output format.
struct Report {
  enum class Format { text, structured };

  int schema = 1;
  std::string command = "check";
  Format format = Format::text;
  std::string system_name;
  std::vector<std::string> mode_names;

  bool class_pass = false;
  bool shape_pass = false;
  std::vector<std::string> shape_violations;
  std::vector<ConditionText> class_conditions;
  std::string class_nbar;
  std::optional<unsigned> class_nbar_used;

  std::vector<ConditionText> preservation;
  std::vector<ConditionText> realizability;
  bool premise_ok = true;
  std::string premise_note;

  std::optional<std::string> hamiltonian;  ///< set when realizable
  std::vector<std::string> coupling;       ///< set when realizable
  std::string extracted_hamiltonian;       ///< always, possibly advisory
  bool extraction_self_adjoint = false;
  bool extraction_reproduces = false;
  bool extraction_advisory = false;
  std::optional<unsigned> extraction_nbar_used;

  std::optional<unsigned> nbar_literal;
  std::vector<unsigned> nbar_graded;
  std::string theta_bar;
  std::string extraction_mode;
  std::string verdict;
  std::vector<std::string> notes;

  std::vector<std::pair<std::string, MatrixText>> displays;  ///< explain only
  std::optional<std::string> synthesized;                    ///< synthesize only
  std::optional<unsigned> oracle_cutoff;
  std::vector<OracleText> oracle;

  friend bool operator==(const Report&, const Report&) = default;
};

Report make_report(const RealizabilityReport& r, const std::string& command);

/// Intermediate matrices of the realizability argument, in the order they are usually displayed.
std::vector<std::pair<std::string, MatrixText>> realizability_displays(const QSystem& s, const RealizabilityReport& r);

std::string to_json(const Report& r);
/// Throws Error on malformed input or an unsupported schema.
Report report_from_json(const std::string& text);
std::string to_text(const Report& r);

}  // namespace nqs
