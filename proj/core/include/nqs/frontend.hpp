#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nqs/error.hpp"
#include "nqs/realizability.hpp"

namespace nqs {

/// Location-tagged input problem.
struct Diagnostic {
  enum class Kind { lexical, syntax, semantic };
  Kind kind = Kind::syntax;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string str() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic d) : Error(d.str()), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

/// Contents of a `.qs` file.
struct SystemDescription {
  std::string name = "system";
  std::vector<std::string> params;
  std::vector<std::pair<std::string, Scalar>> lets;  ///< parameter definitions, in file order
  ModeNames modes;
  std::size_t channels = 0;
  std::optional<std::vector<Scalar>> theta;  ///< row-major; nullopt means identity

  OpVector drift;
  OpMatrix diffusion;
  OpVector output;
  OpMatrix feedthrough;

  bool has_oscillator = false;
  OpPoly hamiltonian;
  OpVector coupling;

  NbarSpec nbar = NbarSpec::graded();
  ThetaBarConvention theta_bar = ThetaBarConvention::physical;
  bool relaxed_shape = false;

  CommutationMatrix commutation() const;
  QSystem system() const;
  /// Throws Error when the file has no oscillator block.
  Oscillator oscillator() const;
  AnalysisOptions analysis_options() const;

  friend bool operator==(const SystemDescription&, const SystemDescription&) = default;
};

/// Parses `.qs` text. Every failure is a ParseError carrying line and column.
SystemDescription parse_description(const std::string& source);

/// Canonical `.qs` text; parse_description(print_description(d)) == d.
std::string print_description(const SystemDescription& d);

/// Description of a QSystem (e.g. a synthesized one) using the given names.
SystemDescription describe(const QSystem& s, std::vector<std::string> params = {});

}  // namespace nqs
