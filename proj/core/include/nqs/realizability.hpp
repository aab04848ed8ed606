#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nqs/system.hpp"

namespace nqs {

/// Commutation-preservation conditions under the system's own T-bar:
///   [Abar, abar^dagger] + [abar, Abar^dagger] + Bbar T Bbar^dagger = 0,
///   [Bbar, abar^dagger] = 0, [abar, Bbar^dagger] = 0.
/// The last two are three-index conditions; their residuals are laid out with one
/// row per Bbar entry (j,k) flattened as j * cols + k and one column per abar entry.
std::vector<ConditionResidual> check_preservation(const DoubledSystem& d);

struct RealizabilityCheck {
  std::vector<ConditionResidual> conditions;  ///< five, in fixed order
  bool premise_ok = true;                     ///< T-bar equals J-bar
  std::string premise_note;

  bool pass() const;
};

/// Physical-realizability conditions with T-bar = J-bar: the three preservation
/// conditions, Bbar = [Cbar^dagger, abar] Jbar, and Dbar = I.
RealizabilityCheck check_physical_realizability(const DoubledSystem& d);

struct Extraction {
  OpPoly hamiltonian;
  NbarSpec mode;
  std::optional<unsigned> nbar_used;
  bool self_adjoint = false;
  ConditionResidual reproduction;  ///< -i[abar, H] - (Abar - 1/2 Bbar Cbar)
  bool advisory = false;           ///< extracted although the realizability conditions fail
};

/// Throws DivisionByZero when Theta-bar is singular.
Extraction extract_hamiltonian(const DoubledSystem& d, const NbarSpec& mode = NbarSpec::graded());
OpVector extract_coupling(const DoubledSystem& d);

/// Open oscillator (H, L) with self-adjoint H and annihilation-only coupling L.
struct Oscillator {
  std::string name = "oscillator";
  ModeNames mode_names;  ///< empty means a1..an
  CommutationMatrix theta;
  OpPoly hamiltonian;
  OpVector coupling;

  /// Throws Error when H is not self-adjoint or some L_j contains a creation operator.
  void validate() const;
};

/// Drift A = 1/2 [L^dagger, a] L - i[a, H], B = [L^dagger, a], C = L, D = I, canonical noise.
QSystem synthesize(const Oscillator& osc);

/// Lbar = [L; L*].
OpVector doubled_coupling(const OpVector& coupling);

/// Residuals of the four oscillator-representation equations for (Hbar, Lbar):
///   Abar = 1/2 [Lbar^dagger, abar] Jbar Lbar + i[Hbar, abar],  Bbar = [Lbar^dagger, abar] Jbar,
///   Cbar = Lbar,  Dbar = I.
std::vector<ConditionResidual> verify_oscillator_representation(const OpPoly& hamiltonian,
                                                                const OpVector& coupling_bar,
                                                                const DoubledSystem& d);

struct AnalysisOptions {
  NbarSpec nbar = NbarSpec::graded();
  ThetaBarConvention convention = ThetaBarConvention::physical;
  bool relaxed_shape = false;
};

/// Full pipeline: class -> preservation -> realizability -> extraction. Every stage runs
/// even when an earlier one fails.
struct RealizabilityReport {
  std::string system_name;
  ModeNames mode_names;
  AnalysisOptions options;
  ClassReport class_report;
  std::vector<ConditionResidual> preservation;
  RealizabilityCheck realizability;
  Extraction extraction;
  std::optional<OpPoly> hamiltonian;  ///< present only when realizable
  std::optional<OpVector> coupling;   ///< present only when realizable
  std::optional<unsigned> nbar_literal;
  std::set<unsigned> nbar_graded;
  std::vector<std::string> notes;

  bool realizable() const { return realizability.pass(); }
  /// Every stage passes: class membership, preservation and realizability.
  bool all_pass() const;
  /// "realizable", "not_realizable" or "outside_class".
  std::string verdict() const;
};

RealizabilityReport analyze(const QSystem& s, const AnalysisOptions& options = {});

}  // namespace nqs
