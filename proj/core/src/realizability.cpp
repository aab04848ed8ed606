#include "nqs/realizability.hpp"

#include <algorithm>

#include "nqs/error.hpp"

namespace nqs {

namespace {

/// Residual layout for [X, abar^dagger]-type conditions on a matrix X.
OpMatrix matrix_vs_state(const OpMatrix& x, const OpVector& state, const CommutationMatrix& theta,
                         bool matrix_first) {
  OpMatrix r(x.modes(), x.rows() * x.cols(), state.size());
  for (std::size_t j = 0; j < x.rows(); ++j) {
    for (std::size_t k = 0; k < x.cols(); ++k) {
      for (std::size_t l = 0; l < state.size(); ++l) {
        r(j * x.cols() + k, l) = matrix_first ? commutator(x(j, k), adjoint(state[l]), theta)
                                              : commutator(state[l], adjoint(x(j, k)), theta);
      }
    }
  }
  return r;
}

std::vector<ConditionResidual> preservation_with(const DoubledSystem& d, const OpMatrix& noise) {
  const CommutationMatrix& theta = d.algebra();
  OpMatrix first = comm_vec_adj(d.drift, d.state, theta) + comm_vec_adj(d.state, d.drift, theta) +
                   matmul(matmul(d.diffusion, noise, theta), adjoint_matrix(d.diffusion), theta);
  return {
      make_residual("[Abar, abar^dagger] + [abar, Abar^dagger] + Bbar T Bbar^dagger = 0", std::move(first)),
      make_residual("[Bbar, abar^dagger] = 0", matrix_vs_state(d.diffusion, d.state, theta, true)),
      make_residual("[abar, Bbar^dagger] = 0", matrix_vs_state(d.diffusion, d.state, theta, false)),
  };
}

}  // namespace

std::vector<ConditionResidual> check_preservation(const DoubledSystem& d) {
  return preservation_with(d, d.noise_commutation);
}

bool RealizabilityCheck::pass() const {
  return premise_ok && std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.pass; });
}

RealizabilityCheck check_physical_realizability(const DoubledSystem& d) {
  const CommutationMatrix& theta = d.algebra();
  RealizabilityCheck check;
  check.conditions = preservation_with(d, d.signature);
  check.conditions[0].name = "[Abar, abar^dagger] + [abar, Abar^dagger] + Bbar Jbar Bbar^dagger = 0";

  OpMatrix coupling_map = matmul(comm_adj_vec(d.output, d.state, theta), d.signature, theta);
  check.conditions.push_back(make_residual("Bbar = [Cbar^dagger, abar] Jbar", d.diffusion - coupling_map));
  OpMatrix id = OpMatrix::identity(d.modes(), d.feedthrough.rows());
  check.conditions.push_back(make_residual("Dbar = I", d.feedthrough - id));

  if (!(d.noise_commutation == d.signature)) {
    check.premise_ok = false;
    check.premise_note = "noise commutation matrix T-bar differs from J-bar";
  }
  return check;
}

Extraction extract_hamiltonian(const DoubledSystem& d, const NbarSpec& mode) {
  Extraction e;
  e.mode = mode;
  if (mode.kind == NbarSpec::Kind::fixed) e.nbar_used = mode.value;
  if (mode.kind == NbarSpec::Kind::literal && !d.base.drift.is_zero()) e.nbar_used = literal_nbar(d.base);
  e.hamiltonian = hamiltonian_candidate(d, mode);
  e.self_adjoint = adjoint(e.hamiltonian) == e.hamiltonian;
  e.reproduction = make_residual("-i[abar, H] = Abar - 1/2 Bbar Cbar",
                                 hamiltonian_generator(d, e.hamiltonian) - generator_target(d));
  e.advisory = !check_physical_realizability(d).pass();
  return e;
}

OpVector extract_coupling(const DoubledSystem& d) { return d.output; }

void Oscillator::validate() const {
  const std::size_t n = theta.modes();
  if (hamiltonian.modes() != n || coupling.modes() != n)
    throw DimensionMismatch("oscillator operators do not match the mode count");
  if (!mode_names.empty() && mode_names.size() != n)
    throw DimensionMismatch("mode names do not match mode count");
  if (adjoint(hamiltonian) != hamiltonian) throw Error("Hamiltonian is not self-adjoint");
  for (std::size_t j = 0; j < coupling.size(); ++j) {
    if (!is_annihilation_only(coupling[j]))
      throw Error("coupling operator L[" + std::to_string(j + 1) + "] contains creation operators");
  }
}

QSystem synthesize(const Oscillator& osc) {
  osc.validate();
  const std::size_t n = osc.theta.modes();
  const std::size_t m = osc.coupling.size();
  const CommutationMatrix& theta = osc.theta;
  QSystem s = QSystem::zero(n, m, theta);
  s.name = osc.name;
  if (!osc.mode_names.empty()) s.mode_names = osc.mode_names;

  OpVector a = OpVector::annihilators(n);
  s.diffusion = comm_adj_vec(osc.coupling, a, theta);
  OpVector lindblad = matvec(s.diffusion, osc.coupling, theta);
  const Scalar minus_i = -Scalar::imaginary_unit();
  for (std::size_t i = 0; i < n; ++i) {
    s.drift[i] = lindblad[i] * Scalar::ratio(1, 2) + commutator(a[i], osc.hamiltonian, theta) * minus_i;
  }
  s.output = osc.coupling;
  return s;
}

OpVector doubled_coupling(const OpVector& coupling) {
  std::vector<OpPoly> e = coupling.entries();
  for (const auto& l : coupling.entries()) e.push_back(adjoint(l));
  return {coupling.modes(), std::move(e)};
}

std::vector<ConditionResidual> verify_oscillator_representation(const OpPoly& hamiltonian,
                                                                const OpVector& coupling_bar,
                                                                const DoubledSystem& d) {
  const CommutationMatrix& theta = d.algebra();
  if (coupling_bar.size() != d.output.size())
    throw DimensionMismatch("doubled coupling length does not match the doubled output");
  OpMatrix diffusion = matmul(comm_adj_vec(coupling_bar, d.state, theta), d.signature, theta);
  OpVector drift = Scalar::ratio(1, 2) * matvec(diffusion, coupling_bar, theta) +
                   Scalar::imaginary_unit() * comm_scalar_vec(hamiltonian, d.state, theta);
  OpMatrix id = OpMatrix::identity(d.modes(), d.feedthrough.rows());
  return {
      make_residual("Abar = 1/2 [Lbar^dagger, abar] Jbar Lbar + i[Hbar, abar]", d.drift - drift),
      make_residual("Bbar = [Lbar^dagger, abar] Jbar", d.diffusion - diffusion),
      make_residual("Cbar = Lbar", d.output - coupling_bar),
      make_residual("Dbar = I", d.feedthrough - id),
  };
}

bool RealizabilityReport::all_pass() const {
  return class_report.pass() && realizability.pass() &&
         std::all_of(preservation.begin(), preservation.end(), [](const auto& c) { return c.pass; });
}

std::string RealizabilityReport::verdict() const {
  if (!realizability.pass()) return "not_realizable";
  return class_report.pass() ? "realizable" : "outside_class";
}

RealizabilityReport analyze(const QSystem& s, const AnalysisOptions& options) {
  RealizabilityReport r;
  r.system_name = s.name;
  r.mode_names = s.mode_names;
  r.options = options;
  r.class_report = class_check(s, {options.nbar, options.convention, options.relaxed_shape});

  DoubledSystem d = double_up(s, options.convention);
  r.preservation = check_preservation(d);
  r.realizability = check_physical_realizability(d);
  r.extraction = extract_hamiltonian(d, options.nbar);

  if (!s.drift.is_zero()) {
    r.nbar_literal = literal_nbar(s);
    r.nbar_graded = graded_nbar(d);
  }
  if (r.realizable()) {
    r.hamiltonian = r.extraction.hamiltonian;
    r.coupling = extract_coupling(d);
  }
  if (!r.realizability.premise_ok) r.notes.push_back(r.realizability.premise_note);
  if (r.extraction.advisory) r.notes.push_back("Hamiltonian extracted for diagnosis only: realizability conditions fail");
  if (!r.extraction.reproduction.pass) r.notes.push_back("extracted Hamiltonian does not reproduce the drift");
  if (!r.extraction.self_adjoint) r.notes.push_back("extracted Hamiltonian is not self-adjoint");
  if (options.nbar.kind == NbarSpec::Kind::graded) {
    r.notes.push_back("Hamiltonian sign fixed by the generator identity -i[abar, H] = Abar - 1/2 Bbar Cbar");
  }
  return r;
}

}  // namespace nqs
