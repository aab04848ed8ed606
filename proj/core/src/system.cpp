#include "nqs/system.hpp"

#include <algorithm>
#include <cctype>

#include "nqs/error.hpp"

namespace nqs {

namespace {

std::vector<Scalar> identity_entries(std::size_t m) {
  std::vector<Scalar> e(m * m);
  for (std::size_t i = 0; i < m; ++i) e[i * m + i] = Scalar(1);
  return e;
}

OpMatrix conj_entries(const OpMatrix& m) {
  OpMatrix r(m.modes(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = adjoint(m(i, j));
  return r;
}

OpMatrix theta_as_matrix(const CommutationMatrix& theta) {
  return OpMatrix::from_scalars(theta.modes(), theta.modes(), theta.modes(), theta.entries());
}

/// -M^T for a scalar square matrix given row-major.
OpMatrix negated_transpose(std::size_t modes, std::size_t size, const std::vector<Scalar>& e) {
  OpMatrix r(modes, size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) r(i, j) = OpPoly::constant(modes, -e[j * size + i]);
  return r;
}

OpVector stack(const OpVector& top, const OpVector& bottom) {
  std::vector<OpPoly> e = top.entries();
  e.insert(e.end(), bottom.entries().begin(), bottom.entries().end());
  return {top.modes(), std::move(e)};
}

bool single_generator(const std::vector<unsigned>& exps) {
  return std::count_if(exps.begin(), exps.end(), [](unsigned e) { return e > 0; }) <= 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Noise

bool NoiseModel::is_canonical() const {
  auto id = identity_entries(channels);
  return ito == id && commutation == id;
}

NoiseModel canonical_ito_table(std::size_t channels) {
  return {channels, identity_entries(channels), identity_entries(channels)};
}

// ---------------------------------------------------------------------------
// QSystem

QSystem QSystem::zero(std::size_t modes, std::size_t channels, CommutationMatrix theta) {
  QSystem s;
  s.mode_names = default_mode_names(modes);
  s.theta = std::move(theta);
  s.drift = OpVector(modes, modes);
  s.diffusion = OpMatrix(modes, modes, channels);
  s.output = OpVector(modes, channels);
  s.feedthrough = OpMatrix::identity(modes, channels);
  s.noise = canonical_ito_table(channels);
  return s;
}

void QSystem::validate() const {
  const std::size_t n = modes();
  const std::size_t m = channels();
  if (mode_names.size() != n) throw DimensionMismatch("mode names do not match mode count");
  if (drift.size() != n || drift.modes() != n) throw DimensionMismatch("drift must have one entry per mode");
  if (diffusion.rows() != n || diffusion.cols() != m || diffusion.modes() != n)
    throw DimensionMismatch("diffusion matrix must be modes x channels");
  if (output.modes() != n) throw DimensionMismatch("output entries have the wrong mode count");
  if (feedthrough.rows() != m || feedthrough.cols() != m || feedthrough.modes() != n)
    throw DimensionMismatch("feedthrough matrix must be channels x channels");
  if (!feedthrough.is_scalar()) throw Error("feedthrough matrix entries must be scalars");
  if (noise.channels != m || noise.ito.size() != m * m || noise.commutation.size() != m * m)
    throw DimensionMismatch("noise model does not match channel count");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (noise.ito[i * m + j] != noise.ito[j * m + i].conj()) throw Error("Ito matrix F is not Hermitian");
      if (noise.commutation[i * m + j] != noise.commutation[j * m + i].conj())
        throw Error("noise commutation matrix T is not Hermitian");
    }
  }
}

// ---------------------------------------------------------------------------
// Doubling

std::string to_string(ThetaBarConvention c) {
  return c == ThetaBarConvention::physical ? "physical" : "paper";
}

std::optional<ThetaBarConvention> parse_theta_bar(const std::string& text) {
  if (text == "physical") return ThetaBarConvention::physical;
  if (text == "paper") return ThetaBarConvention::paper;
  return std::nullopt;
}

DoubledSystem double_up(const QSystem& s, ThetaBarConvention convention) {
  s.validate();
  const std::size_t n = s.modes();
  const std::size_t m = s.channels();
  DoubledSystem d;
  d.base = s;
  d.convention = convention;

  OpVector a = OpVector::annihilators(n);
  d.state = stack(a, adjoint_entries(a));
  d.drift = stack(s.drift, adjoint_entries(s.drift));
  d.diffusion = OpMatrix::block_diag(s.diffusion, conj_entries(s.diffusion));
  d.output = stack(s.output, adjoint_entries(s.output));
  d.feedthrough = OpMatrix::block_diag(s.feedthrough, conj_entries(s.feedthrough));

  OpMatrix theta = theta_as_matrix(s.theta);
  if (convention == ThetaBarConvention::physical) {
    d.theta = OpMatrix::block_diag(theta, negated_transpose(n, n, s.theta.entries()));
  } else {
    d.theta = OpMatrix::block_diag(theta, conj_entries(theta));
  }
  OpMatrix t = OpMatrix::from_scalars(n, m, m, s.noise.commutation);
  d.noise_commutation = OpMatrix::block_diag(t, negated_transpose(n, m, s.noise.commutation));
  d.signature = OpMatrix::block_diag(OpMatrix::identity(n, m), Scalar(-1) * OpMatrix::identity(n, m));
  return d;
}

// ---------------------------------------------------------------------------
// nbar

std::string NbarSpec::str() const {
  switch (kind) {
    case Kind::literal: return "literal";
    case Kind::graded: return "graded";
    case Kind::fixed: return std::to_string(value);
  }
  return "graded";
}

std::optional<NbarSpec> parse_nbar(const std::string& text) {
  if (text == "literal") return NbarSpec::literal();
  if (text == "graded") return NbarSpec::graded();
  if (text.empty() || text.size() > 6 || !std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) return std::nullopt;
  unsigned v = static_cast<unsigned>(std::stoul(text));
  if (v == 0) return std::nullopt;
  return NbarSpec::fixed(v);
}

unsigned literal_nbar(const QSystem& s) {
  unsigned best = 0;
  bool any = false;
  for (const auto& entry : s.drift.entries()) {
    for (const auto& [mono, c] : entry.terms()) {
      any = true;
      best = std::max(best, mono.degree());
    }
  }
  if (!any) throw Error("nbar is undefined for a zero drift");
  return best;
}

std::set<unsigned> graded_nbar(const DoubledSystem& d) {
  if (d.base.drift.is_zero()) throw Error("nbar is undefined for a zero drift");
  std::set<unsigned> degrees;
  for (const auto& [deg, part] : grade(hamiltonian_graded(d))) degrees.insert(deg);
  return degrees;
}

// ---------------------------------------------------------------------------
// Residuals and generator forms

ConditionResidual make_residual(std::string name, OpMatrix residual) {
  bool pass = residual.is_zero();
  return {std::move(name), std::move(residual), pass};
}

ConditionResidual make_residual(std::string name, const OpVector& residual) {
  return make_residual(std::move(name), OpMatrix::column(residual));
}

OpPoly state_form(const DoubledSystem& d) {
  return quad_form(d.state, invert_scalar_matrix(d.theta), d.drift, d.algebra());
}

OpPoly drift_form(const DoubledSystem& d) {
  return quad_form(d.drift, invert_scalar_matrix(d.theta), d.state, d.algebra());
}

OpVector generator_target(const DoubledSystem& d) {
  OpVector bc = matvec(d.diffusion, d.output, d.algebra());
  return d.drift - Scalar::ratio(1, 2) * bc;
}

OpVector hamiltonian_generator(const DoubledSystem& d, const OpPoly& hamiltonian) {
  OpVector r(d.modes(), d.state.size());
  for (std::size_t j = 0; j < d.state.size(); ++j) {
    r[j] = commutator(d.state[j], hamiltonian, d.algebra()) * -Scalar::imaginary_unit();
  }
  return r;
}

OpPoly hamiltonian_literal(const DoubledSystem& d, unsigned nbar) {
  if (nbar == 0) throw Error("nbar must be positive");
  OpPoly x = state_form(d) - drift_form(d);
  return x * (Scalar::imaginary_unit() / Scalar(static_cast<long>(2 * nbar)));
}

OpPoly hamiltonian_graded(const DoubledSystem& d) {
  const std::size_t n = d.modes();
  const CommutationMatrix& theta = d.algebra();
  OpVector target = generator_target(d);
  OpMatrix theta_inv = invert_scalar_matrix(OpMatrix::from_scalars(n, n, n, theta.entries()));
  const Scalar i = Scalar::imaginary_unit();

  OpPoly euler(n);
  for (std::size_t l = 0; l < n; ++l) {
    // dH/da_l* = i sum_j (Theta^-1)_lj target_j
    // dH/da_l  = -i sum_j (Theta^-1)_jl target_{n+j}
    OpPoly d_creation(n);
    OpPoly d_annihilation(n);
    for (std::size_t j = 0; j < n; ++j) {
      d_creation += target[j] * (i * theta_inv(l, j).scalar_value());
      d_annihilation += target[n + j] * (-i * theta_inv(j, l).scalar_value());
    }
    euler += product(OpPoly::creator(n, l), d_creation, theta);
    euler += product(d_annihilation, OpPoly::annihilator(n, l), theta);
  }

  OpPoly h(n);
  for (const auto& [deg, part] : grade(euler)) {
    if (deg == 0) continue;
    h += part * Scalar::ratio(1, static_cast<long>(deg));
  }
  return h;
}

OpPoly hamiltonian_candidate(const DoubledSystem& d, const NbarSpec& nbar) {
  switch (nbar.kind) {
    case NbarSpec::Kind::graded: return hamiltonian_graded(d);
    case NbarSpec::Kind::fixed: return hamiltonian_literal(d, nbar.value);
    case NbarSpec::Kind::literal:
      if (d.base.drift.is_zero()) return OpPoly(d.modes());
      return hamiltonian_literal(d, literal_nbar(d.base));
  }
  return hamiltonian_graded(d);
}

// ---------------------------------------------------------------------------
// Class membership

ClassReport class_check(const QSystem& s, const ClassOptions& options) {
  DoubledSystem d = double_up(s, options.convention);
  const std::size_t n = s.modes();
  const CommutationMatrix& theta = s.theta;
  ClassReport report;
  report.nbar = options.nbar;

  for (std::size_t i = 0; i < s.drift.size() && !options.relaxed_shape; ++i) {
    for (const auto& [mono, c] : s.drift[i].terms()) {
      if (!single_generator(mono.creation) || !single_generator(mono.annihilation)) {
        report.shape_violations.push_back({"A[" + std::to_string(i + 1) + "]", OpPoly::monomial(n, mono, c)});
      }
    }
  }
  for (std::size_t v = 0; v < s.output.size(); ++v) {
    for (const auto& [mono, c] : s.output[v].terms()) {
      bool creation_free = std::all_of(mono.creation.begin(), mono.creation.end(), [](unsigned e) { return e == 0; });
      if (!creation_free || (!options.relaxed_shape && !single_generator(mono.annihilation))) {
        report.shape_violations.push_back({"C[" + std::to_string(v + 1) + "]", OpPoly::monomial(n, mono, c)});
      }
    }
  }
  report.shape_pass = report.shape_violations.empty();

  OpVector a = OpVector::annihilators(n);
  report.coupling_commutes = make_residual("[C, a^T] = 0", comm_vec_transpose(s.output, a, theta));
  report.drift_symmetric =
      make_residual("[A, a^T] + [a, A^T] = 0",
                    comm_vec_transpose(s.drift, a, theta) + comm_vec_transpose(a, s.drift, theta));

  OpVector target = generator_target(d);
  OpVector lhs(n, d.state.size());
  if (options.nbar.kind == NbarSpec::Kind::graded) {
    lhs = hamiltonian_generator(d, hamiltonian_graded(d));
  } else if (!s.drift.is_zero()) {
    unsigned nbar = options.nbar.kind == NbarSpec::Kind::fixed ? options.nbar.value : literal_nbar(s);
    report.nbar_used = nbar;
    Scalar scale = Scalar::ratio(1, static_cast<long>(2 * nbar));
    lhs = scale * (comm_scalar_vec(drift_form(d), d.state, theta) - comm_scalar_vec(state_form(d), d.state, theta));
  }
  report.generator_identity = make_residual("generator identity", lhs - target);
  return report;
}

}  // namespace nqs
