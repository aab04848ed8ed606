#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nqs/op_matrix.hpp"

namespace nqs {

/// Quantum noise algebra for m field channels: Ito covariance F and commutation T,
/// both m x m, row-major.
struct NoiseModel {
  std::size_t channels = 0;
  std::vector<Scalar> ito;
  std::vector<Scalar> commutation;

  bool is_canonical() const;
  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Canonical vacuum inputs: dW_k dW_l* = delta_kl dt, every other second-order product zero.
NoiseModel canonical_ito_table(std::size_t channels);

/// QSDE data da = A dt + B dW, dy = C dt + D dW over n modes and m channels.
struct QSystem {
  std::string name;
  ModeNames mode_names;
  CommutationMatrix theta;
  OpVector drift;        ///< A, length n
  OpMatrix diffusion;    ///< B, n x m
  OpVector output;       ///< C, length m
  OpMatrix feedthrough;  ///< D, m x m, scalar entries
  NoiseModel noise;

  std::size_t modes() const { return theta.modes(); }
  std::size_t channels() const { return output.size(); }

  /// Empty system (zero drift and diffusion, D = I, canonical noise) of the given shape.
  static QSystem zero(std::size_t modes, std::size_t channels, CommutationMatrix theta);

  /// Throws DimensionMismatch / Error when shapes or D's scalar restriction are violated.
  void validate() const;

  friend bool operator==(const QSystem&, const QSystem&) = default;
};

/// How the doubled commutation matrix is built.
///   physical: diag(Theta, -Theta^T), which is what [abar, abar^dagger] evaluates to.
///   paper:    diag(Theta, Theta*), kept for side-by-side comparison.
enum class ThetaBarConvention { physical, paper };

std::string to_string(ThetaBarConvention c);
std::optional<ThetaBarConvention> parse_theta_bar(const std::string& text);

/// Doubled-up form abar = [a; a*] of a QSystem.
struct DoubledSystem {
  QSystem base;
  ThetaBarConvention convention = ThetaBarConvention::physical;
  OpVector state;               ///< abar, 2n
  OpVector drift;               ///< Abar = [A; A*]
  OpMatrix diffusion;           ///< Bbar = diag(B, B*)
  OpVector output;              ///< Cbar = [C; C*]
  OpMatrix feedthrough;         ///< Dbar = diag(D, D*)
  OpMatrix theta;               ///< Theta-bar, 2n x 2n scalar
  OpMatrix noise_commutation;   ///< T-bar = diag(T, -T^T)
  OpMatrix signature;           ///< J-bar = diag(I, -I), 2m x 2m

  const CommutationMatrix& algebra() const { return base.theta; }
  std::size_t modes() const { return base.modes(); }
};

DoubledSystem double_up(const QSystem& s, ThetaBarConvention convention = ThetaBarConvention::physical);
/// Doubling is defined on undoubled systems only.
DoubledSystem double_up(const DoubledSystem&, ThetaBarConvention = ThetaBarConvention::physical) = delete;

/// Choice of the nbar normalisation used by the Hamiltonian formula.
struct NbarSpec {
  enum class Kind { literal, fixed, graded };
  Kind kind = Kind::graded;
  unsigned value = 0;  ///< only for Kind::fixed

  static NbarSpec literal() { return {Kind::literal, 0}; }
  static NbarSpec fixed(unsigned v) { return {Kind::fixed, v}; }
  static NbarSpec graded() { return {Kind::graded, 0}; }

  std::string str() const;
  friend bool operator==(const NbarSpec&, const NbarSpec&) = default;
};

/// Accepts `literal`, `graded` or a positive integer.
std::optional<NbarSpec> parse_nbar(const std::string& text);

/// sup (k + h) over the drift's monomials. Throws Error on zero drift.
unsigned literal_nbar(const QSystem& s);
/// Total degrees of the graded Hamiltonian. Throws Error on zero drift.
std::set<unsigned> graded_nbar(const DoubledSystem& d);

/// A named condition with its exact residual (vectors are single-column matrices).
struct ConditionResidual {
  std::string name;
  OpMatrix residual;
  bool pass = false;
};

ConditionResidual make_residual(std::string name, OpMatrix residual);
ConditionResidual make_residual(std::string name, const OpVector& residual);

/// abar^dagger Theta-bar^-1 Abar.
OpPoly state_form(const DoubledSystem& d);
/// Abar^dagger Theta-bar^-1 abar.
OpPoly drift_form(const DoubledSystem& d);
/// Abar - 1/2 Bbar Cbar, the part of the drift a Hamiltonian has to produce.
OpVector generator_target(const DoubledSystem& d);
/// -i [abar, H].
OpVector hamiltonian_generator(const DoubledSystem& d, const OpPoly& hamiltonian);

/// (i / 2 nbar) (abar^dagger Theta-bar^-1 Abar - Abar^dagger Theta-bar^-1 abar), verbatim.
OpPoly hamiltonian_literal(const DoubledSystem& d, unsigned nbar);

/// Degree-resolved inverse of -i[abar, H] = generator_target.
///
/// With [a_i, H] = sum_l Theta_il dH/da_l* and [a_i*, H] = -sum_l Theta_li dH/da_l,
/// the creation and annihilation derivatives of H are read off the target through
/// Theta^-1. Recombining them as sum_l a_l* dH/da_l* + sum_l (dH/da_l) a_l is already
/// normal ordered and equals sum_d d H_d, so each degree is divided by d. The
/// scalar part of H is dropped.
OpPoly hamiltonian_graded(const DoubledSystem& d);

OpPoly hamiltonian_candidate(const DoubledSystem& d, const NbarSpec& nbar);

/// Monomial outside the admissible drift/coupling shape.
struct ShapeViolation {
  std::string entry;  ///< e.g. "A[1]" or "C[2]"
  OpPoly term;
};

struct ClassOptions {
  NbarSpec nbar = NbarSpec::graded();
  ThetaBarConvention convention = ThetaBarConvention::physical;
  bool relaxed_shape = false;  ///< accept multi-generator monomials
};

struct ClassReport {
  bool shape_pass = true;
  std::vector<ShapeViolation> shape_violations;
  ConditionResidual coupling_commutes;   ///< [C, a^T]
  ConditionResidual drift_symmetric;     ///< [A, a^T] + [a, A^T]
  ConditionResidual generator_identity;  ///< generator-form identity residual
  NbarSpec nbar;
  std::optional<unsigned> nbar_used;

  bool pass() const {
    return shape_pass && coupling_commutes.pass && drift_symmetric.pass && generator_identity.pass;
  }
};

ClassReport class_check(const QSystem& s, const ClassOptions& options = {});

}  // namespace nqs
