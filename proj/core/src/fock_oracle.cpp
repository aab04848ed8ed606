#include "nqs/fock_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "nqs/error.hpp"

namespace nqs::fock {

TruncatedRep::TruncatedRep(std::size_t modes, std::size_t cutoff) : modes_(modes), cutoff_(cutoff), dimension_(1) {
  if (cutoff == 0) throw Error("cutoff must be positive");
  for (std::size_t j = 0; j < modes; ++j) {
    dimension_ *= cutoff;
    if (dimension_ > (1U << 20)) throw Error("truncated Fock space too large");
  }
}

std::vector<unsigned> TruncatedRep::occupation(std::size_t index) const {
  std::vector<unsigned> occ(modes_);
  for (std::size_t j = modes_; j-- > 0;) {
    occ[j] = static_cast<unsigned>(index % cutoff_);
    index /= cutoff_;
  }
  return occ;
}

std::size_t TruncatedRep::index(const std::vector<unsigned>& occupation) const {
  std::size_t idx = 0;
  for (unsigned o : occupation) idx = idx * cutoff_ + o;
  return idx;
}

unsigned TruncatedRep::excitation(std::size_t index) const {
  unsigned total = 0;
  for (unsigned o : occupation(index)) total += o;
  return total;
}

namespace {

void require_unit_ccr(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep) {
  if (!theta.is_identity()) throw Error("Fock oracle requires Theta = I");
  if (p.modes() != rep.modes() || theta.modes() != rep.modes())
    throw DimensionMismatch("representation mode count does not match polynomial");
}

/// Applies a*^h a^k to basis state `column`; returns the target index and ladder factors
/// (the product of falling factorials for a^k and the rising part for a*^h), or nothing when
/// the result vanishes or leaves the truncated space.
template <class Weight>
bool apply_monomial(const NormalMonomial& m, const TruncatedRep& rep, std::size_t column, std::size_t& row,
                    Weight&& weight) {
  std::vector<unsigned> occ = rep.occupation(column);
  for (std::size_t j = 0; j < rep.modes(); ++j) {
    if (occ[j] < m.annihilation[j]) return false;
    unsigned lowered = occ[j] - m.annihilation[j];
    unsigned raised = lowered + m.creation[j];
    if (raised >= rep.cutoff()) return false;
    weight(occ[j], lowered, raised);
    occ[j] = raised;
  }
  row = rep.index(occ);
  return true;
}

}  // namespace

FloatMatrix represent(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                      const ParamAssignment& assignment) {
  require_unit_ccr(p, theta, rep);
  FloatMatrix out(rep.dimension());
  for (const auto& [mono, coeff] : p.terms()) {
    std::complex<double> c = coeff.evaluate(assignment).to_complex();
    for (std::size_t col = 0; col < rep.dimension(); ++col) {
      double w = 1.0;
      std::size_t row = 0;
      // <m-k| a^k |m> = sqrt(m!/(m-k)!), <m-k+h| a*^h |m-k> = sqrt((m-k+h)!/(m-k)!)
      auto weight = [&w](unsigned start, unsigned lowered, unsigned raised) {
        for (unsigned v = lowered + 1; v <= start; ++v) w *= std::sqrt(static_cast<double>(v));
        for (unsigned v = lowered + 1; v <= raised; ++v) w *= std::sqrt(static_cast<double>(v));
      };
      if (apply_monomial(mono, rep, col, row, weight)) out.add(row, col, c * w);
    }
  }
  return out;
}

ExactMatrix represent_exact(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                            const ParamAssignment& assignment) {
  require_unit_ccr(p, theta, rep);
  ExactMatrix out(rep.dimension());
  for (const auto& [mono, coeff] : p.terms()) {
    GaussRational c = coeff.evaluate(assignment);
    for (std::size_t col = 0; col < rep.dimension(); ++col) {
      mpz_class w = 1;
      std::size_t row = 0;
      // a^k e_m = m!/(m-k)! e_{m-k};  a*^h e_j = e_{j+h}
      auto weight = [&w](unsigned start, unsigned lowered, unsigned) {
        for (unsigned v = lowered + 1; v <= start; ++v) w *= v;
      };
      if (apply_monomial(mono, rep, col, row, weight)) out.add(row, col, c * GaussRational(mpq_class(w)));
    }
  }
  return out;
}

FloatMatrix adjoint(const FloatMatrix& m) {
  FloatMatrix r(m.dimension());
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (const auto& [j, v] : m.row(i)) r.add(j, i, std::conj(v));
  return r;
}

ExactMatrix adjoint(const ExactMatrix& m, const TruncatedRep& rep) {
  auto gram = [&rep](std::size_t idx) {
    mpz_class g = 1;
    for (unsigned o : rep.occupation(idx))
      for (unsigned v = 2; v <= o; ++v) g *= v;
    return g;
  };
  ExactMatrix r(m.dimension());
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    for (const auto& [j, v] : m.row(i)) {
      // (G^-1 M^H G)_{ji} = conj(M_ij) G_i / G_j
      r.add(j, i, v.conj() * GaussRational(mpq_class(gram(i), gram(j))));
    }
  }
  return r;
}

namespace {

std::vector<std::size_t> safe_states(const TruncatedRep& rep, unsigned degree_bound) {
  if (rep.cutoff() <= degree_bound)
    throw Error("cutoff " + std::to_string(rep.cutoff()) + " too small for degree bound " +
                std::to_string(degree_bound));
  std::vector<std::size_t> states;
  const unsigned limit = static_cast<unsigned>(rep.cutoff()) - degree_bound;
  for (std::size_t idx = 0; idx < rep.dimension(); ++idx) {
    if (rep.excitation(idx) <= limit) states.push_back(idx);
  }
  return states;
}

template <class T, class Compare>
Agreement compare(const SparseMatrix<T>& lhs, const SparseMatrix<T>& rhs, const TruncatedRep& rep,
                  unsigned degree_bound, Compare&& cmp) {
  if (lhs.dimension() != rep.dimension() || rhs.dimension() != rep.dimension())
    throw DimensionMismatch("matrix does not match representation dimension");
  std::vector<std::size_t> states = safe_states(rep, degree_bound);
  std::vector<bool> safe(rep.dimension(), false);
  for (std::size_t s : states) safe[s] = true;
  Agreement a;
  a.agree = true;
  for (std::size_t row : states) {
    std::vector<std::size_t> cols;
    for (const auto& [c, v] : lhs.row(row))
      if (safe[c]) cols.push_back(c);
    for (const auto& [c, v] : rhs.row(row))
      if (safe[c]) cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (std::size_t c : cols) {
      ++a.compared;
      double err = 0.0;
      if (!cmp(lhs.at(row, c), rhs.at(row, c), err)) a.agree = false;
      a.max_relative_error = std::max(a.max_relative_error, err);
    }
  }
  return a;
}

}  // namespace

Agreement compare_on_safe_subspace(const FloatMatrix& lhs, const FloatMatrix& rhs, const TruncatedRep& rep,
                                   unsigned degree_bound, double tol) {
  return compare(lhs, rhs, rep, degree_bound,
                 [tol](const std::complex<double>& x, const std::complex<double>& y, double& err) {
                   double scale = std::max({1.0, std::abs(x), std::abs(y)});
                   err = std::abs(x - y) / scale;
                   return err <= tol;
                 });
}

Agreement compare_on_safe_subspace(const ExactMatrix& lhs, const ExactMatrix& rhs, const TruncatedRep& rep,
                                   unsigned degree_bound) {
  return compare(lhs, rhs, rep, degree_bound, [](const GaussRational& x, const GaussRational& y, double& err) {
    bool same = x == y;
    err = same ? 0.0 : 1.0;
    return same;
  });
}

bool agree_on_safe_subspace(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                            const TruncatedRep& rep, const ParamAssignment& assignment, unsigned degree_bound,
                            double tol) {
  return compare_on_safe_subspace(represent(p, theta, rep, assignment), represent(q, theta, rep, assignment), rep,
                                  degree_bound, tol)
      .agree;
}

namespace {

unsigned degree_of(const OpPoly& p) { return p.degree().value_or(0); }

}  // namespace

OracleCheck check_product(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                          const TruncatedRep& rep, const ParamAssignment& assignment, Arithmetic arithmetic,
                          double tol) {
  OpPoly symbolic = product(p, q, theta);
  unsigned bound = degree_of(p) + degree_of(q);
  OracleCheck out{"product", {}};
  if (arithmetic == Arithmetic::exact) {
    out.agreement = compare_on_safe_subspace(
        represent_exact(symbolic, theta, rep, assignment),
        represent_exact(p, theta, rep, assignment) * represent_exact(q, theta, rep, assignment), rep, bound);
  } else {
    out.agreement = compare_on_safe_subspace(represent(symbolic, theta, rep, assignment),
                                             represent(p, theta, rep, assignment) * represent(q, theta, rep, assignment),
                                             rep, bound, tol);
  }
  return out;
}

OracleCheck check_commutator(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta,
                             const TruncatedRep& rep, const ParamAssignment& assignment, Arithmetic arithmetic,
                             double tol) {
  OpPoly symbolic = commutator(p, q, theta);
  unsigned bound = degree_of(p) + degree_of(q);
  OracleCheck out{"commutator", {}};
  if (arithmetic == Arithmetic::exact) {
    ExactMatrix mp = represent_exact(p, theta, rep, assignment);
    ExactMatrix mq = represent_exact(q, theta, rep, assignment);
    out.agreement =
        compare_on_safe_subspace(represent_exact(symbolic, theta, rep, assignment), mp * mq - mq * mp, rep, bound);
  } else {
    FloatMatrix mp = represent(p, theta, rep, assignment);
    FloatMatrix mq = represent(q, theta, rep, assignment);
    out.agreement =
        compare_on_safe_subspace(represent(symbolic, theta, rep, assignment), mp * mq - mq * mp, rep, bound, tol);
  }
  return out;
}

OracleCheck check_adjoint(const OpPoly& p, const CommutationMatrix& theta, const TruncatedRep& rep,
                          const ParamAssignment& assignment, Arithmetic arithmetic, double tol) {
  OpPoly symbolic = nqs::adjoint(p);
  unsigned bound = degree_of(p);
  OracleCheck out{"adjoint", {}};
  if (arithmetic == Arithmetic::exact) {
    out.agreement = compare_on_safe_subspace(represent_exact(symbolic, theta, rep, assignment),
                                             adjoint(represent_exact(p, theta, rep, assignment), rep), rep, bound);
  } else {
    out.agreement = compare_on_safe_subspace(represent(symbolic, theta, rep, assignment),
                                             adjoint(represent(p, theta, rep, assignment)), rep, bound, tol);
  }
  return out;
}

}  // namespace nqs::fock
