#include "nqs/op_poly.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "nqs/error.hpp"

namespace nqs {

ModeNames default_mode_names(std::size_t n) {
  ModeNames names;
  for (std::size_t j = 0; j < n; ++j) names.push_back("a" + std::to_string(j + 1));
  return names;
}

// ---------------------------------------------------------------------------
// CommutationMatrix

CommutationMatrix::CommutationMatrix(std::size_t n, std::vector<Scalar> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DimensionMismatch("commutation matrix must be square");
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = j; k < n_; ++k) {
      if ((*this)(j, k) != (*this)(k, j).conj()) {
        throw Error("commutation matrix is not Hermitian at (" + std::to_string(j + 1) + "," +
                    std::to_string(k + 1) + ")");
      }
    }
  }
}

CommutationMatrix CommutationMatrix::identity(std::size_t n) {
  std::vector<Scalar> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = Scalar(1);
  return {n, std::move(e)};
}

bool CommutationMatrix::is_identity() const {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Scalar& v = (*this)(j, k);
      if (j == k ? !v.is_one() : !v.is_zero()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// NormalMonomial

unsigned NormalMonomial::degree() const {
  return std::accumulate(creation.begin(), creation.end(), 0U) +
         std::accumulate(annihilation.begin(), annihilation.end(), 0U);
}

bool NormalMonomialLess::operator()(const NormalMonomial& a, const NormalMonomial& b) const {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da < db;
  if (a.creation != b.creation) return a.creation > b.creation;
  return a.annihilation > b.annihilation;
}

// ---------------------------------------------------------------------------
// OpPoly

namespace {

NormalMonomial unit_monomial(std::size_t n) {
  return {std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
}

void require_same_modes(const OpPoly& p, const OpPoly& q) {
  if (p.modes() != q.modes()) {
    throw DimensionMismatch("mode count mismatch: " + std::to_string(p.modes()) + " vs " +
                            std::to_string(q.modes()));
  }
}

}  // namespace

OpPoly OpPoly::constant(std::size_t modes, const Scalar& value) {
  OpPoly p(modes);
  p.add_term(unit_monomial(modes), value);
  return p;
}

OpPoly OpPoly::annihilator(std::size_t modes, std::size_t j) {
  if (j >= modes) throw DimensionMismatch("mode index out of range");
  NormalMonomial m = unit_monomial(modes);
  m.annihilation[j] = 1;
  return monomial(modes, std::move(m), Scalar(1));
}

OpPoly OpPoly::creator(std::size_t modes, std::size_t j) {
  if (j >= modes) throw DimensionMismatch("mode index out of range");
  NormalMonomial m = unit_monomial(modes);
  m.creation[j] = 1;
  return monomial(modes, std::move(m), Scalar(1));
}

OpPoly OpPoly::monomial(std::size_t modes, NormalMonomial m, const Scalar& coeff) {
  if (m.creation.size() != modes || m.annihilation.size() != modes) {
    throw DimensionMismatch("monomial exponent vectors do not match mode count");
  }
  OpPoly p(modes);
  p.add_term(m, coeff);
  return p;
}

bool OpPoly::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar OpPoly::scalar_value() const {
  if (!is_scalar()) throw Error("operator polynomial is not a scalar: " + to_string(*this));
  return constant_term();
}

Scalar OpPoly::constant_term() const {
  if (terms_.empty() || !terms_.begin()->first.is_one()) return {};
  return terms_.begin()->second;
}

std::optional<unsigned> OpPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

void OpPoly::add_term(const NormalMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
  require_same_modes(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
  require_same_modes(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

OpPoly& OpPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

OpPoly OpPoly::operator-() const {
  OpPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

// ---------------------------------------------------------------------------
// Algebra

namespace {

using Key = std::pair<std::vector<unsigned>, std::vector<unsigned>>;

/// Normal form of a^ann a*^cre as a list of terms.
OpPoly::Terms reorder(const std::vector<unsigned>& ann, const std::vector<unsigned>& cre,
                      const CommutationMatrix& theta) {
  const std::size_t n = ann.size();
  OpPoly::Terms current;
  current.emplace(NormalMonomial{cre, std::vector<unsigned>(n, 0)}, Scalar(1));
  for (std::size_t j = 0; j < n; ++j) {
    for (unsigned rep = 0; rep < ann[j]; ++rep) {
      OpPoly::Terms next;
      auto add = [&next](NormalMonomial m, const Scalar& c) {
        auto [it, inserted] = next.try_emplace(std::move(m), c);
        if (!inserted) {
          it->second += c;
          if (it->second.is_zero()) next.erase(it);
        }
      };
      for (const auto& [m, c] : current) {
        NormalMonomial moved = m;
        ++moved.annihilation[j];
        add(std::move(moved), c);
        for (std::size_t l = 0; l < n; ++l) {
          if (m.creation[l] == 0 || theta(j, l).is_zero()) continue;
          NormalMonomial contracted = m;
          --contracted.creation[l];
          add(std::move(contracted), c * theta(j, l) * Scalar(static_cast<long>(m.creation[l])));
        }
      }
      current = std::move(next);
    }
  }
  return current;
}

bool all_zero(const std::vector<unsigned>& v) {
  return std::all_of(v.begin(), v.end(), [](unsigned e) { return e == 0; });
}

}  // namespace

OpPoly product(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta) {
  require_same_modes(p, q);
  const std::size_t n = p.modes();
  if (theta.modes() != n) throw DimensionMismatch("commutation matrix does not match mode count");

  std::map<Key, OpPoly::Terms> cache;
  OpPoly result(n);
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      Scalar c = cp * cq;
      if (all_zero(mp.annihilation) || all_zero(mq.creation)) {
        NormalMonomial m = mp;
        for (std::size_t j = 0; j < n; ++j) {
          m.creation[j] += mq.creation[j];
          m.annihilation[j] += mq.annihilation[j];
        }
        result.add_term(m, c);
        continue;
      }
      Key key{mp.annihilation, mq.creation};
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, reorder(key.first, key.second, theta)).first;
      for (const auto& [mid, cm] : it->second) {
        NormalMonomial m = mid;
        for (std::size_t j = 0; j < n; ++j) {
          m.creation[j] += mp.creation[j];
          m.annihilation[j] += mq.annihilation[j];
        }
        result.add_term(m, c * cm);
      }
    }
  }
  return result;
}

OpPoly commutator(const OpPoly& p, const OpPoly& q, const CommutationMatrix& theta) {
  return product(p, q, theta) - product(q, p, theta);
}

OpPoly adjoint(const OpPoly& p) {
  OpPoly r(p.modes());
  for (const auto& [m, c] : p.terms()) r.add_term(NormalMonomial{m.annihilation, m.creation}, c.conj());
  return r;
}

std::map<unsigned, OpPoly> grade(const OpPoly& p) {
  std::map<unsigned, OpPoly> parts;
  for (const auto& [m, c] : p.terms()) {
    auto [it, inserted] = parts.try_emplace(m.degree(), p.modes());
    it->second.add_term(m, c);
  }
  return parts;
}

bool is_annihilation_only(const OpPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return all_zero(t.first.creation); });
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const OpPoly& p, const ModeNames& names) {
  if (names.size() < p.modes()) throw DimensionMismatch("not enough mode names to print polynomial");
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    for (std::size_t j = 0; j < p.modes(); ++j) {
      if (m.creation[j] == 0) continue;
      std::string f = names[j] + "'";
      if (m.creation[j] > 1) f += "^" + std::to_string(m.creation[j]);
      factors.push_back(std::move(f));
    }
    for (std::size_t j = 0; j < p.modes(); ++j) {
      if (m.annihilation[j] == 0) continue;
      std::string f = names[j];
      if (m.annihilation[j] > 1) f += "^" + std::to_string(m.annihilation[j]);
      factors.push_back(std::move(f));
    }
    std::string term;
    if (factors.empty()) {
      term = "(" + c.str() + ")";
    } else {
      if (!c.is_one()) term = "(" + c.str() + ")";
      for (const auto& f : factors) term += (term.empty() ? "" : " * ") + f;
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

std::string to_string(const OpPoly& p) { return to_string(p, default_mode_names(p.modes())); }

}  // namespace nqs
