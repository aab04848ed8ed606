#include "nqs/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "nqs/error.hpp"

namespace nqs {

// ---------------------------------------------------------------------------
// ParamMonomial

ParamMonomial ParamMonomial::variable(std::string name, unsigned exponent) {
  ParamMonomial m;
  if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

unsigned ParamMonomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [name, e] : factors_) d += e;
  return d;
}

unsigned ParamMonomial::degree_in(const std::string& name) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), name,
                             [](const Factor& f, const std::string& n) { return f.first < n; });
  return (it != factors_.end() && it->first == name) ? it->second : 0;
}

ParamMonomial ParamMonomial::operator*(const ParamMonomial& o) const {
  ParamMonomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto i = factors_.begin();
  auto j = o.factors_.begin();
  while (i != factors_.end() || j != o.factors_.end()) {
    if (j == o.factors_.end() || (i != factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      r.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool ParamMonomial::divides(const ParamMonomial& o) const {
  for (const auto& [name, e] : factors_) {
    if (o.degree_in(name) < e) return false;
  }
  return true;
}

ParamMonomial ParamMonomial::quotient_of(const ParamMonomial& o) const {
  ParamMonomial r;
  for (const auto& [name, e] : o.factors_) {
    unsigned mine = degree_in(name);
    if (e > mine) r.factors_.emplace_back(name, e - mine);
  }
  return r;
}

ParamMonomial ParamMonomial::without(const std::string& name) const {
  ParamMonomial r;
  for (const auto& f : factors_) {
    if (f.first != name) r.factors_.push_back(f);
  }
  return r;
}

std::string ParamMonomial::str() const {
  std::string s;
  for (const auto& [name, e] : factors_) {
    if (!s.empty()) s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

int grlex_compare(const ParamMonomial& a, const ParamMonomial& b) {
  unsigned da = a.total_degree();
  unsigned db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (i == fa.size()) return -1;
    if (j == fb.size()) return 1;
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
      ++i;
      ++j;
    } else {
      return fa[i].first < fb[j].first ? 1 : -1;
    }
  }
  return 0;
}

bool GrlexLess::operator()(const ParamMonomial& a, const ParamMonomial& b) const {
  return grlex_compare(a, b) < 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(ParamMonomial{}, std::move(c));
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(ParamMonomial::variable(name), GaussRational(1));
}

Polynomial Polynomial::term(ParamMonomial m, GaussRational c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
}

GaussRational Polynomial::constant_value() const {
  if (terms_.empty()) return {};
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : leading_monomial().total_degree();
}

unsigned Polynomial::degree_in(const std::string& name) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(name));
  return d;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(const std::string& name) const {
  std::map<unsigned, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    out[m.degree_in(name)].add_term(m.without(name), c);
  }
  return out;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) vars.insert(f.first);
  }
  return vars;
}

bool Polynomial::has_variable(const std::string& name) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.degree_in(name) > 0; });
}

Polynomial Polynomial::conj() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c.conj());
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Polynomial r = *this;
  r *= leading_coefficient().inverse();
  return r;
}

GaussRational Polynomial::evaluate(const std::map<std::string, mpq_class>& assignment) const {
  GaussRational sum;
  for (const auto& [m, c] : terms_) {
    mpq_class value = 1;
    for (const auto& [name, e] : m.factors()) {
      auto it = assignment.find(name);
      if (it == assignment.end()) throw EvaluationError("no value assigned to parameter '" + name + "'");
      for (unsigned k = 0; k < e; ++k) value *= it->second;
    }
    sum += c * GaussRational(value);
  }
  return sum;
}

void Polynomial::add_term(const ParamMonomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string t;
    if (m.is_one()) {
      t = c.str();
    } else if (c.is_one()) {
      t = m.str();
    } else if (c == GaussRational(-1)) {
      t = "-" + m.str();
    } else {
      t = c.str() + "*" + m.str();
    }
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (b.is_constant()) {
    Polynomial q = a;
    q *= b.constant_value().inverse();
    return q;
  }
  Polynomial q;
  Polynomial r = a;
  const ParamMonomial& lb = b.leading_monomial();
  GaussRational lc_inv = b.leading_coefficient().inverse();
  while (!r.is_zero()) {
    const ParamMonomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Polynomial t = Polynomial::term(lb.quotient_of(lr), r.leading_coefficient() * lc_inv);
    q += t;
    r -= t * b;
  }
  return q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& name) {
  unsigned db = b.degree_in(name);
  Polynomial lcb = b.coefficients_in(name).at(db);
  Polynomial r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(name);
    if (dr < db) break;
    Polynomial lcr = r.coefficients_in(name).at(dr);
    Polynomial shift = lcr * Polynomial::term(ParamMonomial::variable(name, dr - db), GaussRational(1));
    r = lcb * r - shift * b;
  }
  return r;
}

namespace {

Polynomial content_in(const Polynomial& p, const std::string& name) {
  Polynomial g;
  for (const auto& [e, coeff] : p.coefficients_in(name)) {
    g = gcd(g, coeff);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, const std::string& name) {
  if (p.is_zero()) return p;
  return *exact_divide(p, content_in(p, name));
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);

  std::set<std::string> vars = a.variables();
  vars.merge(b.variables());
  const std::string& x = *vars.begin();

  if (!a.has_variable(x)) return gcd(a, content_in(b, x));
  if (!b.has_variable(x)) return gcd(content_in(a, x), b);

  Polynomial ca = content_in(a, x);
  Polynomial cb = content_in(b, x);
  Polynomial pa = *exact_divide(a, ca);
  Polynomial pb = *exact_divide(b, cb);
  Polynomial c = gcd(ca, cb);

  if (pa.degree_in(x) < pb.degree_in(x)) std::swap(pa, pb);
  Polynomial g;
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, x);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(x) == 0) {
      g = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, x);
  }
  return (c * primitive_part(g, x)).monic();
}

}  // namespace nqs
