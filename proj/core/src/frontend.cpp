#include "nqs/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace nqs {

std::string Diagnostic::str() const {
  const char* k = kind == Kind::lexical ? "lexical" : kind == Kind::syntax ? "syntax" : "semantic";
  return std::to_string(line) + ":" + std::to_string(column) + ": " + k + " error: " + message;
}

namespace {

constexpr std::size_t kMaxDepth = 200;
constexpr long kMaxOperatorPower = 12;
constexpr long kMaxScalarPower = 64;
constexpr std::size_t kMaxIndex = 64;

const std::set<std::string> kReserved = {"i",     "I",        "adj",   "A",     "B",      "C",
                                         "D",     "H",        "L",     "theta", "system", "params",
                                         "let",   "modes",    "channels", "option"};

[[noreturn]] void fail(Diagnostic::Kind kind, std::size_t line, std::size_t col, std::string msg) {
  throw ParseError(Diagnostic{kind, line, col, std::move(msg)});
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, number, symbol, newline, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (c == '\n') {
      out.push_back({Tok::newline, "\n", line, col});
      advance();
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance();
      continue;
    }
    Token t{Tok::end, "", line, col};
    if (std::isalpha(c) || c == '_') {
      t.kind = Tok::ident;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
    } else if (std::isdigit(c)) {
      t.kind = Tok::number;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t.text += src[i];
        advance();
      }
      if (i < src.size() && src[i] == '.') {
        t.text += '.';
        advance();
        if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
          fail(Diagnostic::Kind::lexical, line, col, "expected digits after decimal point");
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
          t.text += src[i];
          advance();
        }
      }
      if (i < src.size() && (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        fail(Diagnostic::Kind::lexical, line, col, "identifier cannot start with a digit");
    } else if (std::string("+-*/^'()[],;=").find(static_cast<char>(c)) != std::string::npos) {
      t.kind = Tok::symbol;
      t.text = std::string(1, static_cast<char>(c));
      advance();
    } else {
      std::string shown = std::isprint(c) ? std::string(1, static_cast<char>(c)) : "\\x" + [&] {
        std::ostringstream h;
        h << std::hex << static_cast<int>(c);
        return h.str();
      }();
      fail(Diagnostic::Kind::lexical, line, col, "unexpected character '" + shown + "'");
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree

struct Expr {
  enum class Kind { number, ident, neg, add, sub, mul, div, pow, adj };
  Kind kind = Kind::number;
  mpq_class value;
  std::string name;
  long exponent = 0;
  std::unique_ptr<Expr> lhs, rhs;
  std::size_t line = 0, col = 0;
};
using ExprPtr = std::unique_ptr<Expr>;

struct Index {
  std::size_t value = 0;
  std::size_t line = 0, col = 0;
};

struct Statement {
  enum class Kind { system, params, let, modes, channels, option, assign };
  Kind kind = Kind::assign;
  std::size_t line = 0, col = 0;
  std::string target;                  // assign: A B C D H L theta; let/option/system: name
  std::vector<Token> names;            // params, modes
  std::vector<Index> indices;
  ExprPtr expr;                        // let, assign
  bool identity = false;               // `X = I`
  std::vector<std::vector<ExprPtr>> matrix;  // `X = [ ... ]`
  Token value;                         // option value, channels count
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    while (true) {
      while (peek().kind == Tok::newline) ++pos_;
      if (peek().kind == Tok::end) break;
      out.push_back(statement());
      if (peek().kind != Tok::newline && peek().kind != Tok::end)
        error(peek(), "expected end of line, found " + describe(peek()));
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_symbol(const char* s) const { return peek().kind == Tok::symbol && peek().text == s; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::newline: return "end of line";
      case Tok::end: return "end of input";
      default: return "'" + t.text + "'";
    }
  }
  [[noreturn]] static void error(const Token& t, std::string msg) {
    fail(Diagnostic::Kind::syntax, t.line, t.col, std::move(msg));
  }
  void expect(const char* s) {
    if (!is_symbol(s)) error(peek(), std::string("expected '") + s + "', found " + describe(peek()));
    ++pos_;
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::ident) error(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }

  Statement statement() {
    const Token head = expect_ident("a statement");
    Statement st;
    st.line = head.line;
    st.col = head.col;
    const std::string& h = head.text;
    if (h == "system") {
      st.kind = Statement::Kind::system;
      st.target = expect_ident("a system name").text;
    } else if (h == "params" || h == "modes") {
      st.kind = h == "params" ? Statement::Kind::params : Statement::Kind::modes;
      while (peek().kind == Tok::ident) st.names.push_back(next());
      if (peek().kind != Tok::newline && peek().kind != Tok::end)
        error(peek(), "expected an identifier, found " + describe(peek()));
    } else if (h == "let") {
      st.kind = Statement::Kind::let;
      Token name = expect_ident("a parameter name");
      st.target = name.text;
      st.names.push_back(name);
      expect("=");
      st.expr = expression();
    } else if (h == "channels") {
      st.kind = Statement::Kind::channels;
      if (peek().kind != Tok::number) error(peek(), "expected a channel count, found " + describe(peek()));
      st.value = next();
    } else if (h == "option") {
      st.kind = Statement::Kind::option;
      Token key = expect_ident("an option name");
      st.target = key.text;
      st.names.push_back(key);
      expect("=");
      if (peek().kind != Tok::ident && peek().kind != Tok::number)
        error(peek(), "expected an option value, found " + describe(peek()));
      st.value = next();
    } else if (h == "A" || h == "B" || h == "C" || h == "D" || h == "H" || h == "L" || h == "theta") {
      st.kind = Statement::Kind::assign;
      st.target = h;
      while (is_symbol("[")) {
        ++pos_;
        if (peek().kind != Tok::number || peek().text.find('.') != std::string::npos)
          error(peek(), "expected an integer index, found " + describe(peek()));
        const Token& t = next();
        if (t.text.size() > 6 || std::stoul(t.text) == 0 || std::stoul(t.text) > kMaxIndex)
          error(t, "index out of range 1.." + std::to_string(kMaxIndex));
        st.indices.push_back({std::stoul(t.text), t.line, t.col});
        expect("]");
      }
      expect("=");
      if (peek().kind == Tok::ident && peek().text == "I" &&
          (toks_[pos_ + 1].kind == Tok::newline || toks_[pos_ + 1].kind == Tok::end)) {
        ++pos_;
        st.identity = true;
      } else if (is_symbol("[")) {
        ++pos_;
        st.matrix.emplace_back();
        while (true) {
          st.matrix.back().push_back(expression());
          if (is_symbol(",")) {
            ++pos_;
          } else if (is_symbol(";")) {
            ++pos_;
            st.matrix.emplace_back();
          } else {
            break;
          }
        }
        expect("]");
      } else {
        st.expr = expression();
      }
    } else {
      error(head, "unknown statement '" + h + "'");
    }
    return st;
  }

  struct DepthGuard {
    Parser& p;
    const Token& at;
    DepthGuard(Parser& parser, const Token& t) : p(parser), at(t) {
      if (++p.depth_ > kMaxDepth) error(at, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  static ExprPtr node(Expr::Kind k, const Token& at, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->line = at.line;
    e->col = at.col;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr expression() {
    DepthGuard guard(*this, peek());
    ExprPtr e = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token op = next();
      e = node(op.text == "+" ? Expr::Kind::add : Expr::Kind::sub, op, std::move(e), term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Token op = next();
      e = node(op.text == "*" ? Expr::Kind::mul : Expr::Kind::div, op, std::move(e), unary());
    }
    return e;
  }

  ExprPtr unary() {
    DepthGuard guard(*this, peek());
    if (is_symbol("-")) {
      const Token op = next();
      return node(Expr::Kind::neg, op, unary());
    }
    if (is_symbol("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = postfix();
    if (!is_symbol("^")) return base;
    const Token op = next();
    bool negative = false;
    if (is_symbol("-")) {
      ++pos_;
      negative = true;
    }
    if (peek().kind != Tok::number || peek().text.find('.') != std::string::npos)
      error(peek(), "expected an integer exponent, found " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 4 || std::stol(t.text) > kMaxScalarPower)
      error(t, "exponent exceeds " + std::to_string(kMaxScalarPower));
    auto e = node(Expr::Kind::pow, op, std::move(base));
    e->exponent = negative ? -std::stol(t.text) : std::stol(t.text);
    if (is_symbol("^")) error(peek(), "chained exponents need parentheses");
    return e;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (is_symbol("'")) {
      const Token op = next();
      e = node(Expr::Kind::adj, op, std::move(e));
    }
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      next();
      auto e = node(Expr::Kind::number, t);
      const auto dot = t.text.find('.');
      if (dot == std::string::npos) {
        e->value = mpq_class(t.text, 10);
      } else {
        const std::string frac = t.text.substr(dot + 1);
        mpz_class den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        e->value = mpq_class(mpz_class(t.text.substr(0, dot) + frac, 10), den);
        e->value.canonicalize();
      }
      return e;
    }
    if (t.kind == Tok::ident) {
      const Token id = next();
      if (id.text == "adj") {
        expect("(");
        auto e = node(Expr::Kind::adj, id, expression());
        expect(")");
        return e;
      }
      auto e = node(Expr::Kind::ident, id);
      e->name = id.text;
      return e;
    }
    if (is_symbol("(")) {
      ++pos_;
      ExprPtr e = expression();
      expect(")");
      return e;
    }
    error(t, "expected an expression, found " + describe(t));
  }
};

// ---------------------------------------------------------------------------
// Semantic evaluation

struct Scope {
  std::size_t modes = 0;
  const CommutationMatrix* theta = nullptr;  // null while Theta is not yet known
  std::map<std::string, std::size_t> mode_index;
  std::set<std::string> params;
  std::map<std::string, Scalar> lets;
};

[[noreturn]] void semantic(const Expr& e, std::string msg) {
  fail(Diagnostic::Kind::semantic, e.line, e.col, std::move(msg));
}

OpPoly evaluate(const Expr& e, const Scope& s) {
  using K = Expr::Kind;
  const std::size_t n = s.modes;
  switch (e.kind) {
    case K::number:
      return OpPoly::constant(n, Scalar(GaussRational(e.value)));
    case K::ident: {
      if (e.name == "i") return OpPoly::constant(n, Scalar::imaginary_unit());
      if (auto it = s.mode_index.find(e.name); it != s.mode_index.end()) {
        if (!s.theta) semantic(e, "mode '" + e.name + "' cannot appear in a scalar definition");
        return OpPoly::annihilator(n, it->second);
      }
      if (s.params.count(e.name)) return OpPoly::constant(n, Scalar::param(e.name));
      if (auto it = s.lets.find(e.name); it != s.lets.end()) return OpPoly::constant(n, it->second);
      if (e.name == "I") semantic(e, "'I' is only valid as the whole right-hand side of theta or D");
      semantic(e, "undeclared identifier '" + e.name + "'");
    }
    case K::neg:
      return -evaluate(*e.lhs, s);
    case K::add:
      return evaluate(*e.lhs, s) + evaluate(*e.rhs, s);
    case K::sub:
      return evaluate(*e.lhs, s) - evaluate(*e.rhs, s);
    case K::mul: {
      OpPoly a = evaluate(*e.lhs, s);
      OpPoly b = evaluate(*e.rhs, s);
      if (a.is_scalar()) return a.scalar_value() * b;
      if (b.is_scalar()) return a * b.scalar_value();
      return product(a, b, *s.theta);
    }
    case K::div: {
      OpPoly a = evaluate(*e.lhs, s);
      OpPoly b = evaluate(*e.rhs, s);
      if (!b.is_scalar()) semantic(e, "division by an operator");
      if (b.is_zero()) semantic(e, "division by zero");
      return a * b.scalar_value().inverse();
    }
    case K::pow: {
      OpPoly base = evaluate(*e.lhs, s);
      if (base.is_scalar()) {
        Scalar v = base.scalar_value();
        if (e.exponent < 0) {
          if (v.is_zero()) semantic(e, "division by zero");
          v = v.inverse();
        }
        Scalar r(1);
        for (long k = 0; k < std::labs(e.exponent); ++k) r *= v;
        return OpPoly::constant(n, r);
      }
      if (e.exponent < 0) semantic(e, "negative power of an operator");
      if (e.exponent > kMaxOperatorPower)
        semantic(e, "operator exponent exceeds " + std::to_string(kMaxOperatorPower));
      OpPoly r = OpPoly::constant(n, Scalar(1));
      for (long k = 0; k < e.exponent; ++k) r = product(r, base, *s.theta);
      return r;
    }
    case K::adj:
      return adjoint(evaluate(*e.lhs, s));
  }
  semantic(e, "unsupported expression");
}

Scalar evaluate_scalar(const Expr& e, const Scope& s, const std::string& what) {
  OpPoly v = evaluate(e, s);
  if (!v.is_scalar()) semantic(e, what + " must be a scalar expression");
  return v.scalar_value();
}

void check_name(const Token& t, const std::set<std::string>& taken) {
  if (kReserved.count(t.text))
    fail(Diagnostic::Kind::semantic, t.line, t.col, "'" + t.text + "' is a reserved word");
  if (taken.count(t.text))
    fail(Diagnostic::Kind::semantic, t.line, t.col, "'" + t.text + "' is already declared");
}

void collect_parameters(const OpPoly& p, std::set<std::string>& out) {
  for (const auto& [m, c] : p.terms()) {
    auto ps = c.parameters();
    out.insert(ps.begin(), ps.end());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SystemDescription

CommutationMatrix SystemDescription::commutation() const {
  if (!theta) return CommutationMatrix::identity(modes.size());
  return CommutationMatrix(modes.size(), *theta);
}

QSystem SystemDescription::system() const {
  QSystem s = QSystem::zero(modes.size(), channels, commutation());
  s.name = name;
  s.mode_names = modes;
  s.drift = drift;
  s.diffusion = diffusion;
  s.output = output;
  s.feedthrough = feedthrough;
  s.validate();
  return s;
}

Oscillator SystemDescription::oscillator() const {
  if (!has_oscillator) throw Error("description has no oscillator block (H = ..., L[j] = ...)");
  Oscillator o;
  o.name = name;
  o.mode_names = modes;
  o.theta = commutation();
  o.hamiltonian = hamiltonian;
  o.coupling = coupling;
  return o;
}

AnalysisOptions SystemDescription::analysis_options() const {
  return AnalysisOptions{nbar, theta_bar, relaxed_shape};
}

SystemDescription parse_description(const std::string& source) {
  std::vector<Statement> stmts = Parser(lex(source)).statements();

  SystemDescription d;
  Scope scope;
  std::set<std::string> taken;
  bool seen_system = false, seen_modes = false, seen_channels = false;
  bool operator_diffusion = false;
  std::set<std::string> seen_options;
  auto sem = [](const Statement& st, std::string msg) {
    fail(Diagnostic::Kind::semantic, st.line, st.col, std::move(msg));
  };

  // Declarations first, in any order.
  for (const auto& st : stmts) {
    switch (st.kind) {
      case Statement::Kind::system:
        if (seen_system) sem(st, "duplicate system statement");
        seen_system = true;
        d.name = st.target;
        break;
      case Statement::Kind::params:
        for (const auto& t : st.names) {
          check_name(t, taken);
          taken.insert(t.text);
          scope.params.insert(t.text);
          d.params.push_back(t.text);
        }
        break;
      case Statement::Kind::modes:
        if (seen_modes) sem(st, "duplicate modes statement");
        seen_modes = true;
        if (st.names.size() > kMaxIndex) sem(st, "too many modes");
        for (const auto& t : st.names) {
          check_name(t, taken);
          taken.insert(t.text);
          scope.mode_index[t.text] = d.modes.size();
          d.modes.push_back(t.text);
        }
        break;
      case Statement::Kind::channels:
        if (seen_channels) sem(st, "duplicate channels statement");
        seen_channels = true;
        if (st.value.text.find('.') != std::string::npos || st.value.text.size() > 3 ||
            std::stoul(st.value.text) > kMaxIndex)
          fail(Diagnostic::Kind::semantic, st.value.line, st.value.col,
               "channel count must be an integer in 0.." + std::to_string(kMaxIndex));
        d.channels = std::stoul(st.value.text);
        break;
      case Statement::Kind::option: {
        if (!seen_options.insert(st.target).second) sem(st, "duplicate option '" + st.target + "'");
        const Token& v = st.value;
        auto bad = [&](const std::string& expected) {
          fail(Diagnostic::Kind::semantic, v.line, v.col,
               "invalid value '" + v.text + "' for option " + st.target + " (expected " + expected + ")");
        };
        if (st.target == "nbar") {
          auto spec = v.text.size() <= 6 ? parse_nbar(v.text) : std::nullopt;
          if (!spec) bad("graded, literal or a positive integer");
          d.nbar = *spec;
        } else if (st.target == "theta_bar") {
          auto c = parse_theta_bar(v.text);
          if (!c) bad("physical or paper");
          d.theta_bar = *c;
        } else if (st.target == "monomial_shape") {
          if (v.text != "literal" && v.text != "relaxed") bad("literal or relaxed");
          d.relaxed_shape = v.text == "relaxed";
        } else if (st.target == "diffusion") {
          if (v.text != "scalar" && v.text != "operator") bad("scalar or operator");
          operator_diffusion = v.text == "operator";
        } else {
          sem(st, "unknown option '" + st.target + "'");
        }
        break;
      }
      default:
        break;
    }
  }

  const std::size_t n = d.modes.size(), m = d.channels;
  scope.modes = n;

  // Parameter definitions, in file order; each may use earlier ones.
  for (const auto& st : stmts) {
    if (st.kind != Statement::Kind::let) continue;
    check_name(st.names.front(), taken);
    Scalar v = evaluate_scalar(*st.expr, scope, "a let definition");
    taken.insert(st.target);
    scope.lets.emplace(st.target, v);
    d.lets.emplace_back(st.target, v);
  }

  // Theta.
  CommutationMatrix theta = CommutationMatrix::identity(n);
  bool seen_theta = false;
  for (const auto& st : stmts) {
    if (st.kind != Statement::Kind::assign || st.target != "theta") continue;
    if (seen_theta) sem(st, "duplicate theta statement");
    seen_theta = true;
    if (!st.indices.empty()) sem(st, "theta is assigned as a whole: theta = I or theta = [ ... ]");
    if (st.identity) continue;
    if (st.matrix.empty()) sem(st, "theta must be I or a matrix literal [ ... ]");
    std::vector<Scalar> entries;
    if (st.matrix.size() != n) sem(st, "theta must have " + std::to_string(n) + " rows");
    for (const auto& row : st.matrix) {
      if (row.size() != n) sem(st, "theta must have " + std::to_string(n) + " columns");
      for (const auto& e : row) entries.push_back(evaluate_scalar(*e, scope, "theta entry"));
    }
    try {
      theta = CommutationMatrix(n, entries);
    } catch (const Error& ex) {
      sem(st, ex.what());
    }
    if (!theta.is_identity()) d.theta = entries;
  }
  scope.theta = &theta;

  // Assignments.
  d.drift = OpVector(n, n);
  d.diffusion = OpMatrix(n, n, m);
  d.output = OpVector(n, m);
  d.feedthrough = OpMatrix::identity(n, m);
  d.hamiltonian = OpPoly(n);
  d.coupling = OpVector(n, m);
  std::set<std::string> assigned;
  bool d_whole = false;

  for (const auto& st : stmts) {
    if (st.kind != Statement::Kind::assign || st.target == "theta") continue;
    const std::string& t = st.target;
    const std::size_t want = t == "H" ? 0 : (t == "B" || t == "D") ? 2 : 1;

    if (t == "D" && st.indices.empty()) {
      if (d_whole || std::any_of(assigned.begin(), assigned.end(), [](const std::string& k) { return k[0] == 'D'; }))
        sem(st, "duplicate assignment to D");
      d_whole = true;
      if (st.identity) continue;
      if (st.matrix.empty()) sem(st, "D must be I, a matrix literal [ ... ], or assigned entrywise");
      if (st.matrix.size() != m) sem(st, "D must have " + std::to_string(m) + " rows");
      for (std::size_t r = 0; r < m; ++r) {
        if (st.matrix[r].size() != m) sem(st, "D must have " + std::to_string(m) + " columns");
        for (std::size_t c = 0; c < m; ++c)
          d.feedthrough(r, c) = OpPoly::constant(n, evaluate_scalar(*st.matrix[r][c], scope, "D entry"));
      }
      continue;
    }
    if (st.identity || !st.matrix.empty()) sem(st, t + " is assigned entrywise");
    if (st.indices.size() != want)
      sem(st, t + " takes " + std::to_string(want) + " index" + (want == 1 ? "" : "es") + ", got " +
                  std::to_string(st.indices.size()));
    const std::size_t rows = (t == "A" || t == "B") ? n : m;
    const std::size_t cols = m;
    std::string key = t;
    for (std::size_t k = 0; k < st.indices.size(); ++k) {
      const Index& ix = st.indices[k];
      const std::size_t bound = k == 0 ? rows : cols;
      if (ix.value > bound)
        fail(Diagnostic::Kind::semantic, ix.line, ix.col,
             "index " + std::to_string(ix.value) + " out of range for " + t + " (size " + std::to_string(bound) + ")");
      key += "[" + std::to_string(ix.value) + "]";
    }
    if (!assigned.insert(key).second || (t == "D" && d_whole)) sem(st, "duplicate assignment to " + key);

    OpPoly v = evaluate(*st.expr, scope);
    if (t == "D" && !v.is_scalar()) semantic(*st.expr, "D entries must be scalar");
    if (t == "B" && !v.is_scalar() && !operator_diffusion)
      semantic(*st.expr, "B entries must be scalar (use `option diffusion = operator` to allow operators)");

    const std::size_t i = st.indices.empty() ? 0 : st.indices[0].value - 1;
    const std::size_t j = st.indices.size() < 2 ? 0 : st.indices[1].value - 1;
    if (t == "A") d.drift[i] = std::move(v);
    else if (t == "B") d.diffusion(i, j) = std::move(v);
    else if (t == "C") d.output[i] = std::move(v);
    else if (t == "D") d.feedthrough(i, j) = std::move(v);
    else if (t == "L") d.coupling[i] = std::move(v), d.has_oscillator = true;
    else d.hamiltonian = std::move(v), d.has_oscillator = true;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string print_scalar(const Scalar& s) {
  // Parenthesised so the text stays a single factor wherever it is substituted.
  std::string t = s.str();
  bool simple = std::all_of(t.begin(), t.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  return simple ? t : "(" + t + ")";
}

}  // namespace

std::string print_description(const SystemDescription& d) {
  std::ostringstream out;
  const std::size_t n = d.modes.size(), m = d.channels;
  out << "system " << d.name << "\n";
  if (!d.params.empty()) {
    out << "params";
    for (const auto& p : d.params) out << " " << p;
    out << "\n";
  }
  for (const auto& [name, v] : d.lets) out << "let " << name << " = " << v.str() << "\n";
  out << "modes";
  for (const auto& a : d.modes) out << " " << a;
  out << "\nchannels " << m << "\n";
  if (d.theta) {
    out << "theta = [";
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out << (k ? ", " : (j ? "; " : "")) << print_scalar((*d.theta)[j * n + k]);
    }
    out << "]\n";
  }
  if (!(d.nbar == NbarSpec::graded())) out << "option nbar = " << d.nbar.str() << "\n";
  if (d.theta_bar != ThetaBarConvention::physical) out << "option theta_bar = " << to_string(d.theta_bar) << "\n";
  if (d.relaxed_shape) out << "option monomial_shape = relaxed\n";
  if (!d.diffusion.is_scalar()) out << "option diffusion = operator\n";

  for (std::size_t j = 0; j < d.drift.size(); ++j)
    if (!d.drift[j].is_zero()) out << "A[" << j + 1 << "] = " << to_string(d.drift[j], d.modes) << "\n";
  for (std::size_t j = 0; j < d.diffusion.rows(); ++j)
    for (std::size_t k = 0; k < d.diffusion.cols(); ++k)
      if (!d.diffusion(j, k).is_zero())
        out << "B[" << j + 1 << "][" << k + 1 << "] = " << to_string(d.diffusion(j, k), d.modes) << "\n";
  for (std::size_t v = 0; v < d.output.size(); ++v)
    if (!d.output[v].is_zero()) out << "C[" << v + 1 << "] = " << to_string(d.output[v], d.modes) << "\n";
  if (!d.feedthrough.is_identity()) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (j == k || !d.feedthrough(j, k).is_zero())
          out << "D[" << j + 1 << "][" << k + 1 << "] = " << to_string(d.feedthrough(j, k), d.modes) << "\n";
  }
  if (d.has_oscillator) {
    out << "H = " << to_string(d.hamiltonian, d.modes) << "\n";
    for (std::size_t j = 0; j < d.coupling.size(); ++j)
      if (!d.coupling[j].is_zero()) out << "L[" << j + 1 << "] = " << to_string(d.coupling[j], d.modes) << "\n";
  }
  return out.str();
}

SystemDescription describe(const QSystem& s, std::vector<std::string> params) {
  SystemDescription d;
  d.name = s.name.empty() ? "system" : s.name;
  d.modes = s.mode_names.size() == s.modes() ? s.mode_names : default_mode_names(s.modes());
  d.channels = s.channels();
  if (!s.theta.is_identity()) d.theta = s.theta.entries();
  d.drift = s.drift;
  d.diffusion = s.diffusion;
  d.output = s.output;
  d.feedthrough = s.feedthrough;
  d.hamiltonian = OpPoly(s.modes());
  d.coupling = OpVector(s.modes(), s.channels());
  if (params.empty()) {
    std::set<std::string> found;
    for (const auto& c : s.theta.entries()) {
      auto ps = c.parameters();
      found.insert(ps.begin(), ps.end());
    }
    for (const auto& p : s.drift.entries()) collect_parameters(p, found);
    for (const auto& p : s.output.entries()) collect_parameters(p, found);
    for (std::size_t j = 0; j < s.diffusion.rows(); ++j)
      for (std::size_t k = 0; k < s.diffusion.cols(); ++k) collect_parameters(s.diffusion(j, k), found);
    for (std::size_t j = 0; j < s.feedthrough.rows(); ++j)
      for (std::size_t k = 0; k < s.feedthrough.cols(); ++k) collect_parameters(s.feedthrough(j, k), found);
    params.assign(found.begin(), found.end());
  }
  d.params = std::move(params);
  return d;
}

}  // namespace nqs
