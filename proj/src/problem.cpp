#include "dedonder/problem.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

namespace dedonder {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": error: " + message),
      line_(line),
      column_(column),
      message_(message) {}

SkewPerturbation ProblemSpec::perturbation() const {
  SkewPerturbation Q;
  for (const auto& s : skew) Q.q[s.key] = s.value;
  return Q;
}

const ProjectableField* ProblemSpec::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  auto fields_eq = [](const ProjectableField& f, const ProjectableField& g) {
    return f.name == g.name && f.base == g.base && f.fibre == g.fibre;
  };
  auto sections_eq = [](const SectionDecl& s, const SectionDecl& t) {
    return s.name == t.name && s.section.m == t.section.m && s.section.components == t.section.components;
  };
  return a.cfg == b.cfg && a.metrics == b.metrics && a.lagrangian == b.lagrangian &&
         std::equal(a.fields.begin(), a.fields.end(), b.fields.begin(), b.fields.end(), fields_eq) &&
         a.skew == b.skew &&
         std::equal(a.sections.begin(), a.sections.end(), b.sections.begin(), b.sections.end(),
                    sections_eq) &&
         a.grid == b.grid && a.evolve == b.evolve;
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t p = 0;
  auto advance = [&] {
    if (src[p] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++p;
  };
  while (p < src.size()) {
    char c = src[p];
    if (c == '#') {
      while (p < src.size() && src[p] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (p < src.size() && (std::isalnum(static_cast<unsigned char>(src[p])) || src[p] == '_')) {
        t.text += src[p];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && p + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[p + 1])))) {
      t.kind = Tok::Number;
      while (p < src.size() && (std::isdigit(static_cast<unsigned char>(src[p])) || src[p] == '.')) {
        t.text += src[p];
        advance();
      }
      if (p < src.size() && (src[p] == 'e' || src[p] == 'E')) {
        std::size_t q = p + 1;
        if (q < src.size() && (src[q] == '+' || src[q] == '-')) ++q;
        if (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) {
          while (p < q) {
            t.text += src[p];
            advance();
          }
          while (p < src.size() && std::isdigit(static_cast<unsigned char>(src[p]))) {
            t.text += src[p];
            advance();
          }
        }
      }
      if (std::count(t.text.begin(), t.text.end(), '.') > 1)
        throw ParseError(t.line, t.col, "malformed number '" + t.text + "'");
    } else if (c == '-' && p + 1 < src.size() && src[p + 1] == '>') {
      t.kind = Tok::Punct;
      t.text = "->";
      advance();
      advance();
    } else if (std::string("=;[](),+-*/^{}").find(c) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Exact value of a decimal literal such as 0.25 or 1e-3.
Rational decimal_to_rational(const std::string& text) {
  std::string mant = text, expo;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mant = text.substr(0, e);
    expo = text.substr(e + 1);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    scale = -static_cast<long>(mant.size() - dot - 1);
  } else {
    digits = mant;
  }
  if (!expo.empty()) scale += std::stol(expo);
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10), ten(10), pw;
  mpz_pow_ui(pw.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(num * pw) : Rational(num, pw);
  q.canonicalize();
  return q;
}

// Expression AST; evaluated per sum binding.
struct Node {
  enum class Kind { Number, Pi, Add, Sub, Mul, Div, Neg, Pow, X, Y, Z, Sum, Metric } kind;
  int line = 1, col = 1;
  std::string text;  // number literal, sum variable, metric name
  unsigned exponent = 0;
  std::vector<std::unique_ptr<Node>> kids;
  std::vector<Token> indices;  // x/y/z/metric index tokens, sum bounds
};
using NodePtr = std::unique_ptr<Node>;

const std::set<std::string> kReserved = {"dims", "metric", "L",  "field", "skewQ", "section",
                                         "grid", "evolve", "sum", "x",    "y",     "z",
                                         "pi",   "diag",   "periodic", "open"};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ProblemSpec run() {
    parse_header();
    enum Stage { Metric, Lagr, Field, Skew, Section, Grid, Evolve, Done };
    Stage stage = Metric;
    auto enter = [&](Stage s, const Token& t) {
      if (s < stage || (s == stage && (s == Lagr || s == Grid || s == Evolve))) {
        if (s == stage) throw ParseError(t.line, t.col, "duplicate '" + t.text + "' statement");
        throw ParseError(t.line, t.col, "'" + t.text + "' statement is out of order; expected order: dims, metric, L, field, skewQ, section, grid, evolve");
      }
      if (s > Lagr && stage <= Metric)
        throw ParseError(t.line, t.col, "'" + t.text + "' before the Lagrangian; expected 'L ='");
      stage = s;
    };
    bool have_l = false;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident)
        throw error_here("expected a statement keyword (metric, L, field, skewQ, section, grid, evolve)");
      if (t.text == "metric") {
        enter(Metric, t);
        parse_metric();
      } else if (t.text == "L") {
        enter(Lagr, t);
        parse_lagrangian();
        have_l = true;
      } else if (t.text == "field") {
        enter(Field, t);
        parse_field();
      } else if (t.text == "skewQ") {
        enter(Skew, t);
        parse_skew();
      } else if (t.text == "section") {
        enter(Section, t);
        parse_section();
      } else if (t.text == "grid") {
        enter(Grid, t);
        parse_grid();
      } else if (t.text == "evolve") {
        enter(Evolve, t);
        parse_evolve();
      } else if (t.text == "dims") {
        throw ParseError(t.line, t.col, "duplicate 'dims' statement");
      } else {
        throw ParseError(t.line, t.col, "unknown statement '" + t.text +
                                            "'; expected metric, L, field, skewQ, section, grid or evolve");
      }
    }
    if (!have_l) throw error_here("missing Lagrangian; expected 'L = expr;'");
    return std::move(spec_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ProblemSpec spec_;
  std::map<std::string, const MetricDecl*> metric_index_;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Number: return "number '" + t.text + "'";
      case Tok::Ident: return "'" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }
  ParseError error_here(const std::string& msg) const {
    return ParseError(peek().line, peek().col, msg + "; found " + describe(peek()));
  }
  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  const Token& expect_punct(const char* p) {
    if (!is_punct(p)) throw error_here(std::string("expected '") + p + "'");
    return next();
  }
  const Token& expect_ident(const char* s) {
    if (!is_ident(s)) throw error_here(std::string("expected '") + s + "'");
    return next();
  }
  const Token& expect_name() {
    if (peek().kind != Tok::Ident) throw error_here("expected a name");
    if (kReserved.count(peek().text)) throw error_here("expected a name, not a reserved word");
    return next();
  }
  int expect_int(const std::string& what) {
    if (peek().kind != Tok::Number || peek().text.find_first_of(".eE") != std::string::npos)
      throw error_here("expected an integer " + what);
    const Token& t = next();
    if (t.text.size() > 6) throw ParseError(t.line, t.col, what + " is too large");
    return std::stoi(t.text);
  }

  void parse_header() {
    if (!is_ident("dims")) throw error_here("expected 'dims m n k;' as the first statement");
    const Token& kw = next();
    int m = expect_int("m"), n = expect_int("n"), k = expect_int("k");
    expect_punct(";");
    try {
      spec_.cfg = make_config(m, n, k);
    } catch (const std::exception& e) {
      throw ParseError(kw.line, kw.col, std::string("invalid dims: ") + e.what());
    }
  }

  // --- expressions --------------------------------------------------------

  NodePtr make(Node::Kind k, const Token& at) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->line = at.line;
    n->col = at.col;
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (is_punct("+") || is_punct("-")) {
      const Token& op = next();
      auto n = make(op.text == "+" ? Node::Kind::Add : Node::Kind::Sub, op);
      n->kids.push_back(std::move(lhs));
      n->kids.push_back(parse_term());
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (is_punct("*") || is_punct("/")) {
      const Token& op = next();
      auto n = make(op.text == "*" ? Node::Kind::Mul : Node::Kind::Div, op);
      n->kids.push_back(std::move(lhs));
      n->kids.push_back(parse_unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (is_punct("-") || is_punct("+")) {
      const Token& op = next();
      NodePtr inner = parse_unary();
      if (op.text == "+") return inner;
      auto n = make(Node::Kind::Neg, op);
      n->kids.push_back(std::move(inner));
      return n;
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (is_punct("^")) {
      const Token& op = next();
      int e = expect_int("exponent");
      if (e > 64) throw ParseError(op.line, op.col, "exponent too large (at most 64)");
      auto n = make(Node::Kind::Pow, op);
      n->exponent = static_cast<unsigned>(e);
      n->kids.push_back(std::move(base));
      if (is_punct("^")) throw error_here("chained '^' is ambiguous; use parentheses");
      return n;
    }
    return base;
  }

  Token expect_index() {
    if (peek().kind == Tok::Number || (peek().kind == Tok::Ident && !kReserved.count(peek().text)))
      return next();
    throw error_here("expected an index (integer or sum variable)");
  }

  NodePtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      auto n = make(Node::Kind::Number, t);
      n->text = next().text;
      return n;
    }
    if (is_punct("(")) {
      next();
      NodePtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != Tok::Ident) throw error_here("expected a number, variable, '(' or sum(...)");
    if (t.text == "pi") return make(Node::Kind::Pi, next());
    if (t.text == "x" || t.text == "y") {
      auto n = make(t.text == "x" ? Node::Kind::X : Node::Kind::Y, next());
      expect_punct("[");
      n->indices.push_back(expect_index());
      expect_punct("]");
      return n;
    }
    if (t.text == "z") {
      auto n = make(Node::Kind::Z, next());
      expect_punct("[");
      n->indices.push_back(expect_index());
      expect_punct(";");
      while (!is_punct("]")) n->indices.push_back(expect_index());
      expect_punct("]");
      if (n->indices.size() < 2)
        throw ParseError(n->line, n->col, "z[a; I] needs at least one derivative index; use y[a] for order 0");
      return n;
    }
    if (t.text == "sum") {
      auto n = make(Node::Kind::Sum, next());
      expect_punct("(");
      n->text = expect_name().text;
      expect_punct(",");
      n->indices.push_back(expect_index());
      expect_punct(",");
      n->indices.push_back(expect_index());
      expect_punct(",");
      n->kids.push_back(parse_expr());
      expect_punct(")");
      return n;
    }
    if (!kReserved.count(t.text) && metric_index_.count(t.text)) {
      auto n = make(Node::Kind::Metric, next());
      n->text = t.text;
      expect_punct("[");
      n->indices.push_back(expect_index());
      expect_punct(",");
      n->indices.push_back(expect_index());
      expect_punct("]");
      return n;
    }
    if (!kReserved.count(t.text)) throw error_here("unknown name (not a declared metric)");
    throw error_here("expected a number, variable, '(' or sum(...)");
  }

  // --- evaluation ---------------------------------------------------------

  using Env = std::map<std::string, int>;

  int index_value(const Token& t, const Env& env) const {
    if (t.kind == Tok::Number) {
      if (t.text.find_first_of(".eE") != std::string::npos || t.text.size() > 6)
        throw ParseError(t.line, t.col, "index must be a small integer");
      return std::stoi(t.text);
    }
    auto it = env.find(t.text);
    if (it == env.end()) throw ParseError(t.line, t.col, "unbound index variable '" + t.text + "'");
    return it->second;
  }

  int checked_index(const Token& t, const Env& env, int hi, const char* what) const {
    int v = index_value(t, env);
    if (v < 1 || v > hi)
      throw ParseError(t.line, t.col, std::string(what) + " index " + std::to_string(v) +
                                          " out of range 1.." + std::to_string(hi));
    return v;
  }

  // Symbolic value. allowed_vars filters the variable kinds usable here.
  struct Context {
    bool allow_y = true;
    bool allow_z = true;
    const char* where = "expression";
  };

  Expr eval(const Node& n, Env& env, const Context& ctx) {
    const JetConfig& cfg = spec_.cfg;
    switch (n.kind) {
      case Node::Kind::Number: return Expr(decimal_to_rational(n.text));
      case Node::Kind::Pi:
        throw ParseError(n.line, n.col, std::string("'pi' is only allowed in grid bounds, not in a ") + ctx.where);
      case Node::Kind::Add: return eval(*n.kids[0], env, ctx) + eval(*n.kids[1], env, ctx);
      case Node::Kind::Sub: return eval(*n.kids[0], env, ctx) - eval(*n.kids[1], env, ctx);
      case Node::Kind::Mul: return eval(*n.kids[0], env, ctx) * eval(*n.kids[1], env, ctx);
      case Node::Kind::Neg: return -eval(*n.kids[0], env, ctx);
      case Node::Kind::Div: {
        Expr num = eval(*n.kids[0], env, ctx);
        Expr den = eval(*n.kids[1], env, ctx);
        if (!den.is_constant()) throw ParseError(n.line, n.col, "division only by a constant");
        Rational d = den.constant_value();
        if (d == 0) throw ParseError(n.line, n.col, "division by zero");
        Rational inv = 1 / d;
        return num * Expr(inv);
      }
      case Node::Kind::Pow: return eval(*n.kids[0], env, ctx).pow(n.exponent);
      case Node::Kind::X: return Expr::x(checked_index(n.indices[0], env, cfg.m, "base"));
      case Node::Kind::Y:
        if (!ctx.allow_y) throw ParseError(n.line, n.col, std::string("y[...] is not allowed in a ") + ctx.where);
        return Expr::y(checked_index(n.indices[0], env, cfg.n, "field"));
      case Node::Kind::Z: {
        if (!ctx.allow_z) throw ParseError(n.line, n.col, std::string("z[...] is not allowed in a ") + ctx.where);
        int a = checked_index(n.indices[0], env, cfg.n, "field");
        std::vector<int> I;
        for (std::size_t p = 1; p < n.indices.size(); ++p)
          I.push_back(checked_index(n.indices[p], env, cfg.m, "derivative"));
        if (static_cast<int>(I.size()) > kMaxIndexLength)
          throw ParseError(n.line, n.col, "jet index too long");
        return Expr::z(a, MultiIndex::canonical(I, cfg.m));
      }
      case Node::Kind::Metric: {
        const MetricDecl& g = *metric_index_.at(n.text);
        int dim = static_cast<int>(g.table.size());
        int i = checked_index(n.indices[0], env, dim, "metric");
        int j = checked_index(n.indices[1], env, dim, "metric");
        return Expr(g.table[i - 1][j - 1]);
      }
      case Node::Kind::Sum: {
        if (env.count(n.text))
          throw ParseError(n.line, n.col, "sum variable '" + n.text + "' shadows an enclosing sum");
        int lo = index_value(n.indices[0], env), hi = index_value(n.indices[1], env);
        if (hi - lo > 64) throw ParseError(n.line, n.col, "sum range too large");
        Expr acc;
        for (int v = lo; v <= hi; ++v) {
          env[n.text] = v;
          acc += eval(*n.kids[0], env, ctx);
        }
        env.erase(n.text);
        return acc;
      }
    }
    return Expr();
  }

  Expr eval_symbolic(const Node& n, const Context& ctx) {
    Env env;
    return eval(n, env, ctx);
  }

  double eval_real(const Node& n) {
    switch (n.kind) {
      case Node::Kind::Number: return std::strtod(n.text.c_str(), nullptr);
      case Node::Kind::Pi: return std::numbers::pi;
      case Node::Kind::Add: return eval_real(*n.kids[0]) + eval_real(*n.kids[1]);
      case Node::Kind::Sub: return eval_real(*n.kids[0]) - eval_real(*n.kids[1]);
      case Node::Kind::Mul: return eval_real(*n.kids[0]) * eval_real(*n.kids[1]);
      case Node::Kind::Div: return eval_real(*n.kids[0]) / eval_real(*n.kids[1]);
      case Node::Kind::Neg: return -eval_real(*n.kids[0]);
      case Node::Kind::Pow: return std::pow(eval_real(*n.kids[0]), static_cast<double>(n.exponent));
      default: throw ParseError(n.line, n.col, "grid bounds must be numeric constants (numbers, pi, + - * / ^)");
    }
  }

  // --- statements ---------------------------------------------------------

  std::vector<Rational> parse_constant_list(const char* open, const char* close) {
    std::vector<Rational> row;
    expect_punct(open);
    Context ctx{false, false, "metric entry"};
    while (true) {
      NodePtr e = parse_expr();
      Expr v = eval_symbolic(*e, ctx);
      if (!v.is_constant()) throw ParseError(e->line, e->col, "metric entries must be constants");
      row.push_back(v.constant_value());
      if (is_punct(",")) {
        next();
        continue;
      }
      expect_punct(close);
      return row;
    }
  }

  static bool invertible(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && a[piv][c] == 0) ++piv;
      if (piv == n) return false;
      std::swap(a[piv], a[c]);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a[r][c] == 0) continue;
        Rational f = a[r][c] / a[c][c];
        for (std::size_t q = c; q < n; ++q) a[r][q] -= f * a[c][q];
      }
    }
    return true;
  }

  void parse_metric() {
    next();
    const Token& name = expect_name();
    for (const auto& m : spec_.metrics)
      if (m.name == name.text) throw ParseError(name.line, name.col, "duplicate metric '" + name.text + "'");
    expect_punct("=");
    MetricDecl g;
    g.name = name.text;
    if (is_ident("diag")) {
      next();
      auto d = parse_constant_list("(", ")");
      g.table.assign(d.size(), std::vector<Rational>(d.size(), Rational(0)));
      for (std::size_t i = 0; i < d.size(); ++i) g.table[i][i] = d[i];
    } else if (is_punct("[")) {
      next();
      while (true) {
        g.table.push_back(parse_constant_list("[", "]"));
        if (is_punct(",")) {
          next();
          continue;
        }
        expect_punct("]");
        break;
      }
    } else {
      throw error_here("expected diag(...) or [[...], ...]");
    }
    expect_punct(";");
    const std::size_t n = g.table.size();
    for (const auto& row : g.table)
      if (row.size() != n) throw ParseError(name.line, name.col, "metric '" + g.name + "' is not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (g.table[i][j] != g.table[j][i])
          throw ParseError(name.line, name.col, "metric '" + g.name + "' is not symmetric");
    if (!invertible(g.table))
      throw ParseError(name.line, name.col, "metric '" + g.name + "' is not invertible");
    spec_.metrics.push_back(std::move(g));
    metric_index_.clear();
    for (const auto& m : spec_.metrics) metric_index_[m.name] = &m;
  }

  void parse_lagrangian() {
    const Token& kw = next();
    expect_punct("=");
    std::size_t start = pos_;
    NodePtr e = parse_expr();
    std::size_t stop = pos_;
    expect_punct(";");
    spec_.lagrangian = eval_symbolic(*e, Context{true, true, "Lagrangian"});
    for (std::size_t p = start; p < stop; ++p) {
      if (p > start) spec_.lagrangian_source += ' ';
      spec_.lagrangian_source += toks_[p].text;
    }
    int order = spec_.lagrangian.jet_order();
    if (order > spec_.cfg.k)
      throw ParseError(kw.line, kw.col, "Lagrangian has jet order " + std::to_string(order) +
                                            " > k = " + std::to_string(spec_.cfg.k));
    spec_.lagrangian.depends_on([&](const JetCoordinate& v) {
      if (v.is_coefficient()) throw ParseError(kw.line, kw.col, "unexpected coefficient symbol");
      return false;
    });
  }

  // { x[1] -> expr, y[2] -> expr }
  template <class OnEntry>
  void parse_component_map(OnEntry&& on_entry) {
    expect_punct("{");
    if (is_punct("}")) {
      next();
      return;
    }
    while (true) {
      const Token& var = peek();
      if (!(is_ident("x") || is_ident("y"))) throw error_here("expected x[i] or y[a]");
      next();
      expect_punct("[");
      Token idx = expect_index();
      expect_punct("]");
      expect_punct("->");
      NodePtr e = parse_expr();
      on_entry(var, idx, *e);
      if (is_punct(",")) {
        next();
        continue;
      }
      expect_punct("}");
      return;
    }
  }

  void parse_field() {
    next();
    const Token& name = expect_name();
    if (spec_.field(name.text)) throw ParseError(name.line, name.col, "duplicate field '" + name.text + "'");
    expect_punct("=");
    ProjectableField Y = ProjectableField::zero(spec_.cfg);
    Y.name = name.text;
    std::set<std::pair<bool, int>> seen;
    parse_component_map([&](const Token& var, const Token& idx, const Node& e) {
      bool is_x = var.text == "x";
      int i = checked_index(idx, {}, is_x ? spec_.cfg.m : spec_.cfg.n, is_x ? "base" : "field");
      if (!seen.insert({is_x, i}).second)
        throw ParseError(var.line, var.col, "duplicate component " + var.text + "[" + std::to_string(i) + "]");
      Expr v = eval_symbolic(e, Context{!is_x, false, is_x ? "base component (must depend on x only)"
                                                            : "field component"});
      (is_x ? Y.base : Y.fibre)[i - 1] = v;
    });
    expect_punct(";");
    try {
      Y.validate(spec_.cfg);
    } catch (const std::exception& e) {
      throw ParseError(name.line, name.col, e.what());
    }
    spec_.fields.push_back(std::move(Y));
  }

  void parse_skew() {
    const Token& kw = next();
    expect_punct("[");
    Token ta = expect_index();
    int a = checked_index(ta, {}, spec_.cfg.n, "field");
    expect_punct(";");
    std::vector<int> idx;
    while (!is_punct("]")) {
      Token t = expect_index();
      idx.push_back(checked_index(t, {}, spec_.cfg.m, "derivative"));
    }
    expect_punct("]");
    if (idx.size() < 2 || static_cast<int>(idx.size()) > spec_.cfg.k)
      throw ParseError(kw.line, kw.col, "skewQ needs between 2 and k = " + std::to_string(spec_.cfg.k) +
                                            " upper indices");
    CoefficientKey key{a, idx[0], MultiIndex::canonical(std::span<const int>(idx).subspan(1), spec_.cfg.m)};
    for (const auto& s : spec_.skew)
      if (s.key == key) throw ParseError(kw.line, kw.col, "duplicate skewQ" + key.to_string().substr(1));
    expect_punct("=");
    NodePtr e = parse_expr();
    expect_punct(";");
    Expr v = eval_symbolic(*e, Context{true, true, "skewQ value"});
    const int bound = 2 * spec_.cfg.k - key.level();
    if (v.jet_order() > bound)
      throw ParseError(e->line, e->col, "skewQ value has jet order " + std::to_string(v.jet_order()) +
                                            " > " + std::to_string(bound));
    spec_.skew.push_back({key, v});
  }

  void parse_section() {
    next();
    const Token& name = expect_name();
    for (const auto& s : spec_.sections)
      if (s.name == name.text) throw ParseError(name.line, name.col, "duplicate section '" + name.text + "'");
    expect_punct("=");
    SectionDecl s;
    s.name = name.text;
    s.section.m = spec_.cfg.m;
    s.section.components.assign(spec_.cfg.n, Expr());
    std::set<int> seen;
    parse_component_map([&](const Token& var, const Token& idx, const Node& e) {
      if (var.text != "y") throw ParseError(var.line, var.col, "section components are y[a] -> polynomial in x");
      int a = checked_index(idx, {}, spec_.cfg.n, "field");
      if (!seen.insert(a).second)
        throw ParseError(var.line, var.col, "duplicate component y[" + std::to_string(a) + "]");
      s.section.components[a - 1] = eval_symbolic(e, Context{false, false, "section component"});
    });
    expect_punct(";");
    spec_.sections.push_back(std::move(s));
  }

  void parse_grid() {
    const Token& kw = next();
    GridSpec g;
    while (is_punct("(")) {
      next();
      GridDim d;
      NodePtr lo = parse_expr();
      d.lo = eval_real(*lo);
      expect_punct(",");
      NodePtr hi = parse_expr();
      d.hi = eval_real(*hi);
      expect_punct(",");
      const Token& nt = peek();
      d.n = expect_int("point count");
      if (d.n < 8) throw ParseError(nt.line, nt.col, "grid needs at least 8 points per dimension");
      expect_punct(",");
      if (is_ident("periodic")) {
        d.periodic = true;
      } else if (!is_ident("open")) {
        throw error_here("expected 'periodic' or 'open'");
      }
      next();
      expect_punct(")");
      if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi))
        throw ParseError(lo->line, lo->col, "grid bounds must be finite with lo < hi");
      g.dims.push_back(d);
    }
    if (static_cast<int>(g.dims.size()) != spec_.cfg.m)
      throw error_here("grid needs one (lo, hi, n, periodic|open) group per base dimension (m = " +
                       std::to_string(spec_.cfg.m) + ")");
    (void)kw;
    expect_punct(";");
    spec_.grid = std::move(g);
  }

  double parse_signed_number() {
    bool neg = false;
    if (is_punct("-") || is_punct("+")) neg = next().text == "-";
    if (peek().kind != Tok::Number) throw error_here("expected a number");
    double v = std::strtod(next().text.c_str(), nullptr);
    return neg ? -v : v;
  }

  void parse_evolve() {
    const Token& kw = next();
    EvolveParams e;
    e.t0 = parse_signed_number();
    e.t1 = parse_signed_number();
    e.steps = expect_int("step count");
    expect_punct(";");
    if (!(e.t1 > e.t0)) throw ParseError(kw.line, kw.col, "evolve needs t1 > t0");
    if (e.steps < 1) throw ParseError(kw.line, kw.col, "evolve needs at least one step");
    spec_.evolve = e;
  }
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) { return Parser(text).run(); }

std::string render_problem(const ProblemSpec& spec) {
  std::ostringstream os;
  os << "dims " << spec.cfg.m << ' ' << spec.cfg.n << ' ' << spec.cfg.k << ";\n";
  for (const auto& g : spec.metrics) {
    os << "metric " << g.name << " = [";
    for (std::size_t i = 0; i < g.table.size(); ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < g.table[i].size(); ++j) os << (j ? ", " : "") << g.table[i][j].get_str();
      os << ']';
    }
    os << "];\n";
  }
  os << "L = " << spec.lagrangian.to_string() << ";\n";
  auto component_map = [&](const std::vector<Expr>& base, const std::vector<Expr>& fibre) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < base.size(); ++i)
      if (!base[i].is_zero()) parts.push_back("x[" + std::to_string(i + 1) + "] -> " + base[i].to_string());
    for (std::size_t a = 0; a < fibre.size(); ++a)
      if (!fibre[a].is_zero()) parts.push_back("y[" + std::to_string(a + 1) + "] -> " + fibre[a].to_string());
    std::string s = "{ ";
    for (std::size_t p = 0; p < parts.size(); ++p) s += (p ? ", " : "") + parts[p];
    return s + (parts.empty() ? "}" : " }");
  };
  for (const auto& Y : spec.fields) os << "field " << Y.name << " = " << component_map(Y.base, Y.fibre) << ";\n";
  for (const auto& s : spec.skew) {
    os << "skewQ[" << s.key.a << "; " << s.key.i;
    for (int j : s.key.tail) os << ' ' << j;
    os << "] = " << s.value.to_string() << ";\n";
  }
  for (const auto& s : spec.sections)
    os << "section " << s.name << " = " << component_map({}, s.section.components) << ";\n";
  if (spec.grid) {
    os << "grid";
    for (const auto& d : spec.grid->dims)
      os << " (" << fmt_double(d.lo) << ", " << fmt_double(d.hi) << ", " << d.n << ", "
         << (d.periodic ? "periodic" : "open") << ')';
    os << ";\n";
  }
  if (spec.evolve)
    os << "evolve " << fmt_double(spec.evolve->t0) << ' ' << fmt_double(spec.evolve->t1) << ' '
       << spec.evolve->steps << ";\n";
  return os.str();
}

}  // namespace dedonder
