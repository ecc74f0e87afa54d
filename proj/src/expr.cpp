#include "dedonder/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dedonder {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& f : m) d += static_cast<int>(f.exp);
  return d;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
  int da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t p = 0; p < n; ++p) {
    if (a[p].var != b[p].var) return a[p].var < b[p].var;
    // Higher power of the earlier variable sorts first.
    if (a[p].exp != b[p].exp) return a[p].exp > b[p].exp;
  }
  return a.size() < b.size();
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].var == b[j].var) {
      out.push_back({a[i].var, a[i].exp + b[j].exp});
      ++i;
      ++j;
    } else if (a[i].var < b[j].var) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

Expr::Expr(const Rational& c) {
  if (c != 0) terms_.push_back({{}, c});
}

Expr Expr::variable(const JetCoordinate& v, std::uint32_t exp) {
  Expr e;
  if (exp == 0) return Expr(1);
  e.terms_.push_back({{{v, exp}}, Rational(1)});
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  Expr e;
  e.terms_ = std::move(terms);
  e.normalize();
  return e;
}

void Expr::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return monomial_less(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw JetError("expression is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && monomial_less(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || monomial_less(b[j].mono, a[i].mono)) {
      out.push_back(b[j]);
      if (negate_b) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Rational c = a[i].coeff;
      if (negate_b) c -= b[j].coeff;
      else c += b[j].coeff;
      if (c != 0) out.push_back({a[i].mono, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Expr& Expr::operator+=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({monomial_product(s.mono, t.mono), s.coeff * t.coeff});
  return Expr::from_terms(std::move(prod));
}

Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

Expr& Expr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Expr Expr::operator-() const {
  Expr e = *this;
  for (auto& t : e.terms_) t.coeff = -t.coeff;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t p = 0; p < a.terms_.size(); ++p)
    if (a.terms_[p].mono != b.terms_[p].mono || a.terms_[p].coeff != b.terms_[p].coeff)
      return false;
  return true;
}

Expr Expr::pow(unsigned e) const {
  Expr result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

int Expr::jet_order() const {
  int order = -1;
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (f.var.is_fibre()) order = std::max(order, f.var.order());
  return order;
}

int Expr::fibre_degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (const auto& f : t.mono)
      if (f.var.is_fibre()) d += static_cast<int>(f.exp);
    deg = std::max(deg, d);
  }
  return deg;
}

std::set<JetCoordinate> Expr::variables() const {
  std::set<JetCoordinate> out;
  for (const auto& t : terms_)
    for (const auto& f : t.mono) out.insert(f.var);
  return out;
}

bool Expr::depends_on(const std::function<bool(const JetCoordinate&)>& pred) const {
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (pred(f.var)) return true;
  return false;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string Expr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (t.mono.empty() || c != 1) {
      os << rational_to_string(c);
      need_star = true;
    }
    for (const auto& f : t.mono) {
      if (need_star) os << '*';
      os << f.var.to_string();
      if (f.exp != 1) os << '^' << f.exp;
      need_star = true;
    }
  }
  return os.str();
}

Expr partial(const Expr& e, const JetCoordinate& c) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    for (std::size_t p = 0; p < t.mono.size(); ++p) {
      if (t.mono[p].var != c) continue;
      Term d{t.mono, t.coeff * t.mono[p].exp};
      if (--d.mono[p].exp == 0) d.mono.erase(d.mono.begin() + static_cast<long>(p));
      out.push_back(std::move(d));
      break;
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr total_derivative(const Expr& e, int i, const JetConfig& cfg, int max_order) {
  if (i < 1 || i > cfg.m) throw JetError("total_derivative: base index out of range");
  if (max_order < 0) max_order = cfg.working_order();
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    for (std::size_t p = 0; p < t.mono.size(); ++p) {
      const JetCoordinate& v = t.mono[p].var;
      if (v.is_coefficient()) continue;
      Term d{t.mono, t.coeff * t.mono[p].exp};
      if (--d.mono[p].exp == 0) d.mono.erase(d.mono.begin() + static_cast<long>(p));
      if (v.is_base()) {
        if (v.index != i) continue;
      } else {
        if (v.order() + 1 > max_order)
          throw OrderOverflow("total derivative D_" + std::to_string(i) + " of " +
                              v.to_string() + " needs jet order " +
                              std::to_string(v.order() + 1) + " > " +
                              std::to_string(max_order));
        d.mono = monomial_product(d.mono, {{v.raised(i), 1}});
      }
      out.push_back(std::move(d));
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr total_derivative(const Expr& e, const MultiIndex& I, const JetConfig& cfg, int max_order) {
  Expr r = e;
  for (int i : I) r = total_derivative(r, i, cfg, max_order);
  return r;
}

Expr substitute(const Expr& e, const SubstitutionFn& lookup) {
  std::map<JetCoordinate, std::vector<Expr>> powers;  // powers[v][p] = v^(p+1)
  auto power_of = [&](const Expr& base, const JetCoordinate& v, std::uint32_t exp) -> const Expr& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(base);
    while (list.size() < exp) list.push_back(list.back() * base);
    return list[exp - 1];
  };
  std::vector<Term> plain;
  for (const auto& t : e.terms()) {
    Expr prod(t.coeff);
    Monomial kept;
    for (const auto& f : t.mono) {
      const Expr* val = lookup(f.var);
      if (val == nullptr) {
        kept.push_back(f);
      } else {
        prod = prod * power_of(*val, f.var, f.exp);
        if (prod.is_zero()) break;
      }
    }
    if (prod.is_zero()) continue;
    if (!kept.empty()) {
      std::vector<Term> shifted;
      shifted.reserve(prod.size());
      for (const auto& s : prod.terms()) shifted.push_back({monomial_product(s.mono, kept), s.coeff});
      prod = Expr::from_terms(std::move(shifted));
    }
    for (const auto& s : prod.terms()) plain.push_back(s);
  }
  return Expr::from_terms(std::move(plain));
}

Expr substitute(const Expr& e, const std::map<JetCoordinate, Expr>& values) {
  return substitute(e, [&](const JetCoordinate& v) -> const Expr* {
    auto it = values.find(v);
    return it == values.end() ? nullptr : &it->second;
  });
}

double evaluate(const Expr& e, const ValueFn& value) {
  double sum = 0.0;
  for (const auto& t : e.terms()) {
    double prod = t.coeff.get_d();
    for (const auto& f : t.mono) prod *= std::pow(value(f.var), static_cast<double>(f.exp));
    sum += prod;
  }
  return sum;
}

}  // namespace dedonder
