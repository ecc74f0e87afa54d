#include "dedonder/section.hpp"

namespace dedonder {

int PolynomialSection::degree() const {
  int d = 0;
  for (const auto& c : components)
    for (const auto& t : c.terms()) {
      int td = 0;
      for (const auto& f : t.mono)
        if (f.var.is_base()) td += static_cast<int>(f.exp);
      d = std::max(d, td);
    }
  return d;
}

void PolynomialSection::validate() const {
  for (std::size_t a = 0; a < components.size(); ++a) {
    if (components[a].depends_on([&](const JetCoordinate& v) {
          return v.is_fibre() || (v.is_base() && v.index > m);
        }))
      throw JetError("section component " + std::to_string(a + 1) +
                     " must be a polynomial in x[1..m] only");
  }
}

PolynomialSection generic_section(const JetConfig& cfg, int degree) {
  cfg.validate();
  if (degree < 0 || degree > kMaxIndexLength)
    throw JetError("generic_section: unsupported degree " + std::to_string(degree));
  PolynomialSection s;
  s.m = cfg.m;
  for (int a = 1; a <= cfg.n; ++a) {
    std::vector<Term> terms;
    for (int l = 0; l <= degree; ++l) {
      for (const MultiIndex& alpha : enumerate_multi_indices(cfg.m, l)) {
        // x^α / α!,  α! = |α|! / multiplicity(α)
        long fact = 1;
        for (int j = 2; j <= l; ++j) fact *= j;
        Rational coeff = make_rational(alpha.multiplicity(), fact);
        Monomial mono;
        for (int i = 1; i <= cfg.m; ++i) {
          int e = alpha.count(i);
          if (e) mono.push_back({JetCoordinate::base(i), static_cast<std::uint32_t>(e)});
        }
        mono.push_back({JetCoordinate::coefficient(a, alpha), 1});
        terms.push_back({std::move(mono), coeff});
      }
    }
    s.components.push_back(Expr::from_terms(std::move(terms)));
  }
  return s;
}

const Expr& SectionJets::derivative(int a, const MultiIndex& I) {
  auto key = std::make_pair(a, I);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (a < 1 || a > s_.n()) throw JetError("section has no component " + std::to_string(a));
  Expr val;
  if (I.empty()) {
    val = s_.components[a - 1];
  } else {
    const Expr& parent = derivative(a, I.without(I.size() - 1));
    val = partial(parent, JetCoordinate::base(I[I.size() - 1]));
  }
  return cache_.emplace(key, std::move(val)).first->second;
}

const Expr& SectionJets::value(const JetCoordinate& c) {
  if (!c.is_fibre()) throw JetError("SectionJets::value needs a fibre coordinate");
  return derivative(c.index, c.multi);
}

Expr substitute_section(const Expr& e, SectionJets& jets) {
  return substitute(e, [&](const JetCoordinate& v) -> const Expr* {
    return v.is_fibre() ? &jets.value(v) : nullptr;
  });
}

Expr substitute_section(const Expr& e, const PolynomialSection& s) {
  SectionJets jets(s);
  return substitute_section(e, jets);
}

}  // namespace dedonder
