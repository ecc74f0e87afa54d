#include "dedonder/forms.hpp"

#include <sstream>

namespace dedonder {

std::string basis_to_string(const BasisOneForm& b) { return "d" + b.to_string(); }

namespace {

// Sorts w in place; returns 0 on a repeated entry, else the permutation sign.
int sort_with_sign(Wedge& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (w[j - 1] == w[j]) return 0;
      if (w[j] < w[j - 1]) {
        std::swap(w[j], w[j - 1]);
        sign = -sign;
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] == w[i]) return 0;
  return sign;
}

}  // namespace

DifferentialForm DifferentialForm::scalar(const Expr& f) {
  DifferentialForm out(0);
  out.add_term({}, f);
  return out;
}

DifferentialForm DifferentialForm::basis(const BasisOneForm& b) {
  if (b.is_coefficient()) throw JetError("coefficient symbols have no differential");
  DifferentialForm out(1);
  out.add_term({b}, Expr(1));
  return out;
}

DifferentialForm DifferentialForm::term(const Expr& coeff, Wedge wedge) {
  DifferentialForm out(static_cast<int>(wedge.size()));
  int sign = sort_with_sign(wedge);
  if (sign == 0) return out;
  out.add_term(wedge, sign > 0 ? coeff : -coeff);
  return out;
}

Expr DifferentialForm::coefficient(const Wedge& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Expr() : it->second;
}

void DifferentialForm::add_term(const Wedge& w, const Expr& coeff) {
  if (static_cast<int>(w.size()) != degree_) throw JetError("add_term: degree mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw JetError("adding forms of different degree");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) degree_ = o.degree_;
  if (o.degree_ != degree_) throw JetError("subtracting forms of different degree");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

DifferentialForm DifferentialForm::operator-() const {
  return map_coefficients([](const Expr& c) { return -c; });
}

DifferentialForm operator*(const Expr& f, const DifferentialForm& a) {
  return a.map_coefficients([&](const Expr& c) { return f * c; });
}

int DifferentialForm::jet_order() const {
  int order = -1;
  for (const auto& [w, c] : terms_) {
    order = std::max(order, c.jet_order());
    for (const auto& b : w)
      if (b.is_fibre()) order = std::max(order, b.order());
  }
  return order;
}

std::string DifferentialForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << '\n';
    first = false;
    os << '(' << c.to_string() << ')';
    for (std::size_t p = 0; p < w.size(); ++p) os << (p ? "^" : " ") << basis_to_string(w[p]);
  }
  return os.str();
}

void VectorFieldOnJet::set(const JetCoordinate& c, const Expr& v) {
  if (c.is_coefficient()) throw JetError("vector fields act on jet coordinates only");
  if (v.is_zero())
    comps_.erase(c);
  else
    comps_[c] = v;
}

Expr VectorFieldOnJet::component(const JetCoordinate& c) const {
  auto it = comps_.find(c);
  return it == comps_.end() ? Expr() : it->second;
}

bool VectorFieldOnJet::is_vertical() const {
  for (const auto& [c, v] : comps_)
    if (c.is_base()) return false;
  return true;
}

VectorFieldOnJet VectorFieldOnJet::coordinate(const JetCoordinate& c) {
  VectorFieldOnJet X;
  X.set(c, Expr(1));
  return X;
}

std::string VectorFieldOnJet::to_string() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, v] : comps_) {
    if (!first) os << '\n';
    first = false;
    os << c.to_string() << " -> " << v.to_string();
  }
  return os.str();
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  DifferentialForm out(a.degree() + b.degree());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      Wedge w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      int sign = sort_with_sign(w);
      if (sign == 0) continue;
      Expr c = ca * cb;
      out.add_term(w, sign > 0 ? c : -c);
    }
  }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.degree() + 1);
  for (const auto& [w, c] : a.terms()) {
    for (const JetCoordinate& v : c.variables()) {
      if (v.is_coefficient()) continue;
      Wedge nw;
      nw.reserve(w.size() + 1);
      nw.push_back(v);
      nw.insert(nw.end(), w.begin(), w.end());
      int sign = sort_with_sign(nw);
      if (sign == 0) continue;
      Expr dc = partial(c, v);
      out.add_term(nw, sign > 0 ? dc : -dc);
    }
  }
  return out;
}

DifferentialForm interior_product(const VectorFieldOnJet& X, const DifferentialForm& a) {
  if (a.degree() == 0) throw JetError("interior product of a 0-form");
  DifferentialForm out(a.degree() - 1);
  for (const auto& [w, c] : a.terms()) {
    for (std::size_t r = 0; r < w.size(); ++r) {
      Expr xr = X.component(w[r]);
      if (xr.is_zero()) continue;
      Wedge rest = w;
      rest.erase(rest.begin() + static_cast<long>(r));
      Expr coeff = xr * c;
      out.add_term(rest, r % 2 == 0 ? coeff : -coeff);
    }
  }
  return out;
}

DifferentialForm lie_derivative(const VectorFieldOnJet& X, const DifferentialForm& a) {
  DifferentialForm out = interior_product(X, exterior_derivative(a));
  if (a.degree() > 0) out += exterior_derivative(interior_product(X, a));
  return out;
}

DifferentialForm volume_form(int m) {
  Wedge w;
  for (int i = 1; i <= m; ++i) w.push_back(dx(i));
  DifferentialForm out(m);
  out.add_term(w, Expr(1));
  return out;
}

DifferentialForm omega(int i, int m) {
  return interior_product(VectorFieldOnJet::coordinate(JetCoordinate::base(i)), volume_form(m));
}

ContactForm contact_form(const JetConfig& cfg, int a, const MultiIndex& I) {
  JetCoordinate c = JetCoordinate::jet(a, I);
  if (I.size() + 1 > cfg.working_order())
    throw OrderOverflow("contact form of order " + std::to_string(I.size()) +
                        " needs jets beyond the working order");
  DifferentialForm f = DifferentialForm::basis(c);
  for (int i = 1; i <= cfg.m; ++i)
    f -= DifferentialForm::term(Expr::variable(c.raised(i)), {dx(i)});
  return {a, I, f};
}

std::vector<ContactForm> contact_forms(const JetConfig& cfg, int order) {
  cfg.validate();
  if (order < 1 || order > cfg.working_order())
    throw JetError("contact_forms: order outside [1, 2k-1]");
  std::vector<ContactForm> out;
  for (int l = 0; l <= order - 1; ++l)
    for (int a = 1; a <= cfg.n; ++a)
      for (const auto& I : enumerate_multi_indices(cfg.m, l)) out.push_back(contact_form(cfg, a, I));
  return out;
}

namespace {

// Rewrites every basis one-form by `image` (a 1-form or nullptr to keep it),
// coefficients by `coeff`, and expands the wedges.
template <class Image, class Coeff>
DifferentialForm rewrite_basis(const DifferentialForm& a, Image&& image, Coeff&& coeff) {
  DifferentialForm out(a.degree());
  for (const auto& [w, c] : a.terms()) {
    Expr nc = coeff(c);
    if (nc.is_zero()) continue;
    DifferentialForm acc = DifferentialForm::scalar(nc);
    for (const auto& b : w) {
      acc = wedge(acc, image(b));
      if (acc.is_zero()) break;
    }
    if (!acc.is_zero()) out += acc;
  }
  return out;
}

}  // namespace

DifferentialForm holonomic_pullback(const DifferentialForm& a, SectionJets& jets) {
  const int m = jets.section().m;
  std::map<BasisOneForm, DifferentialForm> images;
  auto image = [&](const BasisOneForm& b) -> const DifferentialForm& {
    auto it = images.find(b);
    if (it != images.end()) return it->second;
    DifferentialForm f(1);
    if (b.is_base()) {
      f.add_term({b}, Expr(1));
    } else {
      for (int i = 1; i <= m; ++i) f.add_term({dx(i)}, jets.value(b.raised(i)));
    }
    return images.emplace(b, std::move(f)).first->second;
  };
  DifferentialForm out =
      rewrite_basis(a, image, [&](const Expr& c) { return substitute_section(c, jets); });
  return out.is_zero() ? DifferentialForm(a.degree()) : out;
}

DifferentialForm holonomic_pullback(const DifferentialForm& a, const PolynomialSection& s) {
  SectionJets jets(s);
  return holonomic_pullback(a, jets);
}

DifferentialForm horizontalize(const DifferentialForm& a, const JetConfig& cfg, int max_order) {
  if (max_order < 0) max_order = cfg.working_order();
  auto image = [&](const BasisOneForm& b) {
    DifferentialForm f(1);
    if (b.is_base()) {
      f.add_term({b}, Expr(1));
      return f;
    }
    if (b.order() + 1 > max_order)
      throw OrderOverflow("horizontalize: d" + b.to_string() + " needs jets of order " +
                          std::to_string(b.order() + 1));
    for (int i = 1; i <= cfg.m; ++i) f.add_term({dx(i)}, Expr::variable(b.raised(i)));
    return f;
  };
  DifferentialForm out = rewrite_basis(a, image, [](const Expr& c) { return c; });
  return out.is_zero() ? DifferentialForm(a.degree()) : out;
}

std::vector<JetCoordinate> fibre_directions(const JetConfig& cfg, const Fibration& f) {
  std::vector<JetCoordinate> out;
  for (const auto& c : enumerate_coordinates(cfg, cfg.working_order())) {
    switch (f.kind) {
      case Fibration::Kind::Source:
        if (c.is_fibre()) out.push_back(c);
        break;
      case Fibration::Kind::Target:
        if (c.is_jet()) out.push_back(c);
        break;
      case Fibration::Kind::Forgetful:
        if (c.is_jet() && c.order() > f.level) out.push_back(c);
        break;
    }
  }
  return out;
}

bool is_semibasic(const DifferentialForm& a, const Fibration& f, const JetConfig& cfg) {
  if (a.degree() == 0 || a.is_zero()) return true;
  for (const auto& c : fibre_directions(cfg, f))
    if (!interior_product(VectorFieldOnJet::coordinate(c), a).is_zero()) return false;
  return true;
}

ContactPresentation to_contact_basis(const DifferentialForm& a, const JetConfig& cfg) {
  auto image = [&](const BasisOneForm& b) {
    DifferentialForm f(1);
    f.add_term({b}, Expr(1));
    if (b.is_base()) return f;
    if (b.order() + 1 > cfg.working_order())
      throw OrderOverflow("to_contact_basis: d" + b.to_string() +
                          " has no contact form within the working order");
    for (int i = 1; i <= cfg.m; ++i) f.add_term({dx(i)}, Expr::variable(b.raised(i)));
    return f;
  };
  return {rewrite_basis(a, image, [](const Expr& c) { return c; })};
}

std::string ContactPresentation::to_string() const {
  if (form.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : form.terms()) {
    if (!first) os << '\n';
    first = false;
    os << '(' << c.to_string() << ')';
    for (std::size_t p = 0; p < w.size(); ++p) {
      os << (p ? "^" : " ");
      if (w[p].is_base())
        os << basis_to_string(w[p]);
      else if (w[p].is_field())
        os << "th[" << int(w[p].index) << "]";
      else
        os << "th[" << int(w[p].index) << ";" << w[p].multi.to_string() << "]";
    }
  }
  return os.str();
}

}  // namespace dedonder
