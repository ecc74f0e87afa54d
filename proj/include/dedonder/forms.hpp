#pragma once

#include <map>
#include <string>
#include <vector>

#include "dedonder/expr.hpp"
#include "dedonder/section.hpp"

namespace dedonder {

// A basis one-form is named by the coordinate it differentiates:
// Base(i) is dx^i, Field(a) is dy^a, Jet(a, I) is dz^a_I. The JetCoordinate
// order is exactly the global basis order (dx by i, dy by a, dz by (|I|, a, I)).
using BasisOneForm = JetCoordinate;
using Wedge = std::vector<BasisOneForm>;  // strictly increasing

inline BasisOneForm dx(int i) { return JetCoordinate::base(i); }
inline BasisOneForm dy(int a) { return JetCoordinate::field(a); }
inline BasisOneForm dz(int a, const MultiIndex& I) { return JetCoordinate::jet(a, I); }

std::string basis_to_string(const BasisOneForm& b);  // dx[1], dy[2], dz[1;1 2]

class DifferentialForm {
 public:
  explicit DifferentialForm(int degree = 0) : degree_(degree) {}

  static DifferentialForm scalar(const Expr& f);
  static DifferentialForm basis(const BasisOneForm& b);
  // Sorts the wedge with the permutation sign; repeated entries give zero.
  static DifferentialForm term(const Expr& coeff, Wedge wedge);

  int degree() const { return degree_; }
  const std::map<Wedge, Expr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Expr coefficient(const Wedge& w) const;

  // Adds coeff * w for an already strictly increasing wedge.
  void add_term(const Wedge& w, const Expr& coeff);

  DifferentialForm& operator+=(const DifferentialForm& o);
  DifferentialForm& operator-=(const DifferentialForm& o);
  friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
  friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
  DifferentialForm operator-() const;
  friend DifferentialForm operator*(const Expr& f, const DifferentialForm& a);
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  // Applies f to every coefficient and drops zeros.
  template <class F>
  DifferentialForm map_coefficients(F&& f) const {
    DifferentialForm out(degree_);
    for (const auto& [w, c] : terms_) out.add_term(w, f(c));
    return out;
  }

  // Highest jet order among coefficients and dz basis elements.
  int jet_order() const;

  // "(coeff) dx[1]^dz[1;2]" per line, in basis order.
  std::string to_string() const;

 private:
  int degree_;
  std::map<Wedge, Expr> terms_;
};

// Components keyed by coordinate; missing entries are zero.
class VectorFieldOnJet {
 public:
  void set(const JetCoordinate& c, const Expr& v);
  Expr component(const JetCoordinate& c) const;
  const std::map<JetCoordinate, Expr>& components() const { return comps_; }
  bool is_vertical() const;  // no ∂/∂x components
  static VectorFieldOnJet coordinate(const JetCoordinate& c);  // ∂/∂c
  std::string to_string() const;
  friend bool operator==(const VectorFieldOnJet&, const VectorFieldOnJet&) = default;

 private:
  std::map<JetCoordinate, Expr> comps_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
DifferentialForm interior_product(const VectorFieldOnJet& X, const DifferentialForm& a);
DifferentialForm lie_derivative(const VectorFieldOnJet& X, const DifferentialForm& a);

// dx^1 ^ ... ^ dx^m
DifferentialForm volume_form(int m);
// ω_i = ∂/∂x^i ⌟ d_m x
DifferentialForm omega(int i, int m);

struct ContactForm {
  int a;
  MultiIndex I;
  DifferentialForm form;
};

// ϑ^a_I = dz^a_I - Σ_i z^a_{I∪i} dx^i for |I| <= order-1.
ContactForm contact_form(const JetConfig& cfg, int a, const MultiIndex& I);
std::vector<ContactForm> contact_forms(const JetConfig& cfg, int order);

// j^r σ^* α: coefficients substituted, dy^a -> σ^a_{,i} dx^i,
// dz^a_I -> σ^a_{,Ii} dx^i.
DifferentialForm holonomic_pullback(const DifferentialForm& a, const PolynomialSection& s);
DifferentialForm holonomic_pullback(const DifferentialForm& a, SectionJets& jets);

// Formal horizontal part: dy^a -> z^a_i dx^i, dz^a_I -> z^a_{I∪i} dx^i,
// coefficients untouched. Commutes with pullback along any σ.
DifferentialForm horizontalize(const DifferentialForm& a, const JetConfig& cfg, int max_order = -1);

struct Fibration {
  enum class Kind { Source, Target, Forgetful } kind = Kind::Source;
  int level = 0;  // for Forgetful(l)
  static Fibration source() { return {Kind::Source, 0}; }
  static Fibration target() { return {Kind::Target, 0}; }
  static Fibration forgetful(int l) { return {Kind::Forgetful, l}; }
};

// Vertical basis fields of the fibration, up to the working order of cfg.
std::vector<JetCoordinate> fibre_directions(const JetConfig& cfg, const Fibration& f);
bool is_semibasic(const DifferentialForm& a, const Fibration& f, const JetConfig& cfg);

// Presentation of a form over {dx^i, ϑ^a_I}: the Field/Jet entries of each
// wedge stand for ϑ^a and ϑ^a_I instead of dy^a and dz^a_I.
struct ContactPresentation {
  DifferentialForm form;
  std::string to_string() const;
};
ContactPresentation to_contact_basis(const DifferentialForm& a, const JetConfig& cfg);

}  // namespace dedonder
