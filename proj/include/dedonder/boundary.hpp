#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dedonder/forms.hpp"

namespace dedonder {

class VerificationError : public JetError {
 public:
  using JetError::JetError;
};

// Φ = Σ_a Φ_a dy^a ∧ d_m x + Σ_{a, canonical I} Φ^I_a dz^a_I ∧ d_m x.
struct PhiDecomposition {
  JetConfig cfg;
  // Keyed by Field(a) or Jet(a, I) with 1 <= |I| <= k.
  std::map<JetCoordinate, Expr> components;

  Expr component(int a, const MultiIndex& I) const;
  DifferentialForm assemble() const;
};

// Reads the components off an (m+1)-form of the shape above.
PhiDecomposition decompose_phi(const DifferentialForm& phi, const JetConfig& cfg);

struct LagrangianPhi {
  DifferentialForm phi;
  PhiDecomposition decomposition;
};

// Φ = d(L d_m x); throws JetError if L has order above k.
LagrangianPhi phi_from_lagrangian(const Expr& L, const JetConfig& cfg);
void check_lagrangian(const Expr& L, const JetConfig& cfg);

// p^{i J}_a: first upper index i, canonical tail J, level |J| + 1.
struct CoefficientKey {
  int a = 1;
  int i = 1;
  MultiIndex tail;
  int level() const { return tail.size() + 1; }
  std::string to_string() const;  // "p[a;i J]"
  friend auto operator<=>(const CoefficientKey&, const CoefficientKey&) = default;
};

struct BoundaryCoefficients {
  JetConfig cfg;
  std::map<CoefficientKey, Expr> p;  // zero entries omitted

  Expr get(int a, int i, const MultiIndex& tail) const;
  void set(int a, int i, const MultiIndex& tail, const Expr& v);
};

// Skew perturbation Q^{i J}_a (levels 2..k) added on top of the symmetric
// solution; its symmetrization over canon(J ∪ i) must vanish.
struct SkewPerturbation {
  std::map<CoefficientKey, Expr> q;
  bool empty() const { return q.empty(); }
};

struct PerturbationViolation {
  int a;
  MultiIndex I;       // canonical index of the violated relation
  Expr symmetrized;   // Σ_{canon(J∪i)=I} Q^{iJ}_a, nonzero
  std::string relation;  // human-readable name of the relation
};

std::vector<PerturbationViolation> check_perturbation(const SkewPerturbation& Q,
                                                      const JetConfig& cfg);

// Closed form: P(K) = Σ_T (-1)^{|T|} mult(T) D_T [Φ^{K∪T} / mult(K∪T)],
// p^{iJ} = mult(J) P(J ∪ i).
BoundaryCoefficients symmetric_boundary_coefficients(const PhiDecomposition& dec);

// Level-by-level recursion from the top level, adding Q. With Q = 0 this
// reproduces symmetric_boundary_coefficients. Throws JetError listing
// violations if Q fails check_perturbation.
BoundaryCoefficients solve_boundary_coefficients(const PhiDecomposition& dec,
                                                 const SkewPerturbation& Q);

struct BoundaryForm {
  JetConfig cfg;
  DifferentialForm xi;
  BoundaryCoefficients coefficients;
  // Set when built from a Φ, so that condition 3 is expected to hold.
  std::optional<PhiDecomposition> phi;
  bool has_condition3() const { return phi.has_value(); }
};

// Ξ = Σ p^{iJ}_a ϑ^a_J ∧ ω_i. Verifies conditions 1a, 1b and 2 and throws
// VerificationError on failure.
BoundaryForm assemble_boundary_form(const BoundaryCoefficients& p,
                                    std::optional<PhiDecomposition> phi = std::nullopt);

struct ConditionCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

std::vector<ConditionCheck> check_boundary_conditions(const DifferentialForm& xi,
                                                      const JetConfig& cfg);

struct Condition3Entry {
  JetCoordinate X;  // ∂/∂z^a_I
  Expr residual;    // d_m x coefficient of the pulled-back contraction
};

struct Condition3Report {
  std::vector<Condition3Entry> entries;  // one per tested field, in coordinate order
  bool all_zero() const;
  std::vector<Condition3Entry> failures() const;
};

Condition3Report verify_condition3(const DifferentialForm& phi, const BoundaryForm& xi);

struct DeDonderForm {
  JetConfig cfg;
  Expr L;
  BoundaryForm xi;
  DifferentialForm theta;
};

DeDonderForm dedonder_form(const Expr& L, const BoundaryForm& xi);

// δL/δy^a = Σ_I (-1)^{|I|} D_I ∂L/∂z^a_I, order <= 2k. Also checks that
// ∂L/∂y^a - Σ_i D_i p^i_a reproduces it for the symmetric coefficients.
std::vector<Expr> lagrange_derivative(const Expr& L, const JetConfig& cfg);

struct ResidualEntry {
  JetCoordinate X;
  DifferentialForm residual;  // form on M
};

// j^{2k-1}σ^*(X ⌟ dΘ) for every source-vertical basis field X.
std::vector<ResidualEntry> dedonder_residual(const DeDonderForm& theta, const PolynomialSection& s);

struct BoundaryComparison {
  std::map<CoefficientKey, Expr> q;   // p - p'
  std::vector<Expr> divergence;       // Σ_i D_i Q^i_a per a
  bool divergence_zero = true;
  std::vector<std::pair<JetCoordinate, DifferentialForm>> pullback_differences;  // nonzero only
  bool pullbacks_zero() const { return pullback_differences.empty(); }
};

BoundaryComparison compare_boundary_forms(const BoundaryForm& xi, const BoundaryForm& xi2);

}  // namespace dedonder
