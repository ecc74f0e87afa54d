#include "dedonder/commands.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dedonder/numeric/verify.hpp"

namespace dedonder {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"euler-lagrange", "boundary-form", "dedonder-form",
                                                 "verify",         "noether",       "evolve",
                                                 "residual"};
  return names;
}

void configure_logging(const char* level) {
  auto logger = spdlog::get("dedonder");
  if (!logger) {
    logger = spdlog::stderr_color_mt("dedonder");
    spdlog::set_default_logger(logger);
  }
  spdlog::level::level_enum lvl = spdlog::level::warn;
  if (level && *level) lvl = spdlog::level::from_str(level);
  spdlog::set_level(lvl);
}

SkewPerturbation default_skew(const JetConfig& cfg) {
  if (cfg.m != 2 || cfg.k < 2) throw JetError("default skew perturbation needs m = 2 and k >= 2");
  SkewPerturbation Q;
  for (int a = 1; a <= cfg.n; ++a) {
    Q.q[{a, 1, MultiIndex::canonical({2}, 2)}] = Expr::y(a);
    Q.q[{a, 2, MultiIndex::canonical({1}, 2)}] = -Expr::y(a);
  }
  return Q;
}

CauchyState random_cauchy_data(const GridDim& space, int n_fields, double t0, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double L = space.hi - space.lo;
  std::vector<std::array<LineFn, 4>> data;
  for (int a = 0; a < n_fields; ++a) {
    std::array<LineFn, 4> comps;
    for (int c = 0; c < 4; ++c) {
      std::vector<std::array<double, 3>> modes;  // (wavenumber, cos amp, sin amp)
      for (int q = 1; q <= 8; ++q) {
        double w = 2.0 * std::numbers::pi * q / L;
        double damp = 1.0 / (q * q);
        modes.push_back({w, damp * U(rng), damp * U(rng)});
      }
      const double lo = space.lo;
      comps[c] = [modes, lo](double x) {
        double v = 0.0;
        for (const auto& [w, ca, sa] : modes) v += ca * std::cos(w * (x - lo)) + sa * std::sin(w * (x - lo));
        return v;
      };
    }
    data.push_back(std::move(comps));
  }
  return make_cauchy_state(space, t0, data);
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Runner {
 public:
  Runner(const ProblemSpec& spec, const CommandOptions& opts) : spec_(spec), opts_(opts), cfg_(spec.cfg) {
    res_.json["command"] = "";
    res_.json["config"] = Json{{"m", cfg_.m}, {"n", cfg_.n}, {"k", cfg_.k}};
    res_.json["lagrangian"] = spec.lagrangian.to_string();
  }

  CommandResult run(const std::string& command) {
    res_.json["command"] = command;
    spdlog::info("running {} (m={}, n={}, k={})", command, cfg_.m, cfg_.n, cfg_.k);
    if (command == "euler-lagrange") euler_lagrange();
    else if (command == "boundary-form") boundary_form();
    else if (command == "dedonder-form") dedonder_form_cmd();
    else if (command == "verify") verify();
    else if (command == "noether") noether();
    else if (command == "evolve") evolve();
    else if (command == "residual") residual();
    else throw std::invalid_argument("unknown command '" + command + "'");

    Json checks = Json::array();
    for (const auto& c : checks_) checks.push_back(c);
    res_.json["checks"] = checks;
    Json fails = Json::array();
    for (const auto& f : res_.failures) {
      fails.push_back(Json{{"check", f.check}, {"detail", f.detail}});
      text_ << "FAIL: " << f.check << (f.detail.empty() ? "" : ": " + f.detail) << '\n';
    }
    res_.json["failures"] = fails;
    res_.json["passed"] = res_.failures.empty();
    res_.exit_code = res_.failures.empty() ? kExitPass : kExitCheckFailed;
    text_ << (res_.failures.empty() ? "PASS" : "FAIL") << ' ' << command << " (" << checks_.size()
          << " checks, " << res_.failures.size() << " failed)\n";
    res_.text = text_.str();
    return std::move(res_);
  }

 private:
  const ProblemSpec& spec_;
  const CommandOptions& opts_;
  const JetConfig cfg_;
  CommandResult res_;
  std::ostringstream text_;
  std::vector<Json> checks_;

  std::optional<LagrangianPhi> phi_;
  std::optional<BoundaryForm> xi_sym_;
  std::optional<DeDonderForm> theta_sym_;

  void check(const std::string& name, bool passed, const std::string& detail = "") {
    checks_.push_back(Json{{"name", name}, {"passed", passed}, {"detail", detail}});
    spdlog::debug("check {}: {}", name, passed ? "pass" : "fail");
    if (!passed) res_.failures.push_back({name, detail});
  }

  const LagrangianPhi& phi() {
    if (!phi_) phi_ = phi_from_lagrangian(spec_.lagrangian, cfg_);
    return *phi_;
  }
  const BoundaryForm& xi_sym() {
    if (!xi_sym_)
      xi_sym_ = assemble_boundary_form(symmetric_boundary_coefficients(phi().decomposition),
                                       phi().decomposition);
    return *xi_sym_;
  }
  const DeDonderForm& theta_sym() {
    if (!theta_sym_) theta_sym_ = dedonder_form(spec_.lagrangian, xi_sym());
    return *theta_sym_;
  }

  // Declared skew perturbation; nullopt (with failures recorded) if malformed.
  std::optional<BoundaryForm> perturbed_form(const SkewPerturbation& Q, const std::string& label) {
    auto violations = check_perturbation(Q, cfg_);
    std::string detail;
    for (const auto& v : violations) {
      if (!detail.empty()) detail += "; ";
      detail += v.relation + " (sum is " + v.symmetrized.to_string() + ")";
    }
    check(label + " skew perturbation structure", violations.empty(), detail);
    if (!violations.empty()) return std::nullopt;
    try {
      return assemble_boundary_form(solve_boundary_coefficients(phi().decomposition, Q),
                                    phi().decomposition);
    } catch (const VerificationError& e) {
      check(label + " boundary form conditions", false, e.what());
      return std::nullopt;
    }
  }

  void euler_lagrange() {
    auto el = lagrange_derivative(spec_.lagrangian, cfg_);
    Json arr = Json::array();
    text_ << "Euler-Lagrange expressions (order <= " << 2 * cfg_.k << "):\n";
    for (int a = 1; a <= cfg_.n; ++a) {
      arr.push_back(Json{{"a", a}, {"expression", el[a - 1].to_string()}});
      text_ << "E[" << a << "] = " << el[a - 1].to_string() << '\n';
    }
    res_.json["euler_lagrange"] = arr;
    check("Lagrange derivative identity", true);
  }

  void boundary_form() {
    const BoundaryForm& xi = xi_sym();
    text_ << "Symmetric boundary coefficients:\n" << coefficients_text(xi.coefficients);
    text_ << "Boundary form Xi:\n" << xi.xi.to_string() << '\n';
    text_ << "Xi in the contact basis:\n" << to_contact_basis(xi.xi, cfg_).to_string() << '\n';
    res_.json["coefficients"] = coefficients_json(xi.coefficients);
    res_.json["xi"] = form_json(xi.xi);
    res_.json["xi_contact"] = form_json(to_contact_basis(xi.xi, cfg_).form);
    check("symmetric boundary form conditions 1a, 1b, 2", true);
    if (!spec_.skew.empty()) {
      if (auto xi2 = perturbed_form(spec_.perturbation(), "declared")) {
        text_ << "Skew-perturbed boundary coefficients:\n" << coefficients_text(xi2->coefficients);
        text_ << "Skew-perturbed boundary form:\n" << xi2->xi.to_string() << '\n';
        res_.json["perturbed_coefficients"] = coefficients_json(xi2->coefficients);
        res_.json["perturbed_xi"] = form_json(xi2->xi);
      }
    }
  }

  void dedonder_form_cmd() {
    const DeDonderForm& th = theta_sym();
    text_ << "De Donder form Theta = L d_m x + Xi:\n" << th.theta.to_string() << '\n';
    text_ << "Theta in the contact basis:\n" << to_contact_basis(th.theta, cfg_).to_string() << '\n';
    res_.json["theta"] = form_json(th.theta);
    res_.json["theta_contact"] = form_json(to_contact_basis(th.theta, cfg_).form);
    check("pullback of Theta equals pullback of L d_m x", true);
  }

  void report_conditions(const BoundaryForm& xi, const std::string& label) {
    for (const auto& c : check_boundary_conditions(xi.xi, cfg_))
      check(label + " condition " + c.name, c.passed, c.detail);
    auto rep = verify_condition3(phi().phi, xi);
    std::string detail;
    for (const auto& f : rep.failures()) {
      if (!detail.empty()) detail += "; ";
      detail += "d/d" + f.X.to_string() + ": " + f.residual.to_string();
    }
    check(label + " condition 3 (" + std::to_string(rep.entries.size()) + " fields)", rep.all_zero(),
          detail);
    text_ << label << " boundary form: " << rep.entries.size() << " condition-3 residuals, "
          << rep.failures().size() << " nonzero\n";
  }

  void verify() {
    lagrange_derivative(spec_.lagrangian, cfg_);
    check("Lagrange derivative identity", true);
    report_conditions(xi_sym(), "symmetric");
    theta_sym();
    check("pullback of Theta equals pullback of L d_m x", true);
    if (spec_.skew.empty()) return;
    auto xi2 = perturbed_form(spec_.perturbation(), "declared");
    if (!xi2) return;
    report_conditions(*xi2, "perturbed");
    BoundaryComparison cmp = compare_boundary_forms(xi_sym(), *xi2);
    std::string div;
    for (std::size_t a = 0; a < cmp.divergence.size(); ++a)
      if (!cmp.divergence[a].is_zero())
        div += "a=" + std::to_string(a + 1) + ": " + cmp.divergence[a].to_string() + "; ";
    check("divergence trace of p - p' vanishes", cmp.divergence_zero, div);
    std::string pb;
    for (const auto& [X, f] : cmp.pullback_differences) pb += "d/d" + X.to_string() + "; ";
    check("pulled-back contractions of d(Xi - Xi') vanish", cmp.pullbacks_zero(), pb);
    Json q = Json::array();
    for (const auto& [key, v] : cmp.q) q.push_back(Json{{"label", "q" + key.to_string().substr(1)}, {"value", v.to_string()}});
    res_.json["difference"] = q;
    text_ << "p - p' has " << cmp.q.size() << " nonzero entries; divergence trace "
          << (cmp.divergence_zero ? "zero" : "nonzero") << '\n';
  }

  // Residual entries of a section, and whether they all vanish.
  std::pair<std::vector<ResidualEntry>, bool> residual_of(const PolynomialSection& s) {
    auto entries = dedonder_residual(theta_sym(), s);
    bool zero = true;
    for (const auto& e : entries) zero = zero && e.residual.is_zero();
    return {std::move(entries), zero};
  }

  void noether() {
    if (spec_.fields.empty()) throw std::invalid_argument("noether: no 'field' declared");
    Json fields = Json::array();
    for (const auto& Y : spec_.fields) {
      SymmetryCheck sym = is_symmetry(Y, spec_.lagrangian, cfg_);
      check("field " + Y.name + " is a symmetry of L", sym.symmetric,
            sym.symmetric ? "" : sym.certificate.to_string());
      DifferentialForm J = formal_current(Y, theta_sym());
      Json fj{{"name", Y.name}, {"symmetric", sym.symmetric}, {"current", form_json(J)}};
      text_ << "field " << Y.name << ": " << (sym.symmetric ? "symmetry" : "not a symmetry") << '\n'
            << "  formal current:\n" << J.to_string() << '\n';
      Json per_section = Json::array();
      for (const auto& sd : spec_.sections) {
        bool solution = residual_of(sd.section).second;
        DifferentialForm Js = noether_current(Y, theta_sym(), sd.section);
        DifferentialForm dJ = Js.is_zero() ? DifferentialForm(cfg_.m) : exterior_derivative(Js);
        per_section.push_back(Json{{"section", sd.name},
                                   {"solution", solution},
                                   {"current", form_json(Js)},
                                   {"closed", dJ.is_zero()}});
        text_ << "  section " << sd.name << (solution ? " (solution)" : " (not a solution)")
              << ": dJ " << (dJ.is_zero() ? "= 0" : "!= 0") << '\n';
        if (sym.symmetric && solution)
          check("current of " + Y.name + " closed along " + sd.name, dJ.is_zero(), dJ.to_string());
      }
      fj["sections"] = per_section;
      fields.push_back(fj);
    }
    res_.json["fields"] = fields;
  }

  void residual() {
    if (spec_.sections.empty()) throw std::invalid_argument("residual: no 'section' declared");
    auto el = lagrange_derivative(spec_.lagrangian, cfg_);
    Wedge vol;
    for (int i = 1; i <= cfg_.m; ++i) vol.push_back(dx(i));
    Json arr = Json::array();
    for (const auto& sd : spec_.sections) {
      auto [entries, zero] = residual_of(sd.section);
      Json rs = Json::array();
      text_ << "section " << sd.name << ":\n";
      for (const auto& e : entries) {
        if (e.residual.is_zero()) continue;
        rs.push_back(Json{{"field", "d/d" + e.X.to_string()}, {"residual", form_json(e.residual)}});
        text_ << "  d/d" << e.X.to_string() << ": " << e.residual.to_string() << '\n';
      }
      // X = d/dy^a must reproduce the Euler-Lagrange expression along the section.
      bool consistent = true;
      for (const auto& e : entries) {
        if (!e.X.is_field()) continue;
        Expr expected = substitute_section(el[e.X.index - 1], sd.section);
        DifferentialForm want = DifferentialForm::term(expected, vol);
        if (!(want == e.residual)) consistent = false;
      }
      check("residual along " + sd.name + " matches the Euler-Lagrange expressions", consistent);
      check("section " + sd.name + " solves the De Donder equations", zero,
            zero ? "" : "nonzero residuals listed above");
      if (zero) text_ << "  all residuals vanish\n";
      arr.push_back(Json{{"section", sd.name}, {"solution", zero}, {"residuals", rs}});
    }
    res_.json["sections"] = arr;
  }

  void evolve() {
    if (cfg_.m != 2 || cfg_.k != 2)
      throw std::invalid_argument("evolve: needs m = 2 and k = 2 (fourth-order wave system)");
    // The solver integrates y_tttt - 2 y_ttxx + y_xxxx = 0; L must lead to it.
    auto el = lagrange_derivative(spec_.lagrangian, cfg_);
    for (int a = 1; a <= cfg_.n; ++a) {
      auto z = [&](std::initializer_list<int> I) { return Expr::z(a, MultiIndex::canonical(I, 2)); };
      Expr op = z({1, 1, 1, 1}) - Expr(2) * z({1, 1, 2, 2}) + z({2, 2, 2, 2});
      Rational c = 0;
      for (const auto& t : el[a - 1].terms())
        if (t.mono.size() == 1 && t.mono[0].exp == 1 && t.mono[0].var == JetCoordinate::jet(a, MultiIndex::canonical({1, 1, 1, 1}, 2)))
          c = t.coeff;
      if (c == 0 || !(el[a - 1] - Expr(c) * op).is_zero())
        throw std::invalid_argument("evolve: Euler-Lagrange expression for a = " + std::to_string(a) +
                                    " is not a multiple of z_tttt - 2 z_ttxx + z_xxxx");
    }
    GridDim space{0.0, 2.0 * std::numbers::pi, 256, true};
    if (spec_.grid) {
      space = spec_.grid->dims[1];
      if (!space.periodic) throw std::invalid_argument("evolve: the spatial grid dimension must be periodic");
    }
    if (opts_.grid_n) space.n = *opts_.grid_n;
    EvolveParams ev = spec_.evolve.value_or(EvolveParams{});
    if (opts_.t1) ev.t1 = *opts_.t1;
    if (!(ev.t1 > ev.t0)) throw std::invalid_argument("evolve: t1 must exceed t0");

    SkewPerturbation Q = spec_.skew.empty() ? default_skew(cfg_) : spec_.perturbation();
    auto xi2 = perturbed_form(Q, spec_.skew.empty() ? "default" : "declared");
    if (!xi2) return;
    DeDonderForm theta_skew = dedonder_form(spec_.lagrangian, *xi2);

    CauchyState s0 = random_cauchy_data(space, cfg_.n, ev.t0, opts_.seed);
    std::ostringstream csv;
    csv << "t,E_symmetric,E_skew,drift\n";
    Json series = Json::array();
    double e0 = 0.0, max_drift = 0.0, max_split = 0.0;
    for (int s = 0; s <= ev.steps; ++s) {
      double t = ev.t0 + (ev.t1 - ev.t0) * s / ev.steps;
      CauchyState st = s == 0 ? s0 : cauchy_evolve(s0, t);
      double es = energy_integral(st, theta_sym());
      double ek = energy_integral(st, theta_skew);
      if (s == 0) e0 = es;
      double drift = rel_diff(es, e0);
      max_drift = std::max(max_drift, drift);
      max_split = std::max(max_split, rel_diff(es, ek));
      csv << fmt17(t) << ',' << fmt17(es) << ',' << fmt17(ek) << ',' << fmt17(drift) << '\n';
      series.push_back(Json{{"t", t}, {"E_symmetric", es}, {"E_skew", ek}, {"drift", drift}});
      spdlog::debug("t={} E={} E_skew={}", t, es, ek);
    }
    res_.csv = csv.str();
    res_.json["grid_n"] = space.n;
    res_.json["seed"] = opts_.seed;
    res_.json["series"] = series;
    res_.json["max_drift"] = max_drift;
    res_.json["max_symmetric_skew_difference"] = max_split;
    check("energy drift <= 1e-6 relative", max_drift <= 1e-6, "max drift " + fmt17(max_drift));
    check("symmetric and skew energies agree to 1e-10 relative", max_split <= 1e-10,
          "max difference " + fmt17(max_split));
    text_ << res_.csv << "max drift " << fmt17(max_drift) << ", max symmetric/skew difference "
          << fmt17(max_split) << '\n';
  }
};

}  // namespace

CommandResult run_command(const ProblemSpec& spec, const std::string& command, const CommandOptions& opts) {
  return Runner(spec, opts).run(command);
}

}  // namespace dedonder
