#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dedonder/boundary.hpp"
#include "dedonder/problem.hpp"

#ifndef DEDONDER_SOURCE_DIR
#define DEDONDER_SOURCE_DIR "."
#endif

namespace testing_support {

using namespace dedonder;

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string problem_path(const std::string& name) {
  return std::string(DEDONDER_SOURCE_DIR) + "/problems/" + name;
}

inline ProblemSpec load_problem(const std::string& name) { return parse_problem(read_file(problem_path(name))); }

inline Expr z(int a, std::initializer_list<int> I, int m) { return Expr::z(a, MultiIndex::canonical(I, m)); }

// L = Σ g_ab g^ij g^kl z^a_ij z^b_kl, g = diag(1, -1) on both sides, built
// directly rather than through the parser.
inline Expr wave_lagrangian() {
  const int g[3] = {0, 1, -1};
  Expr L;
  for (int a = 1; a <= 2; ++a)
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k)
        L += Expr(static_cast<long>(g[a] * g[i] * g[k])) * z(a, {i, i}, 2) * z(a, {k, k}, 2);
  return L;
}

// Random polynomial Lagrangian of order exactly <= k with fibre degree <= 2.
inline Expr random_lagrangian(std::mt19937& rng, const JetConfig& cfg, int terms = 5) {
  std::vector<JetCoordinate> vars;
  for (int l = 0; l <= cfg.k; ++l)
    for (int a = 1; a <= cfg.n; ++a)
      for (const auto& I : enumerate_multi_indices(cfg.m, l)) vars.push_back(JetCoordinate::jet(a, I));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> shape(0, 5);
  std::uniform_int_distribution<int> base(1, cfg.m);
  Expr L;
  for (int t = 0; t < terms; ++t) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    Expr term(static_cast<long>(c));
    switch (shape(rng)) {
      case 0: term *= Expr::variable(vars[pick(rng)]); break;
      case 1: term *= Expr::variable(vars[pick(rng)]) * Expr::x(base(rng)); break;
      default: term *= Expr::variable(vars[pick(rng)]) * Expr::variable(vars[pick(rng)]); break;
    }
    L += term;
  }
  // Make sure the top order is present.
  L += Expr::variable(JetCoordinate::jet(1, MultiIndex::canonical(std::vector<int>(cfg.k, 1), cfg.m))).pow(2);
  return L;
}

}  // namespace testing_support
