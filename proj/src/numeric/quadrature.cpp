#include "dedonder/numeric/quadrature.hpp"

#include <stdexcept>

#include "dedonder/numeric/kernels.hpp"

namespace dedonder {

namespace {

// Bernoulli numbers B_0..B_n (B_1 = -1/2) from the standard recurrence.
std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> B(static_cast<std::size_t>(n + 1));
  B[0] = 1;
  for (int j = 1; j <= n; ++j) {
    Rational s = 0;
    mpz_class binom = 1;  // C(j+1, q)
    for (int q = 0; q < j; ++q) {
      s += Rational(binom) * B[q];
      binom = binom * (j + 1 - q) / (q + 1);
    }
    B[j] = -s / (j + 1);
  }
  return B;
}

}  // namespace

std::vector<Rational> gregory_corrections(int r) {
  if (r < 1) return {};
  auto B = bernoulli(r + 1);
  // Vandermonde system V γ = rhs, V(p, j) = j^p (0^0 = 1).
  std::vector<std::vector<Rational>> A(r, std::vector<Rational>(r + 1));
  for (int p = 0; p < r; ++p) {
    for (int j = 0; j < r; ++j) {
      Rational v = 1;
      for (int q = 0; q < p; ++q) v *= j;
      A[p][j] = v;
    }
    A[p][r] = (p % 2 == 1) ? Rational(B[p + 1] / (p + 1)) : Rational(0);
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (A[piv][c] == 0) ++piv;
    std::swap(A[piv], A[c]);
    for (int row = 0; row < r; ++row) {
      if (row == c || A[row][c] == 0) continue;
      Rational f = A[row][c] / A[c][c];
      for (int q = c; q <= r; ++q) A[row][q] -= f * A[c][q];
    }
  }
  std::vector<Rational> g(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) g[j] = A[j][r] / A[j][j];
  return g;
}

int gregory_order(int n) { return std::min(10, n / 2); }

std::vector<double> quadrature_weights(const GridDim& dim) {
  const int n = dim.n;
  std::vector<double> w(static_cast<std::size_t>(n));
  if (dim.periodic) {
    const double h = (dim.hi - dim.lo) / n;
    std::fill(w.begin(), w.end(), h);
    return w;
  }
  const double h = (dim.hi - dim.lo) / (n - 1);
  const int r = gregory_order(n);
  auto gamma = gregory_corrections(r);
  std::vector<Rational> wq(static_cast<std::size_t>(n), Rational(1));
  wq[0] = wq[n - 1] = Rational(1, 2);
  for (int j = 0; j < r; ++j) {
    wq[j] += gamma[j];
    wq[n - 1 - j] += gamma[j];
  }
  for (int j = 0; j < n; ++j) w[j] = h * wq[j].get_d();
  return w;
}

std::vector<double> quadrature_weights(const GridSpec& g) {
  std::vector<std::vector<double>> per;
  for (const auto& d : g.dims) per.push_back(quadrature_weights(d));
  std::vector<double> w(g.size());
  for (std::size_t p = 0; p < w.size(); ++p) {
    auto idx = g.unflatten(p);
    double v = 1.0;
    for (int d = 0; d < g.ndim(); ++d) v *= per[d][idx[d]];
    w[p] = v;
  }
  return w;
}

double integrate(const GridSpec& g, const std::vector<double>& values) {
  if (values.size() != g.size()) throw std::invalid_argument("integrate: size mismatch");
  auto w = quadrature_weights(g);
  return kernels::weighted_sum_omp(values.data(), w.data(), values.size());
}

double integrate_face(const GridSpec& g, const std::vector<double>& values, int d, bool upper) {
  if (values.size() != g.size()) throw std::invalid_argument("integrate_face: size mismatch");
  const int jd = upper ? g.dims[d].n - 1 : 0;
  if (g.ndim() == 1) return values[static_cast<std::size_t>(jd)];
  GridSpec face;
  for (int e = 0; e < g.ndim(); ++e)
    if (e != d) face.dims.push_back(g.dims[e]);
  std::vector<double> slice(face.size());
  for (std::size_t p = 0; p < slice.size(); ++p) {
    auto fi = face.unflatten(p);
    std::vector<int> idx;
    for (int e = 0, q = 0; e < g.ndim(); ++e) idx.push_back(e == d ? jd : fi[q++]);
    slice[p] = values[g.flatten(idx)];
  }
  return integrate(face, slice);
}

}  // namespace dedonder
