#include "dedonder/numeric/kernels.hpp"

#include <cmath>
#include <numbers>

namespace dedonder::kernels {

namespace {

void differentiate_line(const GridSpec& g, int d, const LineDifferentiator& D, const double* in,
                        double* out, std::size_t line, std::vector<double>& a,
                        std::vector<double>& b) {
  const std::size_t stride = g.stride(d);
  const std::size_t n = static_cast<std::size_t>(g.dims[d].n);
  const std::size_t base = (line / stride) * n * stride + line % stride;
  for (std::size_t j = 0; j < n; ++j) a[j] = in[base + j * stride];
  D.apply(a.data(), b.data());
  for (std::size_t j = 0; j < n; ++j) out[base + j * stride] = b[j];
}

double eval_point(const CompiledExpr& e, std::size_t p) {
  double sum = 0.0;
  for (const auto& t : e.terms) {
    double prod = t.coeff;
    for (const auto& f : t.factors) {
      double v = e.slots[f.slot][p];
      for (unsigned q = 0; q < f.exp; ++q) prod *= v;
    }
    sum += prod;
  }
  return sum;
}

void propagate_mode(double period, double dt, ModeBlock& blk, std::size_t j) {
  const double xi = 2.0 * std::numbers::pi * static_cast<double>(j) / period;
  auto P = mode_propagator(xi, dt);
  std::array<std::complex<double>, 4> in{blk[0][j], blk[1][j], blk[2][j], blk[3][j]};
  for (int r = 0; r < 4; ++r) {
    std::complex<double> acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += P[r][c] * in[c];
    blk[r][j] = acc;
  }
}

double block_sum(const double* v, const double* w, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += v[i] * w[i];
  return s;
}

}  // namespace

void differentiate_serial(const GridSpec& g, int d, const LineDifferentiator& D, const double* in,
                          double* out) {
  const std::size_t n = static_cast<std::size_t>(g.dims[d].n);
  const std::size_t lines = g.size() / n;
  std::vector<double> a(n), b(n);
  for (std::size_t line = 0; line < lines; ++line) differentiate_line(g, d, D, in, out, line, a, b);
}

void differentiate_omp(const GridSpec& g, int d, const LineDifferentiator& D, const double* in,
                       double* out) {
  const std::size_t n = static_cast<std::size_t>(g.dims[d].n);
  const long lines = static_cast<long>(g.size() / n);
#pragma omp parallel
  {
    std::vector<double> a(n), b(n);
#pragma omp for schedule(static)
    for (long line = 0; line < lines; ++line)
      differentiate_line(g, d, D, in, out, static_cast<std::size_t>(line), a, b);
  }
}

CompiledExpr compile(const Expr& e, const JetTable& table) {
  CompiledExpr out;
  std::map<JetCoordinate, int> slot_of;
  for (const auto& t : e.terms()) {
    CompiledExpr::Term ct{t.coeff.get_d(), {}};
    for (const auto& f : t.mono) {
      auto it = slot_of.find(f.var);
      if (it == slot_of.end()) {
        auto col = table.find(f.var);
        if (col == table.end())
          throw JetError("no sampled values for " + f.var.to_string());
        it = slot_of.emplace(f.var, static_cast<int>(out.slots.size())).first;
        out.slots.push_back(col->second.data());
      }
      ct.factors.push_back({it->second, f.exp});
    }
    out.terms.push_back(std::move(ct));
  }
  return out;
}

void evaluate_serial(const CompiledExpr& e, std::size_t npts, double* out) {
  for (std::size_t p = 0; p < npts; ++p) out[p] = eval_point(e, p);
}

void evaluate_omp(const CompiledExpr& e, std::size_t npts, double* out) {
#pragma omp parallel for schedule(static)
  for (long p = 0; p < static_cast<long>(npts); ++p)
    out[p] = eval_point(e, static_cast<std::size_t>(p));
}

std::array<std::array<double, 4>, 4> mode_propagator(double xi, double dt) {
  std::array<std::array<double, 4>, 4> P{};
  for (int c = 0; c < 4; ++c) {
    double y0 = c == 0, y1 = c == 1, y2 = c == 2, y3 = c == 3;
    if (xi == 0.0) {
      // Nilpotent block: Taylor polynomial of degree 3.
      P[0][c] = y0 + y1 * dt + y2 * dt * dt / 2 + y3 * dt * dt * dt / 6;
      P[1][c] = y1 + y2 * dt + y3 * dt * dt / 2;
      P[2][c] = y2 + y3 * dt;
      P[3][c] = y3;
      continue;
    }
    // y = (p0 + p1 t) cos ξt + (q0 + q1 t) sin ξt
    double p0 = y0;
    double q1 = (y2 + xi * xi * y0) / (2 * xi);
    double p1 = -(y3 + xi * xi * y1) / (2 * xi * xi);
    double q0 = (y1 - p1) / xi;
    const double cs = std::cos(xi * dt), sn = std::sin(xi * dt);
    for (int r = 0; r < 4; ++r) {
      P[r][c] = (p0 + p1 * dt) * cs + (q0 + q1 * dt) * sn;
      // d/dt maps (p0, p1, q0, q1) -> (p1 + ξ q0, ξ q1, q1 - ξ p0, -ξ p1)
      double np0 = p1 + xi * q0, np1 = xi * q1, nq0 = q1 - xi * p0, nq1 = -xi * p1;
      p0 = np0;
      p1 = np1;
      q0 = nq0;
      q1 = nq1;
    }
  }
  return P;
}

void propagate_modes_serial(double period, double dt, std::vector<ModeBlock>& blocks) {
  for (auto& blk : blocks)
    for (std::size_t j = 0; j < blk[0].size(); ++j) propagate_mode(period, dt, blk, j);
}

void propagate_modes_omp(double period, double dt, std::vector<ModeBlock>& blocks) {
  for (auto& blk : blocks) {
    const long modes = static_cast<long>(blk[0].size());
#pragma omp parallel for schedule(static)
    for (long j = 0; j < modes; ++j) propagate_mode(period, dt, blk, static_cast<std::size_t>(j));
  }
}

double weighted_sum_serial(const double* v, const double* w, std::size_t n) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < n; lo += kBlock) total += block_sum(v, w, lo, std::min(n, lo + kBlock));
  return total;
}

double weighted_sum_omp(const double* v, const double* w, std::size_t n) {
  const long nblocks = static_cast<long>((n + kBlock - 1) / kBlock);
  std::vector<double> partial(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nblocks; ++b) {
    std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    partial[b] = block_sum(v, w, lo, std::min(n, lo + kBlock));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace dedonder::kernels
