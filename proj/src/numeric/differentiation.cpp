#include "dedonder/numeric/differentiation.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dedonder {

namespace {

// Planning is not thread-safe in FFTW; execution with the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftBuffers {
  double* real;
  fftw_complex* spec;
  explicit FftBuffers(int n)
      : real(fftw_alloc_real(static_cast<std::size_t>(n))),
        spec(fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1))) {
    if (!real || !spec) throw std::bad_alloc();
  }
  ~FftBuffers() {
    fftw_free(real);
    fftw_free(spec);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;
};

}  // namespace

LineDifferentiator::LineDifferentiator(const GridDim& dim) : dim_(dim) {
  if (dim.n < 8) throw std::invalid_argument("line differentiation needs at least 8 points");
  h_ = dim.periodic ? (dim.hi - dim.lo) / dim.n : (dim.hi - dim.lo) / (dim.n - 1);
  if (dim.periodic) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    FftBuffers buf(dim.n);
    forward_ = fftw_plan_dft_r2c_1d(dim.n, buf.real, buf.spec, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(dim.n, buf.spec, buf.real, FFTW_ESTIMATE);
  }
}

LineDifferentiator::~LineDifferentiator() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void LineDifferentiator::apply(const double* in, double* out) const {
  const int n = dim_.n;
  if (dim_.periodic) {
    FftBuffers buf(n);
    std::memcpy(buf.real, in, sizeof(double) * static_cast<std::size_t>(n));
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), buf.real, buf.spec);
    const double k0 = 2.0 * std::numbers::pi / (dim_.hi - dim_.lo);
    for (int j = 0; j <= n / 2; ++j) {
      double kj = k0 * j;
      if (n % 2 == 0 && j == n / 2) kj = 0.0;
      double re = buf.spec[j][0], im = buf.spec[j][1];
      // multiply by i k / n
      buf.spec[j][0] = -kj * im / n;
      buf.spec[j][1] = kj * re / n;
    }
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_), buf.spec, buf.real);
    std::memcpy(out, buf.real, sizeof(double) * static_cast<std::size_t>(n));
    return;
  }
  const double s = 1.0 / (12.0 * h_);
  out[0] = s * (-25 * in[0] + 48 * in[1] - 36 * in[2] + 16 * in[3] - 3 * in[4]);
  out[1] = s * (-3 * in[0] - 10 * in[1] + 18 * in[2] - 6 * in[3] + in[4]);
  for (int j = 2; j < n - 2; ++j) out[j] = s * (in[j - 2] - 8 * in[j - 1] + 8 * in[j + 1] - in[j + 2]);
  out[n - 2] = s * (3 * in[n - 1] + 10 * in[n - 2] - 18 * in[n - 3] + 6 * in[n - 4] - in[n - 5]);
  out[n - 1] = s * (25 * in[n - 1] - 48 * in[n - 2] + 36 * in[n - 3] - 16 * in[n - 4] + 3 * in[n - 5]);
}

std::vector<std::complex<double>> real_fft(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  FftBuffers buf(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, buf.real, buf.spec, FFTW_ESTIMATE);
  }
  std::memcpy(buf.real, v.data(), sizeof(double) * v.size());
  fftw_execute(plan);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  for (int j = 0; j <= n / 2; ++j) out[j] = {buf.spec[j][0], buf.spec[j][1]};
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
  return out;
}

std::vector<double> inverse_real_fft(const std::vector<std::complex<double>>& c, int n) {
  if (static_cast<int>(c.size()) != n / 2 + 1) throw std::invalid_argument("spectrum size mismatch");
  FftBuffers buf(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(n, buf.spec, buf.real, FFTW_ESTIMATE);
  }
  for (int j = 0; j <= n / 2; ++j) {
    buf.spec[j][0] = c[j].real();
    buf.spec[j][1] = c[j].imag();
  }
  fftw_execute(plan);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = buf.real[j] / n;
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace dedonder
