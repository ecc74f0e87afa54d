#pragma once

#include <complex>
#include <vector>

#include "dedonder/numeric/grid.hpp"

namespace dedonder {

// First derivative of a single line of samples. Periodic lines use FFT
// spectral differentiation (odd Nyquist mode dropped); open lines use the
// 4th-order 5-point central stencil with one-sided 5-point stencils at the
// two points nearest each end, exact on polynomials of degree <= 4.
class LineDifferentiator {
 public:
  explicit LineDifferentiator(const GridDim& dim);
  ~LineDifferentiator();
  LineDifferentiator(const LineDifferentiator&) = delete;
  LineDifferentiator& operator=(const LineDifferentiator&) = delete;

  int size() const { return dim_.n; }
  // Thread-safe; scratch buffers are allocated per call.
  void apply(const double* in, double* out) const;

 private:
  GridDim dim_;
  double h_;
  void* forward_ = nullptr;   // fftw_plan
  void* backward_ = nullptr;  // fftw_plan
};

// Real FFT helpers shared by the Cauchy solver (unnormalized forward, inverse
// divides by n).
std::vector<std::complex<double>> real_fft(const std::vector<double>& v);
std::vector<double> inverse_real_fft(const std::vector<std::complex<double>>& c, int n);

}  // namespace dedonder
