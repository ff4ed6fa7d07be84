#pragma once

#include <complex>
#include <span>
#include <vector>

namespace layerpot {

using cplx = std::complex<double>;

/// Quadrature nodes t_j = 2 pi j / N, j = 0..N-1 (the same node set as j = 1..N).
std::vector<double> ptr_nodes(int n);

/// Throws size_mismatch unless n is even and at least 8.
void check_sample_count(int n);

/// Periodic trapezoid rule normalized to the mean: (1/N) sum_j values_j.
double ptr(std::span<const double> values);
cplx ptr(std::span<const cplx> values);

/// Fourier coefficients c[n], n in [-N/2, N/2 - 1], with the convention
/// c[n] = (1/2pi) int c(t) e^{-int} dt approximated on N equispaced nodes.
class FourierCoeffs {
 public:
  FourierCoeffs() = default;
  explicit FourierCoeffs(int n);

  int size() const { return n_; }
  int min_index() const { return -n_ / 2; }
  int max_index() const { return n_ / 2 - 1; }

  cplx& operator[](int k) { return c_[static_cast<std::size_t>(k + n_ / 2)]; }
  const cplx& operator[](int k) const { return c_[static_cast<std::size_t>(k + n_ / 2)]; }
  /// Zero outside the stored range.
  cplx at(int k) const;

  /// Real trigonometric interpolant; the Nyquist mode enters as c[-N/2] cos(N t / 2)
  /// so the interpolant of real samples is real everywhere.
  double interpolate(double t) const;
  /// Values of sum_n c[n] e^{i n t_j} at the N nodes.
  std::vector<cplx> synthesize() const;

 private:
  int n_ = 0;
  std::vector<cplx> c_;
};

FourierCoeffs analyze(std::span<const double> values);
FourierCoeffs analyze(std::span<const cplx> values);

/// Truncated convolution (1/2pi) int k(t - t*) c(t) dt ~ sum_n k[-n] c[n] e^{i n t*}
/// over n in [-N/2, N/2 - 1] for a kernel k that is even in its argument, so
/// k[-n] = conj(k[n]) = k[n]. The Nyquist pair is folded symmetrically and the
/// real part is returned. Throws size_mismatch if the two sizes differ.
double convolve_eval(const FourierCoeffs& kernel, const FourierCoeffs& density, double tstar);

}  // namespace layerpot
