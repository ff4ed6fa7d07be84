#include "layerpot/spectral.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/FFT>

#include "layerpot/error.hpp"
#include "layerpot/geometry.hpp"

namespace layerpot {

std::vector<double> ptr_nodes(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = two_pi * j / n;
  return t;
}

void check_sample_count(int n) {
  if (n < 8 || n % 2 != 0)
    throw Error(ErrorKind::size_mismatch,
                "sample count must be even and >= 8, got " + std::to_string(n));
}

double ptr(std::span<const double> values) {
  check_sample_count(static_cast<int>(values.size()));
  double s = 0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

cplx ptr(std::span<const cplx> values) {
  check_sample_count(static_cast<int>(values.size()));
  cplx s = 0;
  for (const cplx& v : values) s += v;
  return s / static_cast<double>(values.size());
}

FourierCoeffs::FourierCoeffs(int n) : n_(n), c_(static_cast<std::size_t>(n)) {
  if (n <= 0 || n % 2 != 0)
    throw Error(ErrorKind::size_mismatch, "coefficient count must be even and positive");
}

cplx FourierCoeffs::at(int k) const {
  if (k < min_index() || k > max_index()) return 0.0;
  return (*this)[k];
}

double FourierCoeffs::interpolate(double t) const {
  double v = c_[static_cast<std::size_t>(n_ / 2)].real();
  for (int k = 1; k < n_ / 2; ++k) {
    const cplx e = std::polar(1.0, k * t);
    v += ((*this)[k] * e + (*this)[-k] * std::conj(e)).real();
  }
  v += (*this)[-n_ / 2].real() * std::cos(0.5 * n_ * t);
  return v;
}

std::vector<cplx> FourierCoeffs::synthesize() const {
  // Inverse of analyze: unnormalized inverse DFT of the wrapped coefficients.
  std::vector<cplx> spec(static_cast<std::size_t>(n_)), out;
  for (int k = min_index(); k <= max_index(); ++k)
    spec[static_cast<std::size_t>((k + n_) % n_)] = (*this)[k];
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, spec);
  return out;
}

FourierCoeffs analyze(std::span<const cplx> values) {
  const int n = static_cast<int>(values.size());
  check_sample_count(n);
  std::vector<cplx> in(values.begin(), values.end()), out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  FourierCoeffs c(n);
  for (int k = 0; k < n; ++k) {
    const int idx = k < n / 2 ? k : k - n;
    c[idx] = out[static_cast<std::size_t>(k)] / static_cast<double>(n);
  }
  return c;
}

FourierCoeffs analyze(std::span<const double> values) {
  std::vector<cplx> z(values.begin(), values.end());
  return analyze(std::span<const cplx>(z));
}

double convolve_eval(const FourierCoeffs& kernel, const FourierCoeffs& density, double tstar) {
  const int n = density.size();
  if (kernel.size() != n)
    throw Error(ErrorKind::size_mismatch, "kernel and density coefficient counts differ");
  cplx s = kernel[0] * density[0];
  for (int k = 1; k < n / 2; ++k) {
    const cplx e = std::polar(1.0, k * tstar);
    s += kernel[-k] * density[k] * e + kernel[k] * density[-k] * std::conj(e);
  }
  s += kernel[-n / 2] * density[-n / 2] * std::cos(0.5 * n * tstar);
  return s.real();
}

}  // namespace layerpot
