#include "layerpot/circle_oracle.hpp"

#include <cmath>
#include <numeric>

#include "layerpot/error.hpp"

namespace layerpot {

namespace {

double ratio(double r, double a) {
  if (!(a > 0)) throw Error(ErrorKind::domain, "circle radius must be positive");
  if (!(r >= 0) || !(r < a)) throw Error(ErrorKind::domain, "need 0 <= r < a");
  return r / a;
}

}  // namespace

std::vector<double> circle_density(std::span<const double> f) {
  if (f.empty()) return {};
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  std::vector<double> mu(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) mu[j] = mean - 2.0 * f[j];
  return mu;
}

double circle_spectral_eval(const FourierCoeffs& mu_hat, double r, double tstar, double a) {
  const double q = ratio(r, a);
  FourierCoeffs k(mu_hat.size());
  k[0] = -1.0;
  double p = 1.0;
  for (int n = 1; n <= mu_hat.size() / 2; ++n) {
    p *= q;
    if (n <= k.max_index()) k[n] = -0.5 * p;
    k[-n] = -0.5 * p;
  }
  return convolve_eval(k, mu_hat, tstar);
}

double circle_aliasing_error(const FourierCoeffs& mu_hat, double r, double tstar, double a,
                             int n) {
  const double q = ratio(r, a);
  if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::size_mismatch, "N must be positive and even");
  const int lo = mu_hat.min_index();
  const int hi = mu_hat.max_index();

  // For real mu, p[-k] = conj(p[k]) and the two halves of the sum combine.
  cplx sum = 0;
  for (long l = 1; l < 1000000; ++l) {
    const long k = l * n;
    cplx p = k <= hi ? -mu_hat[static_cast<int>(k)] : cplx(0);
    for (int j = lo; j <= hi; ++j) {
      const cplx c = mu_hat[j];
      if (c == cplx(0)) continue;
      const long m = k - j;  // mu[k - m] e^{-i m t*} term
      if (m >= 1)
        p -= 0.5 * std::pow(q, static_cast<double>(m)) * std::polar(1.0, -(m * tstar)) * c;
      else if (m <= -1)  // mu[k + |m|] e^{i |m| t*} term
        p -= 0.5 * std::pow(q, static_cast<double>(-m)) * std::polar(1.0, -m * tstar) * c;
    }
    sum += p;
    const double gap = static_cast<double>(k + n) - mu_hat.size() / 2.0;
    if (k + n > hi && (q == 0 || gap * std::log(q) < std::log(1e-17))) break;
  }
  return 2.0 * sum.real();
}

double circle_error_mu1(double r, double tstar, double a, int n) {
  const double q = ratio(r, a);
  const double qn = std::pow(q, n);
  const double c = std::cos(n * tstar);
  return (qn * qn - qn * c) / (1.0 + qn * qn - 2.0 * qn * c);
}

}  // namespace layerpot
