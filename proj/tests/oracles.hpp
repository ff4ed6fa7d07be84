// Reference computations for the tests. Nothing here calls into the library's
// numerical routines; only curve sampling is shared.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "layerpot/geometry.hpp"

namespace oracle {

/// Breakpoints on [0, pi] for an integrand peaked at 0 with the given width:
/// geometric (ratio 2) from width * 1e-8 up to 0.05, then uniform panels of
/// at most 0.05.
inline std::vector<double> graded_breaks(double width) {
  std::vector<double> b{0.0};
  double x = std::min(width * 1e-8, 0.05);
  while (x < 0.05) {
    b.push_back(x);
    x *= 2;
  }
  b.push_back(0.05);
  const int m = static_cast<int>(std::ceil((M_PI - 0.05) / 0.05));
  for (int i = 1; i <= m; ++i) b.push_back(0.05 + (M_PI - 0.05) * i / m);
  return b;
}

/// c[n] = (1/pi) int_0^pi f(theta) cos(n theta) dtheta, n = 0..nmax, which is the
/// Fourier coefficient (1/2pi) int f e^{-in theta} of an even function.
/// Composite 30-point Gauss-Legendre on graded_breaks(width).
inline std::vector<double> even_cosine_coeffs(const std::function<double(double)>& f, int nmax,
                                              double width, int* nodes_used = nullptr) {
  using gauss = boost::math::quadrature::gauss<double, 30>;
  const auto breaks = graded_breaks(width);
  const auto& abscissa = gauss::abscissa();
  const auto& weights = gauss::weights();
  std::vector<double> c(static_cast<std::size_t>(nmax) + 1, 0.0);
  int count = 0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      for (int sgn : {-1, 1}) {
        if (abscissa[i] == 0 && sgn < 0) continue;
        const double th = mid + sgn * half * abscissa[i];
        const double w = half * weights[i] * f(th);
        ++count;
        for (int n = 0; n <= nmax; ++n) c[static_cast<std::size_t>(n)] += w * std::cos(n * th);
      }
    }
  }
  for (double& v : c) v /= M_PI;
  if (nodes_used) *nodes_used = count;
  return c;
}

/// Winding number of the closed polyline through `m` curve samples about x.
inline int winding_number(const layerpot::BoundaryCurve& curve, const layerpot::Vec2& x,
                          int m = 20000) {
  int wn = 0;
  layerpot::Vec2 a = curve.point(0.0);
  for (int i = 1; i <= m; ++i) {
    const layerpot::Vec2 b = curve.point(layerpot::two_pi * i / m);
    const double cross = (b.x() - a.x()) * (x.y() - a.y()) - (x.x() - a.x()) * (b.y() - a.y());
    if (a.y() <= x.y()) {
      if (b.y() > x.y() && cross > 0) ++wn;
    } else if (b.y() <= x.y() && cross < 0) {
      --wn;
    }
    a = b;
  }
  return wn;
}

/// Minimum distance from x to `m` uniform curve samples.
inline double sampled_distance(const layerpot::BoundaryCurve& curve, const layerpot::Vec2& x,
                               int m) {
  double best = INFINITY;
  for (int i = 0; i < m; ++i)
    best = std::min(best, (x - curve.point(layerpot::two_pi * i / m)).norm());
  return best;
}

/// Inner kernels built from their defining coefficients,
///   K_in = -(|k|/C0)(A0/2 - A1 cos) / (1 + C1 cos),
///   S_in = log|k| - log(C0 (1 + C1 cos))/2,
/// with gamma = sgn(k)(k s)^2, e = +eps inside and -eps outside. The *_direct
/// forms are literal; the *_expanded forms rewrite 1 - cos as 2 sin^2(th/2) in
/// numerator and denominator so that small eps keeps its digits.
struct InnerDefinition {
  double kappa, eps, e, a0, a1, c0, c1, d;

  InnerDefinition(double k, double speed, double eps_, bool interior) : kappa(k), eps(eps_) {
    const double gamma = (k > 0 ? 1.0 : -1.0) * (k * speed) * (k * speed);
    e = interior ? eps : -eps;
    a0 = 2.0 * (gamma + e - e * std::abs(gamma));
    a1 = gamma - e * std::abs(gamma);
    d = std::abs(gamma) - e * gamma;
    c0 = 2.0 * d + eps * eps;
    c1 = -2.0 * d / c0;
  }
  double k_in_direct(double th) const {
    return -(std::abs(kappa) / c0) * (0.5 * a0 - a1 * std::cos(th)) / (1.0 + c1 * std::cos(th));
  }
  double s_in_direct(double th) const {
    return std::log(std::abs(kappa)) - 0.5 * std::log(c0 * (1.0 + c1 * std::cos(th)));
  }
  double k_in_expanded(double th) const {
    const double s2 = std::sin(0.5 * th) * std::sin(0.5 * th);
    return -std::abs(kappa) * (e + 2.0 * a1 * s2) / (eps * eps + 4.0 * d * s2);
  }
  double s_in_expanded(double th) const {
    const double s2 = std::sin(0.5 * th) * std::sin(0.5 * th);
    return std::log(std::abs(kappa)) - 0.5 * std::log(eps * eps + 4.0 * d * s2);
  }
  /// Angular half-width of the peak at theta = 0.
  double width() const { return eps / std::sqrt(d); }
};

}  // namespace oracle
