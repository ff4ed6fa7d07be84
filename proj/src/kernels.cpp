#include "layerpot/kernels.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "layerpot/error.hpp"

namespace layerpot {

double dlp_kernel(const Vec2& x, const Vec2& y, const Vec2& ny) {
  const Vec2 r = x - y;
  const double r2 = r.squaredNorm();
  if (r2 == 0) throw Error(ErrorKind::singular_kernel, "double-layer kernel at x == y");
  return ny.dot(r) / r2;
}

double slp_kernel(const Vec2& x, const Vec2& y) {
  const double r = (x - y).norm();
  if (r == 0) throw Error(ErrorKind::singular_kernel, "single-layer kernel at x == y");
  return -std::log(r);
}

double dlp_outer(const Vec2& ystar, const Vec2& y, const Vec2& ny, double kappa_star) {
  const Vec2 r = ystar - y;
  const double r2 = r.squaredNorm();
  if (r2 < 1e-24) return -0.5 * kappa_star;
  return ny.dot(r) / r2;
}

double dlp_outer(const BoundaryCurve& curve, const ClosePointFrame& frame, const CurvePoint& y) {
  const double theta = std::remainder(y.t - frame.tstar, two_pi);
  if (theta == 0) return -0.5 * frame.curvature;
  if (std::abs(theta) >= 0.25) return dlp_outer(frame.ystar, y.point, y.normal, frame.curvature);

  using gauss = boost::math::quadrature::gauss<double, 20>;
  const auto& xs = gauss::abscissa();
  const auto& ws = gauss::weights();
  const double half = 0.5 * theta;
  Vec2 chord = Vec2::Zero();  // y - y*
  Vec2 bend = Vec2::Zero();   // int (u - t*) y''(u) du
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int sgn : {-1, 1}) {
      if (xs[i] == 0 && sgn < 0) continue;
      const double off = half * (1.0 + sgn * xs[i]);
      const CurvePoint cp = curve.eval(frame.tstar + off);
      chord += ws[i] * half * cp.d1;
      bend += ws[i] * half * off * cp.d2;
    }
  }
  return y.normal.dot(bend) / chord.squaredNorm();
}

InnerKernelCoeffs inner_coeffs(double kappa_star, double speed_star, double eps, Side side) {
  if (!(std::abs(kappa_star) > flat_curvature_tol))
    throw Error(ErrorKind::flat_point, "|kappa*| <= 1e-8");
  if (side == Side::on_boundary)
    throw Error(ErrorKind::input, "inner coefficients need an interior or exterior side");
  if (!(eps >= 0)) throw Error(ErrorKind::input, "eps must be nonnegative");

  InnerKernelCoeffs c;
  c.kappa = kappa_star;
  c.eps = eps;
  c.side = side;
  const double sgn = kappa_star > 0 ? 1.0 : -1.0;
  const double ks = kappa_star * speed_star;
  c.gamma = sgn * ks * ks;
  const double g = std::abs(c.gamma);
  const double e = side == Side::interior ? eps : -eps;

  c.a0 = 2.0 * (c.gamma + e - e * g);
  c.a1 = c.gamma - e * g;
  c.d = g - e * c.gamma;
  c.c0 = 2.0 * c.d + eps * eps;
  c.c1 = -2.0 * c.d / c.c0;

  // |C1| < 1 with C0 > 0 is equivalent to eps > 0 and 4d + eps^2 > 0; testing
  // it that way keeps eps ~ 1e-9 admissible where 1 + C1 rounds to zero.
  const double disc = 4.0 * c.d + eps * eps;
  if (!(eps > 0) || !(c.c0 > 0) || !(disc > 0))
    throw Error(ErrorKind::coefficient_domain, "|C1| >= 1 for the requested eps");
  c.rho = 2.0 * c.d / (c.c0 + eps * std::sqrt(disc));
  return c;
}

namespace {

// C0 (1 + C1 cos theta), formed without cancellation near theta = 0.
double scaled_denominator(double theta, const InnerKernelCoeffs& c) {
  const double s = std::sin(0.5 * theta);
  return c.eps * c.eps + 4.0 * c.d * s * s;
}

double signed_eps(const InnerKernelCoeffs& c) {
  return c.side == Side::interior ? c.eps : -c.eps;
}

// P = A0/2 + A1/C1, the residue left after splitting off the constant -kappa/2.
double peak_numerator(const InnerKernelCoeffs& c) {
  const double e = signed_eps(c);
  const double sgn = c.kappa > 0 ? 1.0 : -1.0;
  return e - sgn * 0.5 * c.eps * c.eps;
}

}  // namespace

double k_in(double theta, const InnerKernelCoeffs& c) {
  // -(|k|/C0)(A0/2 - A1 cos) / (1 + C1 cos) = -k/2 - |k| P / (C0 (1 + C1 cos)).
  return -0.5 * c.kappa - std::abs(c.kappa) * peak_numerator(c) / scaled_denominator(theta, c);
}

FourierCoeffs k_in_fourier(const InnerKernelCoeffs& c, int n) {
  FourierCoeffs out(n);
  // 1/(C0 (1 + C1 cos)) = sum rho^|n| e^{in theta} / (eps sqrt(4d + eps^2)).
  const double amp = -std::abs(c.kappa) * peak_numerator(c) /
                     (c.eps * std::sqrt(4.0 * c.d + c.eps * c.eps));
  double p = 1.0;
  out[0] = -0.5 * c.kappa + amp;
  for (int k = 1; k <= n / 2; ++k) {
    p *= c.rho;
    if (k < n / 2) out[k] = amp * p;
    out[-k] = amp * p;
  }
  return out;
}

double k_residual(double t, const ClosePointFrame& frame, const BoundaryCurve& curve,
                  const InnerKernelCoeffs& c) {
  const CurvePoint cp = curve.eval(t);
  const double k = dlp_kernel(frame.x, cp.point, cp.normal);
  const double kout = dlp_outer(curve, frame, cp);
  return k - kout - k_in(t - frame.tstar, c) - 0.5 * frame.curvature;
}

double s_in(double theta, const InnerKernelCoeffs& c) {
  return std::log(std::abs(c.kappa)) - 0.5 * std::log(scaled_denominator(theta, c));
}

FourierCoeffs s_in_fourier(const InnerKernelCoeffs& c, int n) {
  FourierCoeffs out(n);
  out[0] = std::log(std::abs(c.kappa)) - 0.5 * std::log(c.c0) +
           0.5 * std::log1p(c.rho * c.rho);
  double p = 1.0;
  for (int k = 1; k <= n / 2; ++k) {
    p *= c.rho;
    const double v = p / (2.0 * k);
    if (k < n / 2) out[k] = v;
    out[-k] = v;
  }
  return out;
}

double s_residual(double t, const ClosePointFrame& frame, const BoundaryCurve& curve,
                  const InnerKernelCoeffs& c) {
  const CurvePoint cp = curve.eval(t);
  return slp_kernel(frame.x, cp.point) - s_in(t - frame.tstar, c);
}

}  // namespace layerpot
