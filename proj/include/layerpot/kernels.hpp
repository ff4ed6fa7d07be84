#pragma once

#include "layerpot/geometry.hpp"
#include "layerpot/spectral.hpp"

namespace layerpot {

/// Double-layer kernel n_y.(x - y)/|x - y|^2. Throws singular_kernel when x == y.
double dlp_kernel(const Vec2& x, const Vec2& y, const Vec2& ny);

/// Single-layer kernel -log|x - y|. Throws singular_kernel when x == y.
double slp_kernel(const Vec2& x, const Vec2& y);

/// Outer expansion of the double-layer kernel: the boundary-to-boundary kernel
/// n_y.(y* - y)/|y* - y|^2, continued by its limit -kappa*/2 when |y - y*| < 1e-12.
double dlp_outer(const Vec2& ystar, const Vec2& y, const Vec2& ny, double kappa_star);

/// Same kernel for y = y(t) on the curve. When |t - t*| < 0.25 the chord
/// y* - y and its normal component n_y.(y* - y) = n_y.int_{t*}^{t} (u - t*) y''(u) du
/// are integrated by Gauss-Legendre instead of differenced, which keeps full
/// relative accuracy as t -> t*.
double dlp_outer(const BoundaryCurve& curve, const ClosePointFrame& frame, const CurvePoint& y);

/// Coefficients of the rational-trigonometric inner kernels
///
///   K_in(theta) = -(|kappa|/C0) (A0/2 - A1 cos theta) / (1 + C1 cos theta)
///   S_in(theta) = log|kappa| - log(C0)/2 - log(1 + C1 cos theta)/2
///
/// with gamma = sgn(kappa) |kappa y'(t*)|^2 and the circle-exact corrections
///
///   A0 = 2(gamma + e - e|gamma|),  A1 = gamma - e|gamma|,
///   C0 = 2(|gamma| - e gamma) + eps^2,  C1 = -2(|gamma| - e gamma)/C0,
///
/// where e = +eps for interior targets and e = -eps for exterior targets (an
/// exterior point sits at y* + (eps/|kappa|) n*, the mirror of the interior
/// offset). On a circle both kernels are then exact.
struct InnerKernelCoeffs {
  double kappa = 0;
  double gamma = 0;
  double eps = 0;
  Side side = Side::interior;
  double a0 = 0, a1 = 0, c0 = 0, c1 = 0;
  /// Root of rho^2 C1 + 2 rho + C1 = 0 with |rho| < 1, so that
  /// 1 + C1 cos theta = (1 - 2 rho cos theta + rho^2)/(1 + rho^2).
  double rho = 0;
  /// |gamma| - e gamma; C0 = 2 d + eps^2 is formed from it without cancellation.
  double d = 0;
};

/// Throws flat_point when |kappa*| <= 1e-8 and coefficient_domain when
/// |C1| >= 1 or C0 <= 0 (eps = 0, or eps beyond the osculating radius).
InnerKernelCoeffs inner_coeffs(double kappa_star, double speed_star, double eps,
                               Side side = Side::interior);

/// Inner double-layer kernel at theta = t - t*.
double k_in(double theta, const InnerKernelCoeffs& c);

/// Closed-form Fourier coefficients of k_in, n in [-N/2, N/2 - 1]:
///   K[0] = -kappa/2 - |kappa| P / (|e| sqrt(4d + e^2)),
///   K[n] = -|kappa| P rho^|n| / (|e| sqrt(4d + e^2)),  P = e - sgn(kappa) e^2/2.
FourierCoeffs k_in_fourier(const InnerKernelCoeffs& c, int n);

/// Residual double-layer kernel K - K_out - K_in - kappa*/2 at boundary parameter t.
double k_residual(double t, const ClosePointFrame& frame, const BoundaryCurve& curve,
                  const InnerKernelCoeffs& c);

/// Inner single-layer kernel at theta = t - t*.
double s_in(double theta, const InnerKernelCoeffs& c);

/// Closed-form Fourier coefficients of s_in:
///   S[0] = log|kappa| - log(C0)/2 + log(1 + rho^2)/2,  S[n] = rho^|n| / (2|n|).
FourierCoeffs s_in_fourier(const InnerKernelCoeffs& c, int n);

/// Residual single-layer kernel S - S_in at boundary parameter t.
double s_residual(double t, const ClosePointFrame& frame, const BoundaryCurve& curve,
                  const InnerKernelCoeffs& c);

}  // namespace layerpot
