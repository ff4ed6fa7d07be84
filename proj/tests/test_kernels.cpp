#include <cmath>

#include "doctest.h"
#include "layerpot/kernels.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace layerpot;

TEST_CASE("point kernels") {
  const Vec2 x(0.5, 0.0), y(1.0, 0.0), n(1.0, 0.0);
  CHECK(dlp_kernel(x, y, n) == doctest::Approx(-2.0));
  CHECK(slp_kernel(x, y) == doctest::Approx(-std::log(0.5)));
  CHECK_ERROR_KIND(dlp_kernel(y, y, n), ErrorKind::singular_kernel);
  CHECK_ERROR_KIND(slp_kernel(y, y), ErrorKind::singular_kernel);
}

TEST_CASE("outer kernel on a circle is the constant -kappa/2") {
  const double a = 1.7;
  const BoundaryCurve circle = BoundaryCurve::circle(a);
  const ClosePointFrame f = frame_at(circle, 0.4, 0.01, Side::interior);
  for (double th : {1e-12, 1e-6, 0.01, 0.2, 0.3, 1.0, 3.0, -2.0}) {
    const CurvePoint y = circle.eval(0.4 + th);
    CHECK(dlp_outer(circle, f, y) == doctest::Approx(-0.5 / a).epsilon(1e-12));
  }
  CHECK(dlp_outer(circle, f, circle.eval(0.4)) == -0.5 * f.curvature);
}

TEST_CASE("outer kernel overloads agree and the curve form tends to -kappa*/2") {
  const BoundaryCurve star = BoundaryCurve::star(1.55, 0.4, 5);
  for (double ts : {0.0, 0.5, 2.0}) {
    const ClosePointFrame f = frame_at(star, ts, 0.01, Side::interior);
    for (double th : {0.01, 0.1, 0.2, -0.24}) {
      const CurvePoint y = star.eval(ts + th);
      CHECK(dlp_outer(star, f, y) ==
            doctest::Approx(dlp_outer(f.ystar, y.point, y.normal, f.curvature)).epsilon(1e-10));
    }
    const CurvePoint near = star.eval(ts + 1e-9);
    CHECK(dlp_outer(star, f, near) == doctest::Approx(-0.5 * f.curvature).epsilon(1e-6));
  }
}

TEST_CASE("inner kernels agree with their defining forms") {
  for (double kappa : {2.0, -2.0, 0.7}) {
    for (bool interior : {true, false}) {
      for (double eps : {0.05, 0.2}) {
        const Side side = interior ? Side::interior : Side::exterior;
        const InnerKernelCoeffs c = inner_coeffs(kappa, 1.3, eps, side);
        const oracle::InnerDefinition def(kappa, 1.3, eps, interior);
        CHECK(c.c0 == doctest::Approx(def.c0).epsilon(1e-14));
        CHECK(c.c1 == doctest::Approx(def.c1).epsilon(1e-14));
        CHECK(std::abs(c.rho) < 1);
        CHECK(c.rho * c.rho * c.c1 + 2 * c.rho + c.c1 == doctest::Approx(0.0).epsilon(1e-15));
        for (double th : {0.0, 0.01, 0.5, 2.0, M_PI}) {
          CHECK(k_in(th, c) == doctest::Approx(def.k_in_direct(th)).epsilon(1e-11));
          CHECK(s_in(th, c) == doctest::Approx(def.s_in_direct(th)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("inner kernels keep their digits at small eps") {
  const InnerKernelCoeffs c = inner_coeffs(-2.5, 1.4, 1e-7, Side::interior);
  const oracle::InnerDefinition def(-2.5, 1.4, 1e-7, true);
  for (double th : {0.0, 1e-8, 1e-6, 1e-3, 1.0}) {
    CHECK(k_in(th, c) == doctest::Approx(def.k_in_expanded(th)).epsilon(1e-12));
    CHECK(s_in(th, c) == doctest::Approx(def.s_in_expanded(th)).epsilon(1e-13));
  }
}

TEST_CASE("closed-form Fourier coefficients match quadrature") {
  for (double kappa : {1.8, -1.8}) {
    for (bool interior : {true, false}) {
      const double eps = 0.01;
      const Side side = interior ? Side::interior : Side::exterior;
      const InnerKernelCoeffs c = inner_coeffs(kappa, 1.2, eps, side);
      const oracle::InnerDefinition def(kappa, 1.2, eps, interior);
      const int n = 64;
      const auto kq = oracle::even_cosine_coeffs([&](double th) { return def.k_in_expanded(th); },
                                                 n / 2, def.width());
      const auto sq = oracle::even_cosine_coeffs([&](double th) { return def.s_in_expanded(th); },
                                                 n / 2, def.width());
      const FourierCoeffs kh = k_in_fourier(c, n), sh = s_in_fourier(c, n);
      const double kscale = std::abs(kq[0]) + std::abs(kq[1]);
      for (int k = -n / 2; k < n / 2; ++k) {
        const std::size_t ak = static_cast<std::size_t>(std::abs(k));
        CHECK(std::abs(kh[k] - cplx(kq[ak], 0)) < 1e-12 * kscale);
        CHECK(std::abs(sh[k] - cplx(sq[ak], 0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("residual kernels vanish on a circle") {
  const BoundaryCurve circle = BoundaryCurve::circle(0.8);
  for (Side side : {Side::interior, Side::exterior}) {
    for (double eps : {1e-4, 0.1}) {
      const ClosePointFrame f = frame_at(circle, 1.1, eps, side);
      const InnerKernelCoeffs c = inner_coeffs(f.curvature, f.speed, f.eps, side);
      for (double th : {1e-5, 0.01, 0.3, 2.0}) {
        const double t = 1.1 + th;
        const CurvePoint y = circle.eval(t);
        // A few ulps of the cancelling terms, times the sensitivity of
        // n.(x - y) to rounding in coordinates of size a.
        const double scale = std::abs(dlp_kernel(f.x, y.point, y.normal)) + std::abs(k_in(th, c)) +
                             std::abs(dlp_outer(circle, f, y));
        const double cond = 0.8 / std::abs(y.normal.dot(f.x - y.point));
        CHECK(std::abs(k_residual(t, f, circle, c)) < 16 * 2.2e-16 * scale * cond);
        CHECK(std::abs(s_residual(t, f, circle, c)) < 1e-12);
      }
    }
  }
}

TEST_CASE("coefficient domain") {
  CHECK_ERROR_KIND(inner_coeffs(1e-9, 1.0, 0.1), ErrorKind::flat_point);
  CHECK_ERROR_KIND(inner_coeffs(1.0, 1.0, 0.0), ErrorKind::coefficient_domain);
  CHECK_ERROR_KIND(inner_coeffs(1.0, 1.0, 0.1, Side::on_boundary), ErrorKind::input);
  CHECK_ERROR_KIND(inner_coeffs(1.0, 1.0, -0.1), ErrorKind::input);
}
