#include <cmath>
#include <vector>

#include "doctest.h"
#include "layerpot/closeeval.hpp"
#include "layerpot/nystrom.hpp"
#include "test_util.hpp"

using namespace layerpot;

namespace {

double harmonic_poly(const Vec2& x) { return x.x() * x.x() - x.y() * x.y() + 3 * x.x() * x.y(); }

// v = y1 / |y|^2 and its gradient; harmonic outside the origin, decays like 1/r.
double dipole(const Vec2& y) { return y.x() / y.squaredNorm(); }
Vec2 dipole_grad(const Vec2& y) {
  const double r2 = y.squaredNorm();
  return Vec2((y.y() * y.y() - y.x() * y.x()) / (r2 * r2), -2 * y.x() * y.y() / (r2 * r2));
}

}  // namespace

TEST_CASE("matrix diagonals use the smooth limit") {
  const BoundaryCurve star = BoundaryCurve::star(1.55, 0.4, 5);
  const auto nodes = sample_curve(star, 32);
  const Eigen::MatrixXd a = dirichlet_matrix(nodes);
  const Eigen::MatrixXd b = neumann_matrix(nodes);
  for (int i = 0; i < 32; ++i) {
    const CurvePoint& y = nodes[static_cast<std::size_t>(i)];
    CHECK(a(i, i) == doctest::Approx(-0.5 - 0.5 * y.curvature * y.speed / 32));
    CHECK(b(i, i) == doctest::Approx(-0.5 - 0.5 * y.curvature * y.speed / 32));
  }
  // Off-diagonal entry written out.
  const CurvePoint& y0 = nodes[0];
  const CurvePoint& y5 = nodes[5];
  const Vec2 r = y0.point - y5.point;
  CHECK(a(0, 5) == doctest::Approx(y5.normal.dot(r) / r.squaredNorm() * y5.speed / 32));
}

TEST_CASE("circle densities") {
  const BoundaryCurve circle = BoundaryCurve::circle(1.5);
  const DensitySolution mu = solve_interior_dirichlet(
      circle, [](const CurvePoint& y) { return 2.0 + std::cos(2 * y.t); }, 32);
  for (int j = 0; j < mu.size(); ++j) {
    const double t = mu.nodes()[static_cast<std::size_t>(j)].t;
    CHECK(mu.density()[static_cast<std::size_t>(j)] ==
          doctest::Approx(-2.0 - 2 * std::cos(2 * t)).epsilon(1e-12));
  }
  CHECK(mu.residual() < 1e-14);
  CHECK(mu.condition() >= 1);
}

TEST_CASE("interior Dirichlet recovers a harmonic polynomial") {
  const BoundaryCurve star = BoundaryCurve::star(1.55, 0.4, 5);
  double previous = INFINITY;
  for (int n : {32, 64, 128}) {
    const DensitySolution sol =
        solve_interior_dirichlet(star, [](const CurvePoint& y) { return harmonic_poly(y.point); }, n);
    double err = 0;
    for (const Vec2& x : {Vec2(0, 0), Vec2(0.4, 0.1), Vec2(-0.3, -0.5)})
      err = std::max(err, std::abs(eval_dlp_naive(sol, x) - harmonic_poly(x)));
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-10);
}

TEST_CASE("exterior Neumann recovers a decaying dipole") {
  const BoundaryCurve star = BoundaryCurve::star(1.55, 0.4, 5);
  const DensitySolution sol = solve_exterior_neumann(
      star, [](const CurvePoint& y) { return dipole_grad(y.point).dot(y.normal); }, 128);
  for (const Vec2& x : {Vec2(3, 0), Vec2(-2.5, 1.5), Vec2(0.2, -4)})
    CHECK(eval_slp_naive(sol, x) == doctest::Approx(dipole(x)).epsilon(1e-9));
  double flux = 0;
  for (int j = 0; j < sol.size(); ++j)
    flux += sol.density()[static_cast<std::size_t>(j)] * sol.nodes()[static_cast<std::size_t>(j)].speed;
  CHECK(std::abs(flux / sol.size()) < 1e-12);
}

TEST_CASE("interpolants pass through the samples") {
  const BoundaryCurve star = BoundaryCurve::star(1.55, 0.4, 5);
  const DensitySolution sol =
      solve_interior_dirichlet(star, [](const CurvePoint& y) { return harmonic_poly(y.point); }, 64);
  for (int j : {0, 7, 40}) {
    const double t = sol.nodes()[static_cast<std::size_t>(j)].t;
    CHECK(sol.density_at(t) == doctest::Approx(sol.density()[static_cast<std::size_t>(j)]));
    CHECK(sol.data_at(t) == doctest::Approx(sol.boundary_data()[static_cast<std::size_t>(j)]));
  }
}

TEST_CASE("input validation") {
  const BoundaryCurve circle = BoundaryCurve::circle(1.0);
  CHECK_ERROR_KIND(DensitySolution::from_samples(circle, Problem::interior_dirichlet,
                                                 std::vector<double>(16, 1.0),
                                                 std::vector<double>(8, 1.0)),
                   ErrorKind::size_mismatch);
  CHECK_ERROR_KIND(solve_exterior_neumann(circle, [](const CurvePoint&) { return 1.0; }, 16),
                   ErrorKind::input);
  CHECK_ERROR_KIND(solve_interior_dirichlet(circle, [](const CurvePoint&) { return NAN; }, 16),
                   ErrorKind::input);
  CHECK_ERROR_KIND(solve_interior_dirichlet(circle, [](const CurvePoint&) { return 1.0; }, 15),
                   ErrorKind::size_mismatch);
}
