#include <cmath>
#include <vector>

#include "doctest.h"
#include "layerpot/circle_oracle.hpp"
#include "layerpot/closeeval.hpp"
#include "test_util.hpp"

using namespace layerpot;

namespace {

std::vector<double> band_limited(int n) {
  std::vector<double> v;
  for (double t : ptr_nodes(n)) v.push_back(1.0 + std::cos(3 * t) + 0.5 * std::sin(7 * t));
  return v;
}

}  // namespace

TEST_CASE("circle density is mean minus twice the data") {
  const std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8};
  const auto mu = circle_density(f);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(mu[j] == doctest::Approx(4.5 - 2 * f[j]));
}

TEST_CASE("spectral evaluation reproduces the Poisson extension") {
  const double a = 2.0;
  std::vector<double> f;
  for (double t : ptr_nodes(32)) f.push_back(std::cos(t) + 0.25 * std::sin(4 * t));
  const FourierCoeffs mu_hat = analyze(std::span<const double>(circle_density(f)));
  for (double r : {0.0, 0.7, 1.99}) {
    for (double t : {0.0, 1.3, 4.0}) {
      const double q = r / a;
      const double exact = q * std::cos(t) + 0.25 * std::pow(q, 4) * std::sin(4 * t);
      CHECK(circle_spectral_eval(mu_hat, r, t, a) == doctest::Approx(exact).epsilon(1e-14));
    }
  }
  CHECK_ERROR_KIND(circle_spectral_eval(mu_hat, 2.0, 0.0, a), ErrorKind::domain);
  CHECK_ERROR_KIND(circle_spectral_eval(mu_hat, -0.1, 0.0, a), ErrorKind::domain);
}

TEST_CASE("aliasing error for the unit density matches the closed form") {
  FourierCoeffs one(64);
  one[0] = 1.0;
  for (int n : {16, 32}) {
    for (double r : {0.0, 0.5, 0.9, 0.999}) {
      for (double t : {0.0, 0.1, 2.0}) {
        // The closed form loses digits to 1 + q^2N - 2 q^N cos(N t) near the wall.
        const double closed = circle_error_mu1(r, t, 1.0, n);
        const double den = 1 + std::pow(r, 2 * n) - 2 * std::pow(r, n) * std::cos(n * t);
        CHECK(std::abs(circle_aliasing_error(one, r, t, 1.0, n) - closed) <
              1e-14 * std::max(1.0, std::abs(closed)) / den);
      }
    }
  }
  CHECK(circle_aliasing_error(one, 0.0, 0.3, 1.0, 16) == 0.0);
  CHECK(circle_error_mu1(0.0, 0.3, 1.0, 16) == 0.0);
}

TEST_CASE("aliasing error explains the naive PTR error") {
  const double a = 1.0;
  const int n = 32;
  const BoundaryCurve circle = BoundaryCurve::circle(a);
  const std::vector<double> mu = band_limited(n);
  const DensitySolution sol = DensitySolution::from_samples(
      circle, Problem::interior_dirichlet, mu, std::vector<double>(mu.size(), 0.0));
  const FourierCoeffs mu_hat = analyze(std::span<const double>(mu));
  for (double r : {0.5, 0.8, 0.95}) {
    for (double t : {0.05, 1.0, 3.3}) {
      const double naive = eval_dlp_naive(sol, Vec2(r * std::cos(t), r * std::sin(t)));
      const double exact = circle_spectral_eval(mu_hat, r, t, a);
      CHECK(std::abs(naive - exact - circle_aliasing_error(mu_hat, r, t, a, n)) < 1e-13);
    }
  }
}

TEST_CASE("boundary layer has width of order 1/N") {
  const int n = 128;
  const double a = 1.0;
  double inner = -INFINITY, outer = INFINITY;
  for (int k = 0; k < 512; ++k) {
    const double t = two_pi * k / 512;
    for (double r = 0; r <= a * (1 - 5.0 / n); r += 0.01)
      inner = std::max(inner, std::log10(std::abs(circle_error_mu1(r, t, a, n)) + 1e-300));
  }
  // At a node-aligned angle the error is largest; it is O(1) right at the wall.
  for (double r : {a * (1 - 1.0 / (4 * n)), a * (1 - 1.0 / (8 * n))})
    outer = std::min(outer, std::log10(std::abs(circle_error_mu1(r, 0.0, a, n))));
  CHECK(inner < -2);
  CHECK(outer > -1);
}

TEST_CASE("oracle argument checks") {
  FourierCoeffs one(16);
  one[0] = 1.0;
  CHECK_ERROR_KIND(circle_aliasing_error(one, 0.5, 0.0, 1.0, 7), ErrorKind::size_mismatch);
  CHECK_ERROR_KIND(circle_aliasing_error(one, 1.0, 0.0, 1.0, 16), ErrorKind::domain);
  CHECK_ERROR_KIND(circle_error_mu1(0.5, 0.0, 0.0, 16), ErrorKind::domain);
}
