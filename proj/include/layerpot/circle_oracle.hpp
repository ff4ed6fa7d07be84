#pragma once

#include <span>
#include <vector>

#include "layerpot/spectral.hpp"

namespace layerpot {

/// Exact double-layer density on the circle of radius a for Dirichlet data
/// sampled at N equispaced nodes: mu = mean(f) - 2 f.
std::vector<double> circle_density(std::span<const double> f);

/// Spectral evaluation of the double-layer potential in the disk at polar
/// point (r, t*) from the density coefficients, using K[0] = -1 and
/// K[n] = -(r/a)^|n| / 2. Throws domain unless 0 <= r < a.
double circle_spectral_eval(const FourierCoeffs& mu_hat, double r, double tstar, double a);

/// PTR_N aliasing error E = sum over l != 0 of p[lN] for a band-limited real
/// density, with p[k] the Fourier coefficients of K(t - t*) mu(t). The sum over
/// l stops once (r/a)^(lN - M/2) drops below 1e-17, M = mu_hat.size().
double circle_aliasing_error(const FourierCoeffs& mu_hat, double r, double tstar, double a,
                             int n);

/// Closed form of the aliasing error for mu = 1:
///   (q^2N - q^N cos N t*) / (1 + q^2N - 2 q^N cos N t*),  q = r/a.
double circle_error_mu1(double r, double tstar, double a, int n);

}  // namespace layerpot
