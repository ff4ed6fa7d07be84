#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "layerpot/geometry.hpp"
#include "layerpot/spectral.hpp"

namespace layerpot {

enum class Problem { interior_dirichlet, exterior_neumann };

const char* to_string(Problem problem);

/// Boundary data as a function of the boundary frame (point, normal, ...).
using BoundaryFunction = std::function<double(const CurvePoint&)>;

/// Nystrom solution of a second-kind boundary integral equation on N PTR nodes.
/// Immutable once built; safe to share between evaluation threads.
class DensitySolution {
 public:
  /// Wraps given node samples without solving (for instance the unit density
  /// with its matching boundary data). Sizes must equal n.
  static DensitySolution from_samples(const BoundaryCurve& curve, Problem problem,
                                      std::vector<double> density, std::vector<double> data);

  const BoundaryCurve& curve() const { return *curve_; }
  Problem problem() const { return problem_; }
  int size() const { return static_cast<int>(density_.size()); }

  std::span<const double> density() const { return density_; }
  std::span<const double> boundary_data() const { return data_; }
  std::span<const CurvePoint> nodes() const { return nodes_; }

  /// Coefficients of density * |y'| (the weighted density used by the inner
  /// convolutions) and of |y'| alone.
  const FourierCoeffs& weighted_density_coeffs() const { return weighted_hat_; }
  const FourierCoeffs& speed_coeffs() const { return speed_hat_; }

  /// Trigonometric interpolants of the density and of the boundary data.
  double density_at(double t) const { return density_hat_.interpolate(t); }
  double data_at(double t) const { return data_hat_.interpolate(t); }

  /// Max-norm residual of the discrete system relative to max|data| (0 for
  /// from_samples) and the 1-norm condition estimate of the system matrix.
  double residual() const { return residual_; }
  double condition() const { return condition_; }

 private:
  friend DensitySolution solve_interior_dirichlet(const BoundaryCurve&, std::span<const double>);
  friend DensitySolution solve_exterior_neumann(const BoundaryCurve&, std::span<const double>);

  DensitySolution(const BoundaryCurve& curve, Problem problem, std::vector<double> density,
                  std::vector<double> data);

  std::shared_ptr<const BoundaryCurve> curve_;
  Problem problem_;
  std::vector<double> density_, data_;
  std::vector<CurvePoint> nodes_;
  FourierCoeffs weighted_hat_, speed_hat_, density_hat_, data_hat_;
  double residual_ = 0;
  double condition_ = 1;
};

/// Node geometry for the N-point rule.
std::vector<CurvePoint> sample_curve(const BoundaryCurve& curve, int n);

/// Nystrom matrix (-1/2 I + (1/N)[K(y_i, y_j)|y'_j|]) of the interior Dirichlet
/// equation; the diagonal kernel entries take the smooth limit -kappa_i/2.
Eigen::MatrixXd dirichlet_matrix(std::span<const CurvePoint> nodes);
/// Same for the exterior Neumann equation with kernel -n_i.(y_i - y_j)/|y_i - y_j|^2.
Eigen::MatrixXd neumann_matrix(std::span<const CurvePoint> nodes);

/// Solves for the double-layer density mu with boundary data f sampled at the
/// nodes. Throws solver when the condition estimate exceeds 1e12.
DensitySolution solve_interior_dirichlet(const BoundaryCurve& curve, std::span<const double> f);
DensitySolution solve_interior_dirichlet(const BoundaryCurve& curve, const BoundaryFunction& f,
                                         int n);

/// Solves for the single-layer density phi with Neumann data g. Throws input
/// when |PTR(g |y'|)| >= 1e-10 (discrete compatibility) and solver on
/// ill-conditioning.
DensitySolution solve_exterior_neumann(const BoundaryCurve& curve, std::span<const double> g);
DensitySolution solve_exterior_neumann(const BoundaryCurve& curve, const BoundaryFunction& g,
                                       int n);

}  // namespace layerpot
