#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layerpot/closeeval.hpp"
#include "layerpot/geometry.hpp"
#include "layerpot/nystrom.hpp"

namespace layerpot {

struct CurveSpec {
  CurveKind kind = CurveKind::star;
  double radius = 1.0;  // circle
  double c0 = 1.55, c1 = 0.4;
  int k = 5;

  BoundaryCurve build() const;
};

enum class DataKind { log_source, dipole_x, fourier };

/// Boundary data and the matching exact solution.
///   log_source: u = -(1/2pi) log|x - x0|, x0 outside the domain.
///   dipole_x:   v = first component of (x - x0)/|x - x0|^2, x0 inside the curve.
///   fourier:    data sum_n cos[n] cos(nt) + sin[n] sin(nt) on a circle centred at 0.
struct DataSpec {
  DataKind kind = DataKind::log_source;
  Vec2 x0 = Vec2(1.85, 1.65);
  std::vector<double> cos_coeffs, sin_coeffs;
};

enum class GridKind { body_fitted, cartesian, ray };

struct GridSpec {
  GridKind kind = GridKind::body_fitted;
  int n_normal = 200;
  double h = 0.01;
  std::optional<std::array<double, 4>> bbox;  // xmin, ymin, xmax, ymax
  double tstar = 0;
  std::vector<double> eps;
};

struct ExperimentConfig {
  CurveSpec curve;
  Problem problem = Problem::interior_dirichlet;
  DataSpec data;
  int n = 128;
  std::vector<Method> methods{Method::naive, Method::asymptotic};
  GridSpec grid;
  double threshold = default_threshold;
  std::string output;
};

/// Parses the JSON experiment description; throws ConfigError on any
/// missing, mistyped or out-of-range field.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Harmonic test function in the evaluation domain and its boundary data
/// (Dirichlet values or outward normal derivative).
struct TestSolution {
  std::function<double(const Vec2&)> value;
  BoundaryFunction data;
};

/// Throws ConfigError when the source location or curve does not suit the data kind.
TestSolution make_test_solution(const DataSpec& data, Problem problem, const BoundaryCurve& curve);

struct BodyFittedGrid {
  std::vector<ClosePointFrame> points;  // ray-major: node j, then depth k = 1..n_normal
  double delta0 = 0;
};

/// n_normal points along each node normal at depths k delta0, k = 1..n_normal,
/// delta0 = (1/kappa_max)/n_normal.
BodyFittedGrid body_fitted_grid(const BoundaryCurve& curve, int n, int n_normal, Side side);

/// Lattice points (i h, j h) strictly inside (interior) or outside (exterior)
/// the curve and farther than 1e-12 from it. The default box is the curve's
/// bounding box, inflated by 1/kappa_max in exterior mode.
std::vector<ClosePointFrame> cartesian_grid(
    const BoundaryCurve& curve, double h, Side side,
    const std::optional<std::array<double, 4>>& bbox = std::nullopt,
    int coarse_samples = 512);

std::vector<ClosePointFrame> ray_grid(const BoundaryCurve& curve, double tstar,
                                      std::span<const double> eps, Side side);

struct ErrorRecord {
  Vec2 x = Vec2::Zero();
  double tstar = 0;
  double eps = 0;
  Method method = Method::naive;
  double value = 0;
  double exact = 0;
  double abs_error = 0;
};

struct MethodSummary {
  Method method = Method::naive;
  std::size_t count = 0;
  double linf = 0;
  double l2 = 0;  // root mean square over the grid
};

struct RaySlice {
  double tstar = 0;
  Method method = Method::naive;
  double linf = 0;
};

struct ErrorField {
  std::vector<ErrorRecord> records;  // point-major, methods in config order
  std::vector<MethodSummary> summary;
  std::vector<RaySlice> rays;  // body-fitted and ray grids only
  double delta0 = 0;
  double residual = 0;
  double condition = 0;

  const MethodSummary& summary_for(Method method) const;
};

/// Solves once, evaluates every grid point with every method (in parallel),
/// and compares against the exact solution. Output order depends only on cfg.
ErrorField run_experiment(const ExperimentConfig& cfg);

/// Evaluates `methods` at the frames for an existing density.
ErrorField evaluate_field(const DensitySolution& sol, std::span<const ClosePointFrame> frames,
                          std::span<const Method> methods, double threshold,
                          const std::function<double(const Vec2&)>& exact);

/// CSV with header x,y,tstar,eps,method,value,exact,abs_error; %.17g floats.
void write_csv(std::ostream& os, std::span<const ErrorRecord> records);
/// Sidecar summary as JSON.
void write_meta(std::ostream& os, const ExperimentConfig& cfg, const ErrorField& field);
/// Writes <path> and <path>.meta.json.
void write_outputs(const std::string& path, const ExperimentConfig& cfg, const ErrorField& field);

/// Least-squares slope of log(error) against log(eps). Throws fit for fewer
/// than three points, mismatched sizes or nonpositive values.
struct PowerFit {
  double p = 0;
  double c = 0;
};
PowerFit fit_slope(std::span<const double> eps, std::span<const double> errors);

/// max over theta of |K - K_out - K_in - kappa*/2| for the interior point at
/// scaled distance eps from y(t*), sampled on a uniform grid plus points
/// clustered geometrically toward theta = 0.
double matched_kernel_error(const BoundaryCurve& curve, double tstar, double eps);

}  // namespace layerpot
