#include "layerpot/closeeval.hpp"

#include <cmath>

#include "layerpot/error.hpp"

namespace layerpot {

const char* to_string(Method method) {
  switch (method) {
    case Method::naive: return "naive";
    case Method::asymptotic: return "asymptotic";
    case Method::subtraction_naive: return "subtraction-naive";
    case Method::subtraction_asymptotic: return "subtraction-asymptotic";
    case Method::automatic: return "auto";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::naive, Method::asymptotic, Method::subtraction_naive,
                   Method::subtraction_asymptotic, Method::automatic})
    if (name == to_string(m)) return m;
  return std::nullopt;
}

namespace {

void require_problem(const DensitySolution& sol, Problem problem, const char* what) {
  if (sol.problem() != problem)
    throw Error(ErrorKind::input, std::string(what) + " needs a " + to_string(problem) +
                                      " density");
}

void require_side(const ClosePointFrame& frame, Side side) {
  if (frame.side == Side::on_boundary)
    throw Error(ErrorKind::singular_evaluation, "evaluation point lies on the boundary");
  if (frame.side != side)
    throw Error(ErrorKind::input, std::string("evaluation point is not ") + to_string(side));
}

void require_off_nodes(const DensitySolution& sol, const Vec2& x) {
  for (const CurvePoint& y : sol.nodes())
    if ((x - y.point).norm() < on_boundary_tol)
      throw Error(ErrorKind::singular_evaluation, "evaluation point coincides with a node");
}

// K - K_out - K_in, i.e. the residual kernel plus kappa*/2.
double shifted_dlp_residual(const BoundaryCurve& curve, const CurvePoint& y,
                            const ClosePointFrame& frame, const InnerKernelCoeffs& c) {
  const double k = dlp_kernel(frame.x, y.point, y.normal);
  const double kout = dlp_outer(curve, frame, y);
  return k - kout - k_in(y.t - frame.tstar, c);
}

double identity_ptr(std::span<const CurvePoint> nodes, const Vec2& x) {
  double s = 0;
  for (const CurvePoint& y : nodes) s += dlp_kernel(x, y.point, y.normal) * y.speed;
  return s / static_cast<double>(nodes.size());
}

}  // namespace

double eval_dlp_naive(const DensitySolution& sol, const Vec2& x) {
  require_off_nodes(sol, x);
  const auto nodes = sol.nodes();
  const auto mu = sol.density();
  double s = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += dlp_kernel(x, nodes[j].point, nodes[j].normal) * mu[j] * nodes[j].speed;
  return s / static_cast<double>(nodes.size());
}

double eval_dlp_asymptotic(const DensitySolution& sol, const ClosePointFrame& frame) {
  require_problem(sol, Problem::interior_dirichlet, "double-layer evaluation");
  require_side(frame, Side::interior);
  const InnerKernelCoeffs c =
      inner_coeffs(frame.curvature, frame.speed, frame.eps, Side::interior);
  const auto nodes = sol.nodes();
  const auto mu = sol.density();
  const int n = sol.size();

  double s = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += shifted_dlp_residual(sol.curve(), nodes[j], frame, c) * mu[j] * nodes[j].speed;
  s /= n;

  const double outer = sol.data_at(frame.tstar) + 0.5 * sol.density_at(frame.tstar);
  const double inner = convolve_eval(k_in_fourier(c, n), sol.weighted_density_coeffs(),
                                     frame.tstar);
  return s + outer + inner;
}

double eval_dlp_subtraction(const DensitySolution& sol, const ClosePointFrame& frame,
                            bool asymptotic) {
  require_problem(sol, Problem::interior_dirichlet, "double-layer evaluation");
  require_side(frame, Side::interior);
  const auto nodes = sol.nodes();
  const auto mu = sol.density();
  const int n = sol.size();
  const double mu_star = sol.density_at(frame.tstar);

  if (!asymptotic) {
    require_off_nodes(sol, frame.x);
    double s = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      s += dlp_kernel(frame.x, nodes[j].point, nodes[j].normal) * (mu[j] - mu_star) *
           nodes[j].speed;
    return s / n - mu_star;
  }

  const InnerKernelCoeffs c =
      inner_coeffs(frame.curvature, frame.speed, frame.eps, Side::interior);
  double s = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += shifted_dlp_residual(sol.curve(), nodes[j], frame, c) * (mu[j] - mu_star) * nodes[j].speed;
  s /= n;

  // ((mu - mu*) |y'|)^ = (mu |y'|)^ - mu* |y'|^ by linearity.
  FourierCoeffs shifted = sol.weighted_density_coeffs();
  const FourierCoeffs& speed_hat = sol.speed_coeffs();
  for (int k = shifted.min_index(); k <= shifted.max_index(); ++k)
    shifted[k] -= mu_star * speed_hat[k];
  const double inner = convolve_eval(k_in_fourier(c, n), shifted, frame.tstar);
  return s + sol.data_at(frame.tstar) + inner;
}

double eval_slp_naive(const DensitySolution& sol, const Vec2& x) {
  require_off_nodes(sol, x);
  const auto nodes = sol.nodes();
  const auto phi = sol.density();
  double s = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += slp_kernel(x, nodes[j].point) * phi[j] * nodes[j].speed;
  return s / static_cast<double>(nodes.size());
}

double eval_slp_asymptotic(const DensitySolution& sol, const ClosePointFrame& frame) {
  require_problem(sol, Problem::exterior_neumann, "single-layer evaluation");
  require_side(frame, Side::exterior);
  const InnerKernelCoeffs c =
      inner_coeffs(frame.curvature, frame.speed, frame.eps, Side::exterior);
  const auto nodes = sol.nodes();
  const auto phi = sol.density();
  const int n = sol.size();

  double s = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double sres = slp_kernel(frame.x, nodes[j].point) - s_in(nodes[j].t - frame.tstar, c);
    s += sres * phi[j] * nodes[j].speed;
  }
  s /= n;
  return s + convolve_eval(s_in_fourier(c, n), sol.weighted_density_coeffs(), frame.tstar);
}

LayerCheck in_boundary_layer(std::span<const CurvePoint> nodes, const BoundaryCurve& curve,
                             const Vec2& x, double tau) {
  if (!(tau > 0)) throw Error(ErrorKind::input, "threshold must be positive");
  LayerCheck out;
  out.frame = closest_point(curve, x, projection_samples(static_cast<int>(nodes.size())));
  if (out.frame.side == Side::on_boundary)
    throw Error(ErrorKind::singular_evaluation, "evaluation point lies on the boundary");
  const double expected = out.frame.side == Side::interior ? -1.0 : 0.0;
  out.deviation = std::abs(identity_ptr(nodes, x) - expected);
  out.in_layer = out.deviation > tau;
  return out;
}

LayerCheck in_boundary_layer(const BoundaryCurve& curve, const Vec2& x, int n, double tau) {
  check_sample_count(n);
  const auto nodes = sample_curve(curve, n);
  return in_boundary_layer(nodes, curve, x, tau);
}

namespace {

double dispatch(const DensitySolution& sol, const ClosePointFrame& frame, bool in_layer) {
  const bool dirichlet = sol.problem() == Problem::interior_dirichlet;
  require_side(frame, dirichlet ? Side::interior : Side::exterior);
  if (!in_layer || !(std::abs(frame.curvature) > flat_curvature_tol))
    return dirichlet ? eval_dlp_naive(sol, frame.x) : eval_slp_naive(sol, frame.x);
  return dirichlet ? eval_dlp_asymptotic(sol, frame) : eval_slp_asymptotic(sol, frame);
}

}  // namespace

double evaluate_auto(const DensitySolution& sol, const Vec2& x, double tau) {
  const LayerCheck check = in_boundary_layer(sol.nodes(), sol.curve(), x, tau);
  return dispatch(sol, check.frame, check.in_layer);
}

double evaluate_auto(const DensitySolution& sol, const ClosePointFrame& frame, double tau) {
  if (!(tau > 0)) throw Error(ErrorKind::input, "threshold must be positive");
  if (frame.side == Side::on_boundary)
    throw Error(ErrorKind::singular_evaluation, "evaluation point lies on the boundary");
  const double expected = frame.side == Side::interior ? -1.0 : 0.0;
  const double deviation = std::abs(identity_ptr(sol.nodes(), frame.x) - expected);
  return dispatch(sol, frame, deviation > tau);
}

double evaluate(const DensitySolution& sol, const EvalRequest& request,
                const std::optional<ClosePointFrame>& frame) {
  const bool dirichlet = sol.problem() == Problem::interior_dirichlet;
  auto get_frame = [&]() {
    return frame ? *frame
                 : closest_point(sol.curve(), request.x, projection_samples(sol.size()));
  };
  switch (request.method) {
    case Method::naive:
      return dirichlet ? eval_dlp_naive(sol, request.x) : eval_slp_naive(sol, request.x);
    case Method::asymptotic:
      return dirichlet ? eval_dlp_asymptotic(sol, get_frame())
                       : eval_slp_asymptotic(sol, get_frame());
    case Method::subtraction_naive:
    case Method::subtraction_asymptotic:
      if (!dirichlet)
        throw Error(ErrorKind::input, "subtraction variants apply to the double layer only");
      return eval_dlp_subtraction(sol, get_frame(),
                                  request.method == Method::subtraction_asymptotic);
    case Method::automatic:
      return frame ? evaluate_auto(sol, *frame, request.threshold)
                   : evaluate_auto(sol, request.x, request.threshold);
  }
  throw Error(ErrorKind::input, "unknown method");
}

}  // namespace layerpot
