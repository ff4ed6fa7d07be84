#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "layerpot/geometry.hpp"
#include "layerpot/kernels.hpp"
#include "layerpot/nystrom.hpp"

namespace layerpot {

enum class Method { naive, asymptotic, subtraction_naive, subtraction_asymptotic, automatic };

const char* to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

inline constexpr double default_threshold = 1e-8;

struct EvalRequest {
  Vec2 x = Vec2::Zero();
  Method method = Method::automatic;
  double threshold = default_threshold;
};

/// PTR of the double-layer potential, (1/N) sum_j K(x, y_j) mu_j |y'_j|.
double eval_dlp_naive(const DensitySolution& sol, const Vec2& x);

/// Asymptotic PTR for an interior point:
///   (1/N) sum_j [Kres_j + kappa*/2] mu_j |y'_j| + f(y*) + mu(t*)/2
///     + sum_n K_in[-n] (mu |y'|)^[n] e^{i n t*}.
/// mu(t*) and f(y(t*)) come from trigonometric interpolation.
double eval_dlp_asymptotic(const DensitySolution& sol, const ClosePointFrame& frame);

/// Double-layer evaluation of mu - mu(t*) plus the identity term -mu(t*).
/// With asymptotic = false this is plain PTR of the subtracted integrand;
/// with asymptotic = true the inner convolution acts on (mu - mu(t*))|y'| and
/// the mu(t*)/2 term drops out.
double eval_dlp_subtraction(const DensitySolution& sol, const ClosePointFrame& frame,
                            bool asymptotic);

/// PTR of the single-layer potential.
double eval_slp_naive(const DensitySolution& sol, const Vec2& x);

/// (1/N) sum_j Sres_j phi_j |y'_j| + sum_n S_in[-n] (phi |y'|)^[n] e^{i n t*}.
double eval_slp_asymptotic(const DensitySolution& sol, const ClosePointFrame& frame);

struct LayerCheck {
  bool in_layer = false;
  /// |PTR of (1/2pi) int n_y.(x - y)/|x - y|^2 dsigma  -  (-1 inside, 0 outside)|.
  double deviation = 0;
  ClosePointFrame frame;
};

/// Flags x as inside the numerical boundary layer when the PTR_N value of the
/// double-layer identity deviates from its exact value by strictly more than tau.
/// The side comes from the closest-point normal test.
LayerCheck in_boundary_layer(const BoundaryCurve& curve, const Vec2& x, int n, double tau);
LayerCheck in_boundary_layer(std::span<const CurvePoint> nodes, const BoundaryCurve& curve,
                             const Vec2& x, double tau);

/// Naive PTR away from the boundary, the asymptotic method inside the layer;
/// flat-point projections fall back to naive PTR.
double evaluate_auto(const DensitySolution& sol, const Vec2& x, double tau = default_threshold);

/// Same dispatch, with the frame already known (skips the projection).
double evaluate_auto(const DensitySolution& sol, const ClosePointFrame& frame,
                     double tau = default_threshold);

/// Evaluates with any method; `frame` is computed by closest_point when the
/// method needs one and none is given.
double evaluate(const DensitySolution& sol, const EvalRequest& request,
                const std::optional<ClosePointFrame>& frame = std::nullopt);

/// Coarse-scan sample count used for projections against an N-point rule.
inline int projection_samples(int n) { return n * 4 > 512 ? n * 4 : 512; }

}  // namespace layerpot
