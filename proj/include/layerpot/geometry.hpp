#pragma once

#include <array>
#include <functional>
#include <string>

#include <Eigen/Core>

namespace layerpot {

using Vec2 = Eigen::Vector2d;

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Reduce an angle to [0, 2pi).
double wrap_angle(double t);

enum class Side { interior, exterior, on_boundary };

const char* to_string(Side side);

/// Everything known about the curve at one parameter value.
struct CurvePoint {
  double t = 0;
  Vec2 point = Vec2::Zero();
  Vec2 d1 = Vec2::Zero();  // y'(t)
  Vec2 d2 = Vec2::Zero();  // y''(t)
  double speed = 0;        // |y'(t)|
  Vec2 tangent = Vec2::Zero();
  Vec2 normal = Vec2::Zero();  // outward
  double curvature = 0;        // signed, positive on convex arcs
};

enum class CurveKind { circle, star, generic };

/// Closed, analytic, 2pi-periodic boundary curve, oriented counterclockwise.
///
/// Immutable after construction. Clockwise parameterizations handed to
/// generic() are reversed (t -> -t) so the outward normal is
/// (y2', -y1')/|y'| and convex arcs carry positive curvature.
class BoundaryCurve {
 public:
  /// Returns {y, y', y''} at t.
  using Parameterization = std::function<std::array<Vec2, 3>(double)>;

  static BoundaryCurve circle(double radius);
  /// Polar star r(t) = c0 + c1 cos(k t).
  static BoundaryCurve star(double c0, double c1, int k);
  static BoundaryCurve generic(Parameterization param);

  /// Full frame at t (reduced mod 2pi). Throws invalid_curve when |y'| < 1e-14.
  CurvePoint eval(double t) const;
  Vec2 point(double t) const;

  CurveKind kind() const { return kind_; }
  /// Shape parameters: {a} for circles, {c0, c1, k} for stars, empty otherwise.
  const std::array<double, 3>& shape() const { return shape_; }
  bool reversed() const { return reversed_; }

  /// max |kappa(t)|, located on a 4096-point scan and refined by golden section.
  double kappa_max() const { return kappa_max_; }
  double signed_area() const { return area_; }
  /// Axis-aligned bounding box {xmin, ymin, xmax, ymax} from a dense sample.
  const std::array<double, 4>& bbox() const { return bbox_; }

  std::string describe() const;

 private:
  BoundaryCurve(CurveKind kind, std::array<double, 3> shape, Parameterization param);

  std::array<Vec2, 3> raw(double t) const;

  CurveKind kind_;
  std::array<double, 3> shape_{};
  Parameterization param_;
  bool reversed_ = false;
  double kappa_max_ = 0;
  double area_ = 0;
  std::array<double, 4> bbox_{};
};

/// An evaluation point together with its projection onto the boundary.
struct ClosePointFrame {
  Vec2 x = Vec2::Zero();
  double tstar = 0;
  Vec2 ystar = Vec2::Zero();
  Vec2 normal = Vec2::Zero();  // outward unit normal at ystar
  double curvature = 0;        // signed curvature at ystar
  double speed = 0;            // |y'(tstar)|
  double distance = 0;         // |x - ystar|
  double eps = 0;              // |curvature| * distance
  Side side = Side::on_boundary;
};

inline constexpr double on_boundary_tol = 1e-14;

/// Closest boundary point to x: best of `coarse_samples` uniform samples, then
/// Newton on (x - y(t)).y'(t) = 0, golden section on the bracketing coarse
/// interval if Newton does not converge.
ClosePointFrame closest_point(const BoundaryCurve& curve, const Vec2& x,
                              int coarse_samples = 512);

/// y(t*) -/+ (eps/|kappa(t*)|) n(t*) for interior/exterior. Throws flat_point
/// when |kappa(t*)| <= 1e-8.
Vec2 offset_point(const BoundaryCurve& curve, double tstar, double eps, Side side);

/// The frame of offset_point(curve, tstar, eps, side), built without a search.
ClosePointFrame frame_at(const BoundaryCurve& curve, double tstar, double eps, Side side);

/// Frame at distance `depth` along -/+ n(t*); works at flat points too.
ClosePointFrame frame_at_depth(const BoundaryCurve& curve, double tstar, double depth,
                               Side side);

inline constexpr double flat_curvature_tol = 1e-8;

}  // namespace layerpot
