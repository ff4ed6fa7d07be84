#include "layerpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "layerpot/error.hpp"

namespace layerpot {

namespace {

constexpr double golden = 0.6180339887498948482;

// Golden-section search for the minimizer of g on [lo, hi].
template <class F>
double golden_minimize(F&& g, double lo, double hi, double tol, int max_iter) {
  double a = lo, b = hi;
  double c = b - golden * (b - a);
  double d = a + golden * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - golden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + golden * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double wrap_angle(double t) {
  double r = std::fmod(t, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;
  return r;
}

const char* to_string(Side side) {
  switch (side) {
    case Side::interior: return "interior";
    case Side::exterior: return "exterior";
    case Side::on_boundary: return "on-boundary";
  }
  return "unknown";
}

BoundaryCurve BoundaryCurve::circle(double radius) {
  if (!(radius > 0) || !std::isfinite(radius))
    throw Error(ErrorKind::invalid_curve, "circle radius must be positive");
  auto param = [radius](double t) -> std::array<Vec2, 3> {
    const double c = std::cos(t), s = std::sin(t);
    return {Vec2(radius * c, radius * s), Vec2(-radius * s, radius * c),
            Vec2(-radius * c, -radius * s)};
  };
  return BoundaryCurve(CurveKind::circle, {radius, 0, 0}, param);
}

BoundaryCurve BoundaryCurve::star(double c0, double c1, int k) {
  if (!(c0 - std::abs(c1) > 0) || !std::isfinite(c0) || !std::isfinite(c1))
    throw Error(ErrorKind::invalid_curve, "star curve needs c0 > |c1|");
  auto param = [c0, c1, k](double t) -> std::array<Vec2, 3> {
    const double ck = std::cos(k * t), sk = std::sin(k * t);
    const double r = c0 + c1 * ck;
    const double dr = -c1 * k * sk;
    const double ddr = -c1 * k * k * ck;
    const double c = std::cos(t), s = std::sin(t);
    const Vec2 radial(c, s), angular(-s, c);
    return {r * radial, dr * radial + r * angular,
            (ddr - r) * radial + 2.0 * dr * angular};
  };
  return BoundaryCurve(CurveKind::star, {c0, c1, static_cast<double>(k)}, param);
}

BoundaryCurve BoundaryCurve::generic(Parameterization param) {
  if (!param) throw Error(ErrorKind::invalid_curve, "empty parameterization");
  return BoundaryCurve(CurveKind::generic, {0, 0, 0}, std::move(param));
}

BoundaryCurve::BoundaryCurve(CurveKind kind, std::array<double, 3> shape,
                             Parameterization param)
    : kind_(kind), shape_(shape), param_(std::move(param)) {
  const auto p0 = param_(0.0);
  const auto p1 = param_(two_pi);
  if ((p0[0] - p1[0]).norm() > 1e-12 * (1.0 + p0[0].norm()))
    throw Error(ErrorKind::invalid_curve, "parameterization is not 2pi-periodic");

  constexpr int samples = 1024;
  double area = 0;
  for (int j = 0; j < samples; ++j) {
    const auto p = param_(two_pi * j / samples);
    if (!(p[1].norm() >= 1e-14))
      throw Error(ErrorKind::invalid_curve, "degenerate speed");
    area += 0.5 * (p[0].x() * p[1].y() - p[0].y() * p[1].x());
  }
  area *= two_pi / samples;
  if (area < 0) {
    reversed_ = true;
    area = -area;
  }
  area_ = area;

  constexpr int scan = 4096;
  const double h = two_pi / scan;
  int best = 0;
  double best_val = -1;
  bbox_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
           std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (int j = 0; j < scan; ++j) {
    const auto cp = eval(j * h);
    const double k = std::abs(cp.curvature);
    if (k > best_val) {
      best_val = k;
      best = j;
    }
    bbox_[0] = std::min(bbox_[0], cp.point.x());
    bbox_[1] = std::min(bbox_[1], cp.point.y());
    bbox_[2] = std::max(bbox_[2], cp.point.x());
    bbox_[3] = std::max(bbox_[3], cp.point.y());
  }
  const double tb = golden_minimize(
      [this](double t) { return -std::abs(eval(t).curvature); }, (best - 1) * h,
      (best + 1) * h, 1e-12, 200);
  kappa_max_ = std::max(best_val, std::abs(eval(tb).curvature));
}

std::array<Vec2, 3> BoundaryCurve::raw(double t) const {
  if (!reversed_) return param_(t);
  auto p = param_(-t);
  p[1] = -p[1];
  return p;
}

CurvePoint BoundaryCurve::eval(double t) const {
  CurvePoint cp;
  cp.t = wrap_angle(t);
  const auto p = raw(cp.t);
  cp.point = p[0];
  cp.d1 = p[1];
  cp.d2 = p[2];
  cp.speed = cp.d1.norm();
  if (!(cp.speed >= 1e-14)) throw Error(ErrorKind::invalid_curve, "degenerate speed");
  cp.tangent = cp.d1 / cp.speed;
  cp.normal = Vec2(cp.d1.y(), -cp.d1.x()) / cp.speed;
  cp.curvature = (cp.d1.x() * cp.d2.y() - cp.d2.x() * cp.d1.y()) /
                 (cp.speed * cp.speed * cp.speed);
  return cp;
}

Vec2 BoundaryCurve::point(double t) const { return raw(wrap_angle(t))[0]; }

std::string BoundaryCurve::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case CurveKind::circle: os << "circle(a=" << shape_[0] << ")"; break;
    case CurveKind::star:
      os << "star(c0=" << shape_[0] << ", c1=" << shape_[1] << ", k=" << shape_[2] << ")";
      break;
    case CurveKind::generic: os << "generic"; break;
  }
  return os.str();
}

namespace {

ClosePointFrame make_frame(const BoundaryCurve& curve, const Vec2& x, double t) {
  const CurvePoint cp = curve.eval(t);
  ClosePointFrame f;
  f.x = x;
  f.tstar = cp.t;
  f.ystar = cp.point;
  f.normal = cp.normal;
  f.curvature = cp.curvature;
  f.speed = cp.speed;
  f.distance = (x - cp.point).norm();
  f.eps = std::abs(cp.curvature) * f.distance;
  if (f.distance < on_boundary_tol)
    f.side = Side::on_boundary;
  else
    f.side = (x - cp.point).dot(cp.normal) < 0 ? Side::interior : Side::exterior;
  return f;
}

}  // namespace

ClosePointFrame closest_point(const BoundaryCurve& curve, const Vec2& x, int coarse_samples) {
  const int m = std::max(coarse_samples, 16);
  const double h = two_pi / m;
  int best = 0;
  double best_d2 = std::numeric_limits<double>::max();
  for (int i = 0; i < m; ++i) {
    const double d2 = (x - curve.point(i * h)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  const double lo = (best - 1) * h, hi = (best + 1) * h;
  const double scale = 1.0 + x.norm();

  // Newton on F(t) = (x - y(t)).y'(t); F' = -|y'|^2 + (x - y).y''.
  double t = best * h;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const CurvePoint cp = curve.eval(t);
    const Vec2 r = x - cp.point;
    const double F = r.dot(cp.d1);
    if (std::abs(F) <= 1e-15 * scale * cp.speed) {
      converged = true;
      break;
    }
    const double dF = -cp.d1.squaredNorm() + r.dot(cp.d2);
    if (!(dF < 0)) break;  // not a local minimum of the distance
    const double step = -F / dF;
    double tn = t + step;
    if (tn < lo || tn > hi) break;
    t = tn;
    if (std::abs(step) < 1e-13) {
      converged = true;
      break;
    }
  }
  if (converged) return make_frame(curve, x, t);

  auto dist2 = [&](double s) { return (x - curve.point(s)).squaredNorm(); };
  t = golden_minimize(dist2, lo, hi, 1e-13, 300);
  const double margin = 1e-9;
  if (t - lo < margin || hi - t < margin)
    throw Error(ErrorKind::projection_failure,
                "no interior minimizer in the bracketing coarse interval");
  return make_frame(curve, x, t);
}

Vec2 offset_point(const BoundaryCurve& curve, double tstar, double eps, Side side) {
  if (side == Side::on_boundary)
    throw Error(ErrorKind::input, "offset_point needs an interior or exterior side");
  if (!(eps >= 0)) throw Error(ErrorKind::input, "eps must be nonnegative");
  const CurvePoint cp = curve.eval(tstar);
  const double k = std::abs(cp.curvature);
  if (!(k > flat_curvature_tol))
    throw Error(ErrorKind::flat_point, "|kappa| <= 1e-8 at t*");
  const double sign = side == Side::interior ? -1.0 : 1.0;
  return cp.point + sign * (eps / k) * cp.normal;
}

ClosePointFrame frame_at(const BoundaryCurve& curve, double tstar, double eps, Side side) {
  const CurvePoint cp = curve.eval(tstar);
  const double k = std::abs(cp.curvature);
  if (!(k > flat_curvature_tol))
    throw Error(ErrorKind::flat_point, "|kappa| <= 1e-8 at t*");
  return frame_at_depth(curve, tstar, eps / k, side);
}

ClosePointFrame frame_at_depth(const BoundaryCurve& curve, double tstar, double depth,
                               Side side) {
  if (side == Side::on_boundary)
    throw Error(ErrorKind::input, "frame_at_depth needs an interior or exterior side");
  const CurvePoint cp = curve.eval(tstar);
  const double sign = side == Side::interior ? -1.0 : 1.0;
  ClosePointFrame f;
  f.x = cp.point + sign * depth * cp.normal;
  f.tstar = cp.t;
  f.ystar = cp.point;
  f.normal = cp.normal;
  f.curvature = cp.curvature;
  f.speed = cp.speed;
  // Distance from the rounded point, so the frame agrees with x itself.
  f.distance = (f.x - f.ystar).norm();
  f.eps = std::abs(cp.curvature) * f.distance;
  f.side = f.distance < on_boundary_tol ? Side::on_boundary : side;
  return f;
}

}  // namespace layerpot
