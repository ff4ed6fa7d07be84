#include "layerpot/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include "layerpot/error.hpp"

namespace layerpot {

const char* to_string(Problem problem) {
  switch (problem) {
    case Problem::interior_dirichlet: return "interior-dirichlet";
    case Problem::exterior_neumann: return "exterior-neumann";
  }
  return "unknown";
}

std::vector<CurvePoint> sample_curve(const BoundaryCurve& curve, int n) {
  std::vector<CurvePoint> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (double t : ptr_nodes(n)) nodes.push_back(curve.eval(t));
  return nodes;
}

DensitySolution::DensitySolution(const BoundaryCurve& curve, Problem problem,
                                 std::vector<double> density, std::vector<double> data)
    : curve_(std::make_shared<const BoundaryCurve>(curve)),
      problem_(problem),
      density_(std::move(density)),
      data_(std::move(data)) {
  const int n = static_cast<int>(density_.size());
  check_sample_count(n);
  if (static_cast<int>(data_.size()) != n)
    throw Error(ErrorKind::size_mismatch, "density and boundary data sizes differ");
  for (double v : density_)
    if (!std::isfinite(v)) throw Error(ErrorKind::solver, "density is not finite");
  nodes_ = sample_curve(curve, n);

  std::vector<double> weighted(static_cast<std::size_t>(n)), speed(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < weighted.size(); ++j) {
    speed[j] = nodes_[j].speed;
    weighted[j] = density_[j] * speed[j];
  }
  weighted_hat_ = analyze(std::span<const double>(weighted));
  speed_hat_ = analyze(std::span<const double>(speed));
  density_hat_ = analyze(std::span<const double>(density_));
  data_hat_ = analyze(std::span<const double>(data_));
}

DensitySolution DensitySolution::from_samples(const BoundaryCurve& curve, Problem problem,
                                              std::vector<double> density,
                                              std::vector<double> data) {
  return DensitySolution(curve, problem, std::move(density), std::move(data));
}

Eigen::MatrixXd dirichlet_matrix(std::span<const CurvePoint> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CurvePoint& yi = nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const CurvePoint& yj = nodes[static_cast<std::size_t>(j)];
      double k;
      if (i == j) {
        k = -0.5 * yi.curvature;
      } else {
        const Vec2 r = yi.point - yj.point;
        k = yj.normal.dot(r) / r.squaredNorm();
      }
      a(i, j) = k * yj.speed / static_cast<double>(n);
    }
    a(i, i) -= 0.5;
  }
  return a;
}

Eigen::MatrixXd neumann_matrix(std::span<const CurvePoint> nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CurvePoint& yi = nodes[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const CurvePoint& yj = nodes[static_cast<std::size_t>(j)];
      double k;
      if (i == j) {
        k = -0.5 * yi.curvature;
      } else {
        const Vec2 r = yi.point - yj.point;
        k = -yi.normal.dot(r) / r.squaredNorm();
      }
      a(i, j) = k * yj.speed / static_cast<double>(n);
    }
    a(i, i) -= 0.5;
  }
  return a;
}

namespace {

struct LinearSolve {
  std::vector<double> x;
  double residual;
  double condition;
};

LinearSolve dense_solve(const Eigen::MatrixXd& a, std::span<const double> rhs) {
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12))
    throw Error(ErrorKind::solver, "Nystrom matrix is singular or ill-conditioned");
  const Eigen::VectorXd x = lu.solve(b);
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  LinearSolve out;
  out.residual = (a * x - b).cwiseAbs().maxCoeff() / scale;
  out.condition = 1.0 / rcond;
  out.x.assign(x.data(), x.data() + x.size());
  return out;
}

std::vector<double> sample_data(const BoundaryCurve& curve, const BoundaryFunction& f, int n) {
  check_sample_count(n);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const CurvePoint& cp : sample_curve(curve, n)) out.push_back(f(cp));
  return out;
}

}  // namespace

DensitySolution solve_interior_dirichlet(const BoundaryCurve& curve, std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  check_sample_count(n);
  for (double v : f)
    if (!std::isfinite(v)) throw Error(ErrorKind::input, "Dirichlet data is not finite");
  const auto nodes = sample_curve(curve, n);
  auto sol = dense_solve(dirichlet_matrix(nodes), f);
  DensitySolution out(curve, Problem::interior_dirichlet, std::move(sol.x),
                      std::vector<double>(f.begin(), f.end()));
  out.residual_ = sol.residual;
  out.condition_ = sol.condition;
  return out;
}

DensitySolution solve_interior_dirichlet(const BoundaryCurve& curve, const BoundaryFunction& f,
                                         int n) {
  const auto data = sample_data(curve, f, n);
  return solve_interior_dirichlet(curve, std::span<const double>(data));
}

DensitySolution solve_exterior_neumann(const BoundaryCurve& curve, std::span<const double> g) {
  const int n = static_cast<int>(g.size());
  check_sample_count(n);
  for (double v : g)
    if (!std::isfinite(v)) throw Error(ErrorKind::input, "Neumann data is not finite");
  const auto nodes = sample_curve(curve, n);
  double flux = 0;
  for (int j = 0; j < n; ++j)
    flux += g[static_cast<std::size_t>(j)] * nodes[static_cast<std::size_t>(j)].speed;
  flux /= n;
  if (!(std::abs(flux) < 1e-10))
    throw Error(ErrorKind::input, "Neumann data violates the zero-flux compatibility condition");
  auto sol = dense_solve(neumann_matrix(nodes), g);
  DensitySolution out(curve, Problem::exterior_neumann, std::move(sol.x),
                      std::vector<double>(g.begin(), g.end()));
  out.residual_ = sol.residual;
  out.condition_ = sol.condition;
  return out;
}

DensitySolution solve_exterior_neumann(const BoundaryCurve& curve, const BoundaryFunction& g,
                                       int n) {
  const auto data = sample_data(curve, g, n);
  return solve_exterior_neumann(curve, std::span<const double>(data));
}

}  // namespace layerpot
