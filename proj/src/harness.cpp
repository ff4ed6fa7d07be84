#include "layerpot/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "layerpot/error.hpp"
#include "layerpot/kernels.hpp"

namespace layerpot {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": not finite");
  return d;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Vec2 get_point(const json& v, const std::string& where) {
  const auto xs = get_numbers(v, where);
  if (xs.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {xs[0], xs[1]};
}

CurveSpec parse_curve(const json& j) {
  const std::string kind = get_string(require(j, "kind", "curve"), "curve.kind");
  CurveSpec c;
  if (kind == "circle") {
    reject_unknown(j, {"kind", "a"}, "curve");
    c.kind = CurveKind::circle;
    if (j.contains("a")) c.radius = get_number(j["a"], "curve.a");
    if (!(c.radius > 0)) throw ConfigError("curve.a must be positive");
  } else if (kind == "star") {
    reject_unknown(j, {"kind", "c0", "c1", "k"}, "curve");
    c.kind = CurveKind::star;
    c.c0 = get_number(require(j, "c0", "curve"), "curve.c0");
    c.c1 = get_number(require(j, "c1", "curve"), "curve.c1");
    c.k = get_int(require(j, "k", "curve"), "curve.k");
    if (!(c.c0 > std::abs(c.c1))) throw ConfigError("curve: star needs c0 > |c1|");
    if (c.k < 1) throw ConfigError("curve.k must be at least 1");
  } else {
    throw ConfigError("curve.kind must be 'circle' or 'star'");
  }
  return c;
}

DataSpec parse_data(const json& j) {
  const std::string kind = get_string(require(j, "kind", "data"), "data.kind");
  DataSpec d;
  if (kind == "log-source" || kind == "dipole-x") {
    reject_unknown(j, {"kind", "x0"}, "data");
    d.kind = kind == "log-source" ? DataKind::log_source : DataKind::dipole_x;
    d.x0 = get_point(require(j, "x0", "data"), "data.x0");
  } else if (kind == "fourier") {
    reject_unknown(j, {"kind", "cos", "sin"}, "data");
    d.kind = DataKind::fourier;
    if (j.contains("cos")) d.cos_coeffs = get_numbers(j["cos"], "data.cos");
    if (j.contains("sin")) d.sin_coeffs = get_numbers(j["sin"], "data.sin");
  } else {
    throw ConfigError("data.kind must be 'log-source', 'dipole-x' or 'fourier'");
  }
  return d;
}

GridSpec parse_grid(const json& j) {
  const std::string kind = get_string(require(j, "kind", "grid"), "grid.kind");
  GridSpec g;
  if (kind == "body-fitted") {
    reject_unknown(j, {"kind", "n_normal"}, "grid");
    g.kind = GridKind::body_fitted;
    g.n_normal = get_int(require(j, "n_normal", "grid"), "grid.n_normal");
    if (g.n_normal < 2) throw ConfigError("grid.n_normal must be at least 2");
  } else if (kind == "cartesian") {
    reject_unknown(j, {"kind", "h", "bbox"}, "grid");
    g.kind = GridKind::cartesian;
    g.h = get_number(require(j, "h", "grid"), "grid.h");
    if (!(g.h > 0)) throw ConfigError("grid.h must be positive");
    if (j.contains("bbox")) {
      const auto b = get_numbers(j["bbox"], "grid.bbox");
      if (b.size() != 4 || !(b[0] < b[2]) || !(b[1] < b[3]))
        throw ConfigError("grid.bbox must be [xmin, ymin, xmax, ymax]");
      g.bbox = std::array<double, 4>{b[0], b[1], b[2], b[3]};
    }
  } else if (kind == "ray") {
    reject_unknown(j, {"kind", "tstar", "eps"}, "grid");
    g.kind = GridKind::ray;
    g.tstar = get_number(require(j, "tstar", "grid"), "grid.tstar");
    g.eps = get_numbers(require(j, "eps", "grid"), "grid.eps");
    if (g.eps.empty()) throw ConfigError("grid.eps must not be empty");
    for (double e : g.eps)
      if (!(e > 0)) throw ConfigError("grid.eps values must be positive");
  } else {
    throw ConfigError("grid.kind must be 'body-fitted', 'cartesian' or 'ray'");
  }
  return g;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"curve", "problem", "data", "N", "methods", "grid", "threshold", "output"},
                 "config");

  ExperimentConfig cfg;
  cfg.curve = parse_curve(require(j, "curve", "config"));
  const std::string problem = get_string(require(j, "problem", "config"), "problem");
  if (problem == "interior-dirichlet")
    cfg.problem = Problem::interior_dirichlet;
  else if (problem == "exterior-neumann")
    cfg.problem = Problem::exterior_neumann;
  else
    throw ConfigError("problem must be 'interior-dirichlet' or 'exterior-neumann'");
  cfg.data = parse_data(require(j, "data", "config"));
  cfg.grid = parse_grid(require(j, "grid", "config"));

  if (j.contains("N")) cfg.n = get_int(j["N"], "N");
  if (cfg.n < 8 || cfg.n % 2 != 0) throw ConfigError("N must be even and at least 8");

  if (j.contains("methods")) {
    const json& m = j["methods"];
    if (!m.is_array() || m.empty()) throw ConfigError("methods must be a non-empty array");
    cfg.methods.clear();
    for (const json& v : m) {
      const std::string name = get_string(v, "methods");
      const auto parsed = parse_method(name);
      if (!parsed) throw ConfigError("unknown method '" + name + "'");
      cfg.methods.push_back(*parsed);
    }
  }
  if (cfg.problem == Problem::exterior_neumann)
    for (Method m : cfg.methods)
      if (m == Method::subtraction_naive || m == Method::subtraction_asymptotic)
        throw ConfigError("subtraction methods apply to interior-dirichlet only");

  if (j.contains("threshold")) cfg.threshold = get_number(j["threshold"], "threshold");
  if (!(cfg.threshold > 0)) throw ConfigError("threshold must be positive");
  if (j.contains("output")) cfg.output = get_string(j["output"], "output");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

BoundaryCurve CurveSpec::build() const {
  switch (kind) {
    case CurveKind::circle: return BoundaryCurve::circle(radius);
    case CurveKind::star: return BoundaryCurve::star(c0, c1, k);
    case CurveKind::generic: break;
  }
  throw ConfigError("generic curves cannot be built from a config");
}

// ---------------------------------------------------------------------------
// Test solutions

namespace {

double fourier_sum(const DataSpec& d, double t, const std::function<double(int)>& weight) {
  double s = 0;
  for (std::size_t n = 0; n < d.cos_coeffs.size(); ++n)
    s += weight(static_cast<int>(n)) * d.cos_coeffs[n] * std::cos(static_cast<double>(n) * t);
  for (std::size_t n = 0; n < d.sin_coeffs.size(); ++n)
    s += weight(static_cast<int>(n)) * d.sin_coeffs[n] * std::sin(static_cast<double>(n) * t);
  return s;
}

}  // namespace

TestSolution make_test_solution(const DataSpec& data, Problem problem,
                                const BoundaryCurve& curve) {
  const bool interior = problem == Problem::interior_dirichlet;
  TestSolution sol;

  if (data.kind == DataKind::fourier) {
    if (curve.kind() != CurveKind::circle)
      throw ConfigError("fourier data has a closed-form solution only on circles");
    const double a = curve.shape()[0];
    if (interior) {
      sol.value = [data, a](const Vec2& x) {
        const double q = x.norm() / a;
        return fourier_sum(data, std::atan2(x.y(), x.x()),
                           [q](int n) { return std::pow(q, n); });
      };
    } else {
      if (!data.cos_coeffs.empty() && data.cos_coeffs[0] != 0)
        throw ConfigError("exterior Neumann data must have zero mean (cos[0] = 0)");
      sol.value = [data, a](const Vec2& x) {
        const double q = a / x.norm();
        return fourier_sum(data, std::atan2(x.y(), x.x()),
                           [q, a](int n) { return n == 0 ? 0.0 : -(a / n) * std::pow(q, n); });
      };
    }
    sol.data = [data](const CurvePoint& cp) {
      return fourier_sum(data, cp.t, [](int) { return 1.0; });
    };
    return sol;
  }

  const Side source_side = closest_point(curve, data.x0).side;
  const Side wanted = interior ? Side::exterior : Side::interior;
  if (source_side != wanted)
    throw ConfigError(std::string("data.x0 must lie in the ") + to_string(wanted) +
                      " of the curve");
  const Vec2 x0 = data.x0;

  if (data.kind == DataKind::log_source) {
    if (!interior)
      throw ConfigError("log-source data has nonzero flux; use it with interior-dirichlet");
    sol.value = [x0](const Vec2& x) { return -std::log((x - x0).norm()) / two_pi; };
    sol.data = [x0](const CurvePoint& cp) { return -std::log((cp.point - x0).norm()) / two_pi; };
    return sol;
  }

  sol.value = [x0](const Vec2& x) {
    const Vec2 d = x - x0;
    return d.x() / d.squaredNorm();
  };
  if (interior) {
    sol.data = [v = sol.value](const CurvePoint& cp) { return v(cp.point); };
  } else {
    sol.data = [x0](const CurvePoint& cp) {
      const Vec2 d = cp.point - x0;
      const double r4 = d.squaredNorm() * d.squaredNorm();
      const Vec2 grad((d.y() * d.y() - d.x() * d.x()) / r4, -2.0 * d.x() * d.y() / r4);
      return grad.dot(cp.normal);
    };
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Grids

BodyFittedGrid body_fitted_grid(const BoundaryCurve& curve, int n, int n_normal, Side side) {
  check_sample_count(n);
  if (n_normal < 2) throw Error(ErrorKind::input, "n_normal must be at least 2");
  if (side == Side::on_boundary) throw Error(ErrorKind::input, "grid side must be off-boundary");
  BodyFittedGrid grid;
  grid.delta0 = 1.0 / curve.kappa_max() / n_normal;
  grid.points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n_normal));
  for (double t : ptr_nodes(n))
    for (int k = 1; k <= n_normal; ++k)
      grid.points.push_back(frame_at_depth(curve, t, k * grid.delta0, side));
  return grid;
}

std::vector<ClosePointFrame> cartesian_grid(const BoundaryCurve& curve, double h, Side side,
                                            const std::optional<std::array<double, 4>>& bbox,
                                            int coarse_samples) {
  if (!(h > 0)) throw Error(ErrorKind::input, "h must be positive");
  if (side == Side::on_boundary) throw Error(ErrorKind::input, "grid side must be off-boundary");
  std::array<double, 4> box = bbox.value_or(curve.bbox());
  if (!bbox && side == Side::exterior) {
    const double pad = 1.0 / curve.kappa_max();
    box = {box[0] - pad, box[1] - pad, box[2] + pad, box[3] + pad};
  }
  const long i0 = static_cast<long>(std::ceil(box[0] / h));
  const long i1 = static_cast<long>(std::floor(box[2] / h));
  const long j0 = static_cast<long>(std::ceil(box[1] / h));
  const long j1 = static_cast<long>(std::floor(box[3] / h));
  const long nx = std::max(0L, i1 - i0 + 1);
  const long ny = std::max(0L, j1 - j0 + 1);
  const long total = nx * ny;

  std::vector<ClosePointFrame> frames(static_cast<std::size_t>(total));
  std::vector<char> keep(static_cast<std::size_t>(total), 0);
  std::string failure;
  long failed_at = total;

#pragma omp parallel for schedule(dynamic, 64)
  for (long idx = 0; idx < total; ++idx) {
    const Vec2 x((i0 + idx % nx) * h, (j0 + idx / nx) * h);
    try {
      const ClosePointFrame f = closest_point(curve, x, coarse_samples);
      if (f.side == side && f.distance > 1e-12) {
        frames[static_cast<std::size_t>(idx)] = f;
        keep[static_cast<std::size_t>(idx)] = 1;
      }
    } catch (const Error& e) {
#pragma omp critical(layerpot_grid_error)
      if (idx < failed_at) {
        failed_at = idx;
        failure = e.what();
      }
    }
  }
  if (failed_at < total)
    throw Error(ErrorKind::projection_failure,
                "cartesian grid point " + std::to_string(failed_at) + ": " + failure);

  std::vector<ClosePointFrame> out;
  for (long idx = 0; idx < total; ++idx)
    if (keep[static_cast<std::size_t>(idx)]) out.push_back(frames[static_cast<std::size_t>(idx)]);
  return out;
}

std::vector<ClosePointFrame> ray_grid(const BoundaryCurve& curve, double tstar,
                                      std::span<const double> eps, Side side) {
  std::vector<ClosePointFrame> out;
  out.reserve(eps.size());
  for (double e : eps) out.push_back(frame_at(curve, tstar, e, side));
  return out;
}

// ---------------------------------------------------------------------------
// Experiments

const MethodSummary& ErrorField::summary_for(Method method) const {
  for (const MethodSummary& s : summary)
    if (s.method == method) return s;
  throw Error(ErrorKind::input, std::string("no summary for method ") + to_string(method));
}

namespace {

std::vector<MethodSummary> summarize(std::span<const ErrorRecord> records,
                                     std::span<const Method> methods) {
  std::vector<MethodSummary> out;
  for (Method m : methods) {
    MethodSummary s;
    s.method = m;
    double sq = 0;
    for (const ErrorRecord& r : records) {
      if (r.method != m) continue;
      ++s.count;
      s.linf = std::max(s.linf, r.abs_error);
      sq += r.abs_error * r.abs_error;
    }
    if (s.count > 0) s.l2 = std::sqrt(sq / static_cast<double>(s.count));
    out.push_back(s);
  }
  return out;
}

std::string format_point(const Vec2& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", x.x(), x.y());
  return buf;
}

}  // namespace

ErrorField evaluate_field(const DensitySolution& sol, std::span<const ClosePointFrame> frames,
                          std::span<const Method> methods, double threshold,
                          const std::function<double(const Vec2&)>& exact) {
  const long np = static_cast<long>(frames.size());
  const std::size_t nm = methods.size();
  ErrorField field;
  field.records.resize(static_cast<std::size_t>(np) * nm);
  long failed_at = np;
  std::string failure;
  ErrorKind failure_kind = ErrorKind::input;

#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < np; ++i) {
    const ClosePointFrame& f = frames[static_cast<std::size_t>(i)];
    try {
      const double u = exact(f.x);
      for (std::size_t m = 0; m < nm; ++m) {
        ErrorRecord& r = field.records[static_cast<std::size_t>(i) * nm + m];
        r.x = f.x;
        r.tstar = f.tstar;
        r.eps = f.eps;
        r.method = methods[m];
        r.value = evaluate(sol, EvalRequest{f.x, methods[m], threshold}, f);
        r.exact = u;
        r.abs_error = std::abs(r.value - r.exact);
      }
    } catch (const Error& e) {
#pragma omp critical(layerpot_eval_error)
      if (i < failed_at) {
        failed_at = i;
        failure = e.what();
        failure_kind = e.kind();
      }
    }
  }
  if (failed_at < np)
    throw Error(failure_kind, "grid point " + std::to_string(failed_at) + " " +
                                  format_point(frames[static_cast<std::size_t>(failed_at)].x) +
                                  ": " + failure);

  field.summary = summarize(field.records, methods);
  field.residual = sol.residual();
  field.condition = sol.condition();
  return field;
}

ErrorField run_experiment(const ExperimentConfig& cfg) {
  const BoundaryCurve curve = cfg.curve.build();
  const TestSolution exact = make_test_solution(cfg.data, cfg.problem, curve);
  const bool interior = cfg.problem == Problem::interior_dirichlet;
  const Side side = interior ? Side::interior : Side::exterior;

  const DensitySolution sol = interior ? solve_interior_dirichlet(curve, exact.data, cfg.n)
                                       : solve_exterior_neumann(curve, exact.data, cfg.n);

  std::vector<ClosePointFrame> frames;
  double delta0 = 0;
  switch (cfg.grid.kind) {
    case GridKind::body_fitted: {
      BodyFittedGrid g = body_fitted_grid(curve, cfg.n, cfg.grid.n_normal, side);
      frames = std::move(g.points);
      delta0 = g.delta0;
      break;
    }
    case GridKind::cartesian:
      frames = cartesian_grid(curve, cfg.grid.h, side, cfg.grid.bbox, projection_samples(cfg.n));
      break;
    case GridKind::ray:
      frames = ray_grid(curve, cfg.grid.tstar, cfg.grid.eps, side);
      break;
  }

  ErrorField field = evaluate_field(sol, frames, cfg.methods, cfg.threshold, exact.value);
  field.delta0 = delta0;

  const std::size_t nm = cfg.methods.size();
  const std::size_t per_ray = cfg.grid.kind == GridKind::body_fitted
                                  ? static_cast<std::size_t>(cfg.grid.n_normal)
                                  : cfg.grid.kind == GridKind::ray ? frames.size() : 0;
  if (per_ray > 0) {
    for (std::size_t start = 0; start < frames.size(); start += per_ray) {
      for (std::size_t m = 0; m < nm; ++m) {
        RaySlice s;
        s.tstar = frames[start].tstar;
        s.method = cfg.methods[m];
        for (std::size_t p = start; p < start + per_ray; ++p)
          s.linf = std::max(s.linf, field.records[p * nm + m].abs_error);
        field.rays.push_back(s);
      }
    }
  }
  return field;
}

// ---------------------------------------------------------------------------
// Output

void write_csv(std::ostream& os, std::span<const ErrorRecord> records) {
  os << "x,y,tstar,eps,method,value,exact,abs_error\n";
  char buf[512];
  for (const ErrorRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g\n", r.x.x(),
                  r.x.y(), r.tstar, r.eps, to_string(r.method), r.value, r.exact, r.abs_error);
    os << buf;
  }
}

void write_meta(std::ostream& os, const ExperimentConfig& cfg, const ErrorField& field) {
  nlohmann::ordered_json j;
  j["problem"] = to_string(cfg.problem);
  j["N"] = cfg.n;
  j["threshold"] = cfg.threshold;
  j["delta0"] = field.delta0;
  j["points"] = field.summary.empty() ? 0 : field.summary.front().count;
  j["residual"] = field.residual;
  j["condition"] = field.condition;
  for (const MethodSummary& s : field.summary)
    j["summary"][to_string(s.method)] = {{"linf", s.linf}, {"l2", s.l2}};
  for (const RaySlice& r : field.rays)
    j["rays"].push_back({{"tstar", r.tstar}, {"method", to_string(r.method)}, {"linf", r.linf}});
  os << j.dump(2) << "\n";
}

void write_outputs(const std::string& path, const ExperimentConfig& cfg, const ErrorField& field) {
  std::ofstream csv(path);
  if (!csv) throw Error(ErrorKind::input, "cannot write '" + path + "'");
  write_csv(csv, field.records);
  std::ofstream meta(path + ".meta.json");
  if (!meta) throw Error(ErrorKind::input, "cannot write '" + path + ".meta.json'");
  write_meta(meta, cfg, field);
}

// ---------------------------------------------------------------------------
// Convergence fits

PowerFit fit_slope(std::span<const double> eps, std::span<const double> errors) {
  if (eps.size() != errors.size())
    throw Error(ErrorKind::fit, "eps and error lists differ in length");
  if (eps.size() < 3) throw Error(ErrorKind::fit, "need at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0) || !(errors[i] > 0))
      throw Error(ErrorKind::fit, "eps and errors must be positive");
    const double x = std::log(eps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0)) throw Error(ErrorKind::fit, "eps values must not all coincide");
  PowerFit fit;
  fit.p = (n * sxy - sx * sy) / den;
  fit.c = std::exp((sy - fit.p * sx) / n);
  return fit;
}

double matched_kernel_error(const BoundaryCurve& curve, double tstar, double eps) {
  const ClosePointFrame frame = frame_at(curve, tstar, eps, Side::interior);
  const InnerKernelCoeffs c = inner_coeffs(frame.curvature, frame.speed, eps, Side::interior);

  double worst = 0;
  auto probe = [&](double theta) {
    const CurvePoint cp = curve.eval(tstar + theta);
    const double k = dlp_kernel(frame.x, cp.point, cp.normal);
    const double res = k - dlp_outer(curve, frame, cp) - k_in(theta, c) - 0.5 * frame.curvature;
    worst = std::max(worst, std::abs(res));
  };
  constexpr int uniform = 8192;
  for (int i = 0; i < uniform; ++i) probe(-M_PI + two_pi * i / uniform);
  constexpr int clustered = 400;
  for (int i = 0; i <= clustered; ++i) {
    const double theta = std::pow(10.0, -10.0 + 10.0 * i / clustered);
    probe(theta);
    probe(-theta);
  }
  return worst;
}

}  // namespace layerpot
