// layerpot: command-line front end for the close-evaluation experiments.
//
//   layerpot solve --config cfg.json [--N 128] [--out density.csv]
//   layerpot eval --config cfg.json --point X,Y [--method auto] [--threshold 1e-8]
//   layerpot grid --config cfg.json [--method naive,asymptotic] [--out field.csv]
//   layerpot circle-oracle [--N 128] [--out field.csv]
//   layerpot slope [--tstar 3.14159] [--eps 1e-4,1e-3,1e-2,1e-1] [--out slope.csv]
//
// Exit status: 0 on success, 2 for configuration or usage errors, 3 for
// numerical failures.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "layerpot/circle_oracle.hpp"
#include "layerpot/closeeval.hpp"
#include "layerpot/error.hpp"
#include "layerpot/harness.hpp"

using namespace layerpot;

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

struct Options {
  std::string config;
  std::string method;
  std::optional<int> n;
  std::optional<double> threshold;
  std::string out;
  std::string point;
  double tstar = M_PI;
  std::vector<double> eps{1e-4, 1e-3, 1e-2, 1e-1};
  int n_radial = 200;
  int n_angular = 512;
  double radius = 1.0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

ExperimentConfig config_from(const Options& opt) {
  if (opt.config.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = load_config(opt.config);
  if (opt.n) {
    if (*opt.n < 8 || *opt.n % 2 != 0) throw ConfigError("--N must be even and at least 8");
    cfg.n = *opt.n;
  }
  if (opt.threshold) {
    if (!(*opt.threshold > 0)) throw ConfigError("--threshold must be positive");
    cfg.threshold = *opt.threshold;
  }
  if (!opt.method.empty()) {
    cfg.methods.clear();
    for (const std::string& name : split(opt.method, ',')) {
      const auto m = parse_method(name);
      if (!m) throw ConfigError("unknown method '" + name + "'");
      cfg.methods.push_back(*m);
    }
  }
  if (!opt.out.empty()) cfg.output = opt.out;
  return cfg;
}

// Writes to the file named by `path`, or stdout when it is empty.
template <typename F>
void emit(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write '" + path + "'");
  body(os);
}

DensitySolution solve_config(const ExperimentConfig& cfg, const BoundaryCurve& curve,
                             const TestSolution& exact) {
  return cfg.problem == Problem::interior_dirichlet
             ? solve_interior_dirichlet(curve, exact.data, cfg.n)
             : solve_exterior_neumann(curve, exact.data, cfg.n);
}

int run_solve(const Options& opt) {
  const ExperimentConfig cfg = config_from(opt);
  const BoundaryCurve curve = cfg.curve.build();
  const TestSolution exact = make_test_solution(cfg.data, cfg.problem, curve);
  const DensitySolution sol = solve_config(cfg, curve, exact);
  emit(opt.out, [&](std::ostream& os) {
    os << "t,x,y,speed,data,density\n";
    char buf[256];
    for (int j = 0; j < sol.size(); ++j) {
      const CurvePoint& cp = sol.nodes()[static_cast<std::size_t>(j)];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", cp.t,
                    cp.point.x(), cp.point.y(), cp.speed,
                    sol.boundary_data()[static_cast<std::size_t>(j)],
                    sol.density()[static_cast<std::size_t>(j)]);
      os << buf;
    }
  });
  std::fprintf(stderr, "residual %.3e  condition %.3e\n", sol.residual(), sol.condition());
  return 0;
}

int run_eval(const Options& opt) {
  ExperimentConfig cfg = config_from(opt);
  const auto parts = split(opt.point, ',');
  if (parts.size() != 2) throw ConfigError("--point must be X,Y");
  Vec2 x;
  try {
    x = Vec2(std::stod(parts[0]), std::stod(parts[1]));
  } catch (const std::exception&) {
    throw ConfigError("--point must be X,Y");
  }
  if (opt.method.empty()) cfg.methods = {Method::automatic};

  const BoundaryCurve curve = cfg.curve.build();
  const TestSolution exact = make_test_solution(cfg.data, cfg.problem, curve);
  const DensitySolution sol = solve_config(cfg, curve, exact);
  const ClosePointFrame frame = closest_point(curve, x, projection_samples(cfg.n));
  const ErrorField field =
      evaluate_field(sol, std::span(&frame, 1), cfg.methods, cfg.threshold, exact.value);
  emit(opt.out, [&](std::ostream& os) { write_csv(os, field.records); });
  return 0;
}

int run_grid(const Options& opt) {
  const ExperimentConfig cfg = config_from(opt);
  const ErrorField field = run_experiment(cfg);
  if (cfg.output.empty())
    write_csv(std::cout, field.records);
  else
    write_outputs(cfg.output, cfg, field);
  for (const MethodSummary& s : field.summary)
    std::fprintf(stderr, "%-24s points %zu  Linf %.6e  L2 %.6e\n", to_string(s.method),
                 s.count, s.linf, s.l2);
  return 0;
}

int run_circle_oracle(const Options& opt) {
  const int n = opt.n.value_or(128);
  if (n < 8 || n % 2 != 0) throw ConfigError("--N must be even and at least 8");
  if (opt.n_radial < 1 || opt.n_angular < 1)
    throw ConfigError("--nr and --nt must be positive");
  if (!(opt.radius > 0)) throw ConfigError("--radius must be positive");
  std::vector<ErrorRecord> records;
  records.reserve(static_cast<std::size_t>(opt.n_radial) * static_cast<std::size_t>(opt.n_angular));
  for (int i = 0; i < opt.n_radial; ++i) {
    // Radii cluster toward the boundary so the O(1/N) layer is resolved.
    const double s = static_cast<double>(i) / opt.n_radial;
    const double r = opt.radius * (1.0 - std::pow(1.0 - s, 3.0));
    for (int k = 0; k < opt.n_angular; ++k) {
      const double t = two_pi * k / opt.n_angular;
      ErrorRecord rec;
      rec.x = Vec2(r * std::cos(t), r * std::sin(t));
      rec.tstar = t;
      rec.eps = 1.0 - r / opt.radius;
      rec.method = Method::naive;
      rec.exact = -1.0;
      rec.value = -1.0 + circle_error_mu1(r, t, opt.radius, n);
      rec.abs_error = std::abs(rec.value - rec.exact);
      records.push_back(rec);
    }
  }
  emit(opt.out, [&](std::ostream& os) { write_csv(os, records); });
  return 0;
}

int run_slope(const Options& opt) {
  BoundaryCurve curve = BoundaryCurve::star(1.0, 0.3, 5);
  if (!opt.config.empty()) curve = load_config(opt.config).curve.build();
  std::vector<double> errors;
  std::vector<ErrorRecord> records;
  for (double e : opt.eps) {
    if (!(e > 0)) throw ConfigError("--eps values must be positive");
    const double err = matched_kernel_error(curve, opt.tstar, e);
    errors.push_back(err);
    ErrorRecord rec;
    rec.x = offset_point(curve, opt.tstar, e, Side::interior);
    rec.tstar = opt.tstar;
    rec.eps = e;
    rec.method = Method::asymptotic;
    rec.value = err;
    rec.exact = 0;
    rec.abs_error = err;
    records.push_back(rec);
  }
  const PowerFit fit = fit_slope(opt.eps, errors);
  if (!opt.out.empty()) emit(opt.out, [&](std::ostream& os) { write_csv(os, records); });
  std::printf("p %.6f\nC %.6e\n", fit.p, fit.c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Close evaluation of 2D Laplace layer potentials"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "Experiment config (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--N", opt.n, "Number of quadrature nodes (even)");
    sub->add_option("--out", opt.out, "Output path (stdout if omitted)");
  };

  auto* solve = app.add_subcommand("solve", "Solve the boundary integral equation, emit density");
  add_common(solve, true);

  auto* eval = app.add_subcommand("eval", "Evaluate the layer potential at one point");
  add_common(eval, true);
  eval->add_option("--point", opt.point, "Evaluation point X,Y")->required();
  eval->add_option("--method", opt.method, "naive|asymptotic|subtraction-naive|"
                                           "subtraction-asymptotic|auto (comma list)");
  eval->add_option("--threshold", opt.threshold, "Boundary-layer threshold tau");

  auto* grid = app.add_subcommand("grid", "Run a full grid experiment");
  add_common(grid, true);
  grid->add_option("--method", opt.method, "Override the config's method list (comma list)");
  grid->add_option("--threshold", opt.threshold, "Boundary-layer threshold tau");

  auto* oracle = app.add_subcommand("circle-oracle", "Closed-form aliasing error field, mu = 1");
  oracle->add_option("--N", opt.n, "Number of quadrature nodes");
  oracle->add_option("--out", opt.out, "Output CSV");
  oracle->add_option("--nr", opt.n_radial, "Radial samples");
  oracle->add_option("--nt", opt.n_angular, "Angular samples");
  oracle->add_option("--radius", opt.radius, "Circle radius");

  auto* slope = app.add_subcommand("slope", "Fit C eps^p to the matched-kernel error");
  slope->add_option("--config", opt.config, "Take the curve from this config")
      ->check(CLI::ExistingFile);
  slope->add_option("--tstar", opt.tstar, "Projection parameter");
  slope->add_option("--eps", opt.eps, "Scaled distances")->delimiter(',');
  slope->add_option("--out", opt.out, "Output CSV of per-eps errors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*solve) return run_solve(opt);
    if (*eval) return run_eval(opt);
    if (*grid) return run_grid(opt);
    if (*oracle) return run_circle_oracle(opt);
    if (*slope) return run_slope(opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_numeric;
  }
  return exit_config;
}
