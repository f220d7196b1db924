#include <ballroll/cli.hpp>
#include <ballroll/config.hpp>
#include <ballroll/experiments.hpp>
#include <ballroll/expression.hpp>
#include <ballroll/io.hpp>
#include <ballroll/rolling.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>

namespace ballroll::cli {

namespace {

// Flag values are collected as text and applied through RunConfig::set, so
// config files and flags share one parser.
struct FlagValues {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool simulate = false;
  bool json = false;
  bool print_config = false;
};

void add_common(CLI::App& app, FlagValues& f) {
  app.add_option("--config", f.config_path, "Config file: one 'key = value' per line, '#' comments");
  app.add_option("--surface", f.values["surface"], "Surface, e.g. sphere:R=1,inward");
  app.add_option("--jobs", f.values["jobs"], "Worker threads for sweeps");
  app.add_option("--seed", f.values["seed"], "Seed for random sampling (default 0)");
  app.add_option("--out", f.values["out"], "Output file");
  app.add_flag("--json", f.json, "JSON output");
  app.add_flag("--print-config", f.print_config, "Print the canonical config and exit");
}

void add_point(CLI::App& app, FlagValues& f) {
  app.add_option("--at", f.values["at"], "Chart point u,v");
}

void add_tolerances(CLI::App& app, FlagValues& f) {
  app.add_option("--tol-iso", f.values["tol_iso"], "Isotropy tolerance on closed-form speeds");
  app.add_option("--tol-sim", f.values["tol_sim"], "Isotropy tolerance on simulated speeds");
}

void add_simulation(CLI::App& app, FlagValues& f) {
  app.add_flag("--simulate", f.simulate, "Also roll the ball and measure the speed");
  app.add_option("--arc", f.values["arc"], "Arclength of the simulated roll");
}

RunConfig build_config(const FlagValues& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) fail(ErrorKind::InvalidArgument, fmt::format("cannot read config '{}'", f.config_path));
    std::stringstream text;
    text << in.rdbuf();
    cfg = RunConfig::from_text(text.str());
  }
  for (const auto& [key, value] : f.values) {
    if (!value.empty()) cfg.set(key, value);
  }
  if (f.simulate) cfg.simulate = true;
  if (f.json) cfg.json = true;
  return cfg;
}

Vec2 require_point(const RunConfig& cfg) {
  if (!cfg.at) fail(ErrorKind::InvalidArgument, "--at u,v is required");
  return *cfg.at;
}

double require_r(const RunConfig& cfg) {
  if (!cfg.r) fail(ErrorKind::InvalidArgument, "--r is required");
  return *cfg.r;
}

std::vector<double> directions_or_default(const RunConfig& cfg, int count) {
  if (!cfg.dirs.empty()) return cfg.dirs;
  std::vector<double> dirs;
  for (int i = 0; i < count; ++i) dirs.push_back(std::numbers::pi * i / count);
  return dirs;
}

ParamRegion region_of(const RunConfig& cfg, const SurfaceChart& chart) {
  ParamRegion reg = default_region(chart.domain(), cfg.grid_u, cfg.grid_v);
  if (cfg.region) {
    reg.u_min = (*cfg.region)[0];
    reg.u_max = (*cfg.region)[1];
    reg.v_min = (*cfg.region)[2];
    reg.v_max = (*cfg.region)[3];
  }
  return reg;
}

SimulationOptions simulation_of(const RunConfig& cfg) {
  SimulationOptions sim;
  sim.arc = cfg.arc;
  return sim;
}

// Writes to --out when given, otherwise to `fallback`.
template <typename Writer>
void emit(const RunConfig& cfg, std::ostream& fallback, Writer&& write) {
  if (cfg.out.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidArgument, fmt::format("cannot write '{}'", cfg.out));
  write(file);
}

void cmd_curvature(const RunConfig& cfg, std::ostream& out) {
  const SurfaceChart chart = make_surface(cfg.surface);
  const Vec2 p = require_point(cfg);
  const PointGeometry pg = evaluate_point_geometry(chart, p.x(), p.y());
  emit(cfg, out, [&](std::ostream& o) { write_point_geometry_json(o, pg); });
}

void cmd_roll(const RunConfig& cfg, std::ostream& out) {
  const SurfaceChart chart = make_surface(cfg.surface);
  std::optional<SurfaceCurve> curve;
  if (cfg.path) {
    const Expression u = Expression::parse(cfg.path->first);
    const Expression v = Expression::parse(cfg.path->second);
    curve = curve_from_parameter_path(
        chart, SurfaceCurve::PointPathFn([u, v](double t) { return Vec2(u(t, 0.0), v(t, 0.0)); }),
        cfg.t_min, cfg.t_max);
  } else {
    const Vec2 p = require_point(cfg);
    curve = geodesic_from(chart, p.x(), p.y(), cfg.theta, cfg.length);
  }
  const Roller roller = cfg.r ? Roller(BallRoller{*cfg.r}) : Roller(PlaneRoller{});
  const Rolling rolling = roll(*curve, roller);
  const MotionResiduals res = motion_residuals(rolling.motion, rolling.anti);

  if (!cfg.out.empty()) {
    emit(cfg, out, [&](std::ostream& o) {
      if (cfg.json) {
        write_motion_json(o, rolling.motion);
      } else {
        write_motion_csv(o, rolling.motion);
      }
    });
  }
  out << "samples = " << rolling.motion.size() << '\n';
  out << "orthogonality = " << format_number(res.orthogonality) << '\n';
  out << "determinant = " << format_number(res.determinant) << '\n';
  out << "no_skid = " << format_number(res.no_skid) << '\n';
  out << "no_spin = " << format_number(res.no_spin) << '\n';
  out << "omega_agreement = " << format_number(res.omega_agreement) << '\n';
  out << "tangency = " << format_number(res.tangency) << '\n';
  if (cfg.r) {
    const CenterTrajectory c = center_trajectory(rolling.motion, *cfg.r);
    out << "center_discrepancy = " << format_number(c.max_discrepancy) << '\n';
  }
}

void cmd_isotropy(const RunConfig& cfg, std::ostream& out) {
  const SurfaceChart chart = make_surface(cfg.surface);
  const Vec2 p = require_point(cfg);
  const double r = require_r(cfg);
  const std::vector<double> dirs =
      cfg.dirs.empty() ? std::vector<double>{0.0, std::numbers::pi / 3, 2 * std::numbers::pi / 3}
                       : cfg.dirs;
  IsotropyOptions opts;
  opts.simulate = cfg.simulate;
  opts.tol_closed = cfg.tol_iso;
  opts.tol_simulated = cfg.tol_sim;
  opts.jobs = cfg.jobs;
  opts.simulation = simulation_of(cfg);
  const IsotropyReport rep = isotropy_test(chart, p.x(), p.y(), r, dirs, opts);

  if (!cfg.out.empty()) {
    emit(cfg, out, [&](std::ostream& o) { write_speed_csv(o, rep.samples); });
  }
  if (cfg.json) {
    write_isotropy_json(out, rep);
    return;
  }
  out << "verdict = " << to_string(rep.verdict) << '\n';
  out << "relation = " << to_string(rep.relation) << '\n';
  out << "spread_closed = " << format_number(rep.spread_closed) << '\n';
  if (rep.spread_simulated) {
    out << "simulated_verdict = " << to_string(*rep.simulated_verdict) << '\n';
    out << "spread_simulated = " << format_number(*rep.spread_simulated) << '\n';
  }
  out << "coefficient_closed = " << format_number(rep.coefficient_closed) << '\n';
  out << "coefficient_fitted = " << format_number(rep.coefficient_fitted) << '\n';
}

void cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const SurfaceChart chart = make_surface(cfg.surface);
  const double r = require_r(cfg);
  ClassifyOptions opts;
  opts.tol_speed = cfg.tol_iso;
  opts.jobs = cfg.jobs;
  const auto c = classify_constant_speed(chart, region_of(cfg, chart), r, opts);
  write_classification_json(out, c);
  if (!cfg.out.empty()) emit(cfg, out, [&](std::ostream& o) { write_classification_json(o, c); });
}

void cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const SurfaceChart chart = make_surface(cfg.surface);
  std::vector<double> radii;
  if (cfg.r_range) {
    radii = cfg.r_range->values();
  } else {
    radii.push_back(require_r(cfg));
  }
  const std::vector<double> dirs = directions_or_default(cfg, 16);

  std::vector<Vec2> points;
  if (cfg.at) {
    points.push_back(*cfg.at);
  } else {
    const ParamRegion reg = region_of(cfg, chart);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> du(reg.u_min, reg.u_max);
    std::uniform_real_distribution<double> dv(reg.v_min, reg.v_max);
    for (int i = 0; i < cfg.points; ++i) {
      const double u = du(rng);
      points.emplace_back(u, dv(rng));
    }
  }
  std::vector<SpeedSample> rows;
  for (const Vec2& p : points) {
    const auto part = speed_landscape(chart, p.x(), p.y(), radii, dirs, cfg.simulate, cfg.jobs,
                                      simulation_of(cfg));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(cfg, out, [&](std::ostream& o) { write_speed_csv(o, rows); });
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateChart:
    case ErrorKind::OutOfDomain:
    case ErrorKind::UmbilicInRegion:
    case ErrorKind::SingularCurve:
    case ErrorKind::DomainExit:
    case ErrorKind::BadDirections:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
      return kInputError;
    case ErrorKind::NotRolling:
      return kNotRolling;
    case ErrorKind::StepFailure:
    case ErrorKind::NoCenter:
      break;
  }
  return kNumericalFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rolling a ball on parametric surfaces"};
  app.require_subcommand(1);
  FlagValues f;

  auto* curvature = app.add_subcommand("curvature", "Principal curvatures and frame at a point (JSON)");
  add_common(*curvature, f);
  add_point(*curvature, f);

  auto* rollc = app.add_subcommand("roll", "Roll a ball (--r) or a plane along a geodesic or path");
  add_common(*rollc, f);
  add_point(*rollc, f);
  rollc->add_option("--r", f.values["r"], "Ball parameter; the ball is centered at p + r N_p");
  rollc->add_option("--theta", f.values["theta"], "Direction angle from e1, radians");
  rollc->add_option("--length", f.values["length"], "Geodesic length");
  rollc->add_option("--path", f.values["path"], "Chart path '<u(t)>; <v(t)>'");
  rollc->add_option("--t-range", f.values["t_range"], "Path parameter interval a,b");

  auto* iso = app.add_subcommand("isotropy", "Initial-speed isotropy test at a point");
  add_common(*iso, f);
  add_point(*iso, f);
  add_tolerances(*iso, f);
  add_simulation(*iso, f);
  iso->add_option("--r", f.values["r"], "Ball parameter");
  iso->add_option("--dirs", f.values["dirs"], "Direction angles from e1, radians, comma separated");

  auto* cls = app.add_subcommand("classify", "Constant-speed classification over a grid (JSON)");
  add_common(*cls, f);
  add_tolerances(*cls, f);
  cls->add_option("--r", f.values["r"], "Ball parameter");
  cls->add_option("--grid", f.values["grid"], "Grid size nu,nv");
  cls->add_option("--region", f.values["region"], "u_min,u_max,v_min,v_max");

  auto* scan = app.add_subcommand("scan", "Speed landscape over radii and directions (CSV)");
  add_common(*scan, f);
  add_point(*scan, f);
  add_simulation(*scan, f);
  scan->add_option("--r", f.values["r"], "Ball parameter");
  scan->add_option("--r-range", f.values["r_range"], "Radii min:max:count[:log]");
  scan->add_option("--dirs", f.values["dirs"], "Direction angles, radians");
  scan->add_option("--points", f.values["points"], "Random points when --at is absent");
  scan->add_option("--region", f.values["region"], "u_min,u_max,v_min,v_max");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    const RunConfig cfg = build_config(f);
    if (f.print_config) {
      out << cfg.to_text();
      return kSuccess;
    }
    if (curvature->parsed()) cmd_curvature(cfg, out);
    if (rollc->parsed()) cmd_roll(cfg, out);
    if (iso->parsed()) cmd_isotropy(cfg, out);
    if (cls->parsed()) cmd_classify(cfg, out);
    if (scan->parsed()) cmd_scan(cfg, out);
  } catch (const NotRollingError& e) {
    err << "error: " << e.what() << '\n';
    return kNotRolling;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

}  // namespace ballroll::cli
