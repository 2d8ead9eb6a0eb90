#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include <CLI11.hpp>

#include "field_io.hpp"

namespace hjsc::cli {
namespace {

using nlohmann::json;

std::string fmt(double v, const char* pattern = "%.6g") {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string point_text(Vec x, int dim) {
  return dim == 2 ? "(" + fmt(x.x) + ", " + fmt(x.y) + ")" : fmt(x.x);
}

json point_json(Vec x, int dim) {
  if (dim == 2) return json::array({x.x, x.y});
  return x.x;
}

// Non-finite values become null in the report.
json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::shared_ptr<const Grid> make_grid(const ProblemConfig& cfg) {
  return std::make_shared<const Grid>(cfg.domain, cfg.spacing);
}

std::vector<MinimizingCurve> extract_all(const ProblemConfig& cfg, const ValueField& u) {
  std::vector<MinimizingCurve> curves;
  for (Vec x0 : cfg.curves.starts) {
    curves.push_back(extract_curve(u, cfg.hamiltonian, cfg.cost, x0, cfg.curves.horizon,
                                   cfg.curves.dt, cfg.curves.options));
  }
  return curves;
}

void check_starts(const ProblemConfig& cfg) {
  for (Vec x0 : cfg.curves.starts) {
    if (!cfg.domain.in_interior(x0)) {
      throw DomainError("curve start " + point_text(x0, cfg.domain.dimension()) +
                        " is not inside the domain");
    }
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_verdicts(const Verdicts& v, std::ostream& out) {
  out << "verdicts: globally_semiconcave=" << yes_no(v.globally_semiconcave)
      << " blowup_at_boundary=" << yes_no(v.blowup_at_boundary)
      << " infinite_hitting_time=" << yes_no(v.infinite_hitting_time)
      << " finite_hitting_time=" << yes_no(v.finite_hitting_time) << '\n';
}

// Expected flags must be reproduced, and the measured flags must not
// contradict them.
bool verdicts_agree(const Verdicts& want, const Verdicts& got) {
  if (want.globally_semiconcave && (!got.globally_semiconcave || got.blowup_at_boundary)) return false;
  if (want.blowup_at_boundary && (!got.blowup_at_boundary || got.globally_semiconcave)) return false;
  if (want.infinite_hitting_time && (!got.infinite_hitting_time || got.finite_hitting_time)) return false;
  if (want.finite_hitting_time && (!got.finite_hitting_time || got.infinite_hitting_time)) return false;
  return true;
}

}  // namespace

std::vector<Vec> default_starts(const Domain& domain) {
  const Box& b = domain.bounding_box();
  std::vector<Vec> out;
  for (double t : {0.05, 0.25, 0.4, 0.6, 0.75, 0.9, 0.975}) {
    Vec x{b.x_lo + t * (b.x_hi - b.x_lo), 0.0};
    if (domain.dimension() == 2) x.y = 0.5 * (b.y_lo + b.y_hi);
    if (domain.in_interior(x)) out.push_back(x);
  }
  return out;
}

ValueField obtain_field(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out) {
  auto grid = make_grid(cfg);
  if (opts.field) return read_field(*opts.field, grid);
  SolverConfig sc = cfg.solver;
  if (opts.threads) sc.threads = *opts.threads;
  const auto t0 = std::chrono::steady_clock::now();
  Solution sol = solve(cfg.hamiltonian, cfg.cost, *grid, sc);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << "solve: nodes=" << grid->count(NodeTag::kInterior) + grid->count(NodeTag::kBoundary)
      << " iterations=" << sol.iterations << " residual=" << fmt(sol.residual)
      << " wall=" << fmt(wall, "%.3f") << "s\n";
  return std::move(sol.field);
}

json diagnostics_json(const ProblemConfig& cfg, const ValueField& u) {
  const int dim = cfg.domain.dimension();
  const std::vector<MinimizingCurve> curves = extract_all(cfg, u);
  const DiagnosticsReport r =
      diagnose(u, cfg.hamiltonian, cfg.cost, curves, cfg.solver.tol, cfg.diagnostics);

  json doc;
  doc["second_difference"] = {{"probe", r.second_diff.probe}, {"max", r.second_diff.max()}};
  doc["condition3"] = {{"c_est", r.condition3.c_est ? json(*r.condition3.c_est) : json(nullptr)},
                       {"divergent", r.condition3.divergent},
                       {"min_value", r.condition3.min_value},
                       {"excluded", r.condition3.excluded}};
  doc["c0"] = r.c0;
  doc["hitting_lower_bound"] = number_json(r.hitting_lower_bound);
  doc["sandwich"] = {{"lower_violation", r.sandwich.lower_violation},
                     {"upper_violation", r.sandwich.upper_violation},
                     {"tolerance", r.sandwich.tolerance},
                     {"pass", r.sandwich.pass}};
  json trend = json::array();
  for (const TrendPoint& t : r.boundary_blowup_trend) {
    trend.push_back({{"delta", t.delta}, {"max_second_difference", number_json(t.max_second_difference)}});
  }
  doc["boundary_trend"] = trend;
  json bounds = json::array();
  for (const BoundComparison& b : r.bounds) {
    bounds.push_back({{"point", point_json(b.point, dim)},
                      {"measured", number_json(b.measured)},
                      {"hitting", number_json(b.hitting)},
                      {"bound_shape", number_json(b.bound_shape)},
                      {"inverse_distance", number_json(b.inverse_distance)},
                      {"ratio", number_json(b.ratio)}});
  }
  doc["semiconcavity_bounds"] = bounds;
  json hits = json::array();
  for (const MinimizingCurve& c : curves) {
    hits.push_back({{"start", point_json(c.start, dim)}, {"hitting_time", number_json(c.hitting_time)}});
  }
  doc["curves"] = hits;
  doc["verdicts"] = {{"globally_semiconcave", r.verdicts.globally_semiconcave},
                     {"blowup_at_boundary", r.verdicts.blowup_at_boundary},
                     {"infinite_hitting_time", r.verdicts.infinite_hitting_time},
                     {"finite_hitting_time", r.verdicts.finite_hitting_time}};
  return doc;
}

int cmd_solve(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out) {
  GlobalOptions solve_opts = opts;
  solve_opts.field.reset();
  const ValueField u = obtain_field(cfg, solve_opts, out);
  const auto path = opts.out / "field.csv";
  write_atomically(path, format_field(u));
  if (cfg.case_id) {
    auto c = find_case(*cfg.case_id);
    if (c && c->reference_u && !c->reference_window && c->domain.dimension() == cfg.domain.dimension()) {
      out << "reference: sup_error=" << fmt(u.sup_error(c->reference_u)) << '\n';
    }
  }
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_curve(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out) {
  if (cfg.curves.starts.empty()) throw ConfigError("config.curves.starts: no start points given");
  check_starts(cfg);
  const ValueField u = obtain_field(cfg, opts, out);
  const int dim = cfg.domain.dimension();
  const std::vector<MinimizingCurve> curves = extract_all(cfg, u);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto path = opts.out / ("curve_" + std::to_string(k) + ".csv");
    write_atomically(path, format_curve(curves[k], dim));
    out << "curve " << k << ": start=" << point_text(curves[k].start, dim)
        << " hitting_time=" << fmt(curves[k].hitting_time)
        << " end=" << point_text(curves[k].positions.back(), dim) << " -> " << path.string() << '\n';
  }
  return kOk;
}

int cmd_diagnose(const ProblemConfig& config, const GlobalOptions& opts, std::ostream& out) {
  ProblemConfig cfg = config;
  if (cfg.curves.starts.empty()) cfg.curves.starts = default_starts(cfg.domain);
  check_starts(cfg);
  const ValueField u = obtain_field(cfg, opts, out);
  const json doc = diagnostics_json(cfg, u);
  const auto path = opts.out / "diagnostics.json";
  write_atomically(path, doc.dump(2) + "\n");

  const json& c3 = doc["condition3"];
  out << "condition3: C_est=" << (c3["c_est"].is_null() ? "n/a" : fmt(c3["c_est"].get<double>()))
      << (c3["divergent"].get<bool>() ? " (divergent near the boundary)" : "") << '\n';
  out << "sandwich: c0=" << fmt(doc["c0"].get<double>())
      << (doc["sandwich"]["pass"].get<bool>() ? " pass" : " FAIL") << '\n';
  out << "second differences: max=" << fmt(doc["second_difference"]["max"].get<double>())
      << " trend=";
  for (const json& t : doc["boundary_trend"]) {
    out << ' ' << (t["max_second_difference"].is_null() ? "n/a" : fmt(t["max_second_difference"].get<double>(), "%.4g"));
  }
  out << '\n';
  const json& v = doc["verdicts"];
  print_verdicts({v["globally_semiconcave"].get<bool>(), v["blowup_at_boundary"].get<bool>(),
                  v["infinite_hitting_time"].get<bool>(), v["finite_hitting_time"].get<bool>()},
                 out);
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_example(const std::string& id, const GlobalOptions& opts, std::ostream& out) {
  auto c = find_case(id);
  if (!c) throw ConfigError("unknown example '" + id + "'");
  ProblemConfig cfg = opts.config ? load_config(*opts.config) : config_for_case(*c);
  cfg.case_id = c->id;
  cfg.hamiltonian = c->hamiltonian;
  cfg.cost = c->cost;
  cfg.domain = c->domain;
  if (cfg.curves.starts.empty()) cfg.curves.starts = default_starts(c->domain);

  GlobalOptions solve_opts = opts;
  solve_opts.field.reset();
  const ValueField u = obtain_field(cfg, solve_opts, out);
  bool pass = true;
  std::string detail;

  if (c->reference_u) {
    double err = 0.0;
    const Grid& g = u.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.admissible(i)) continue;
      const Vec x = g.node(i);
      if (c->reference_window &&
          (x.x < c->reference_window->first || x.x > c->reference_window->second)) {
        continue;
      }
      err = std::max(err, std::abs(u[i] - c->reference_u(x)));
    }
    pass = pass && err <= 1e-2;
    detail += " sup_error=" + fmt(err, "%.3e");
  }

  const std::vector<MinimizingCurve> curves = extract_all(cfg, u);
  if (c->reference_curve) {
    double dev = 0.0;
    for (const MinimizingCurve& cv : curves) {
      for (std::size_t k = 0; k < cv.size() && cv.times[k] <= 5.0; ++k) {
        dev = std::max(dev, norm(cv.positions[k] - c->reference_curve(cv.start, cv.times[k])));
      }
    }
    pass = pass && dev <= 2e-2;
    detail += " curve_error=" + fmt(dev, "%.3e");
  }

  const DiagnosticsReport r =
      diagnose(u, cfg.hamiltonian, cfg.cost, curves, cfg.solver.tol, cfg.diagnostics);
  const bool agree = verdicts_agree(c->expected, r.verdicts);
  pass = pass && agree;
  detail += std::string(" verdicts=") + (agree ? "match" : "MISMATCH");

  if (c->reference_u && !c->reference_window) {
    std::mt19937_64 rng(opts.seed);
    std::size_t beaten = 0;
    std::size_t tried = 0;
    for (Vec x0 : cfg.curves.starts) {
      const double value = c->reference_u(x0);
      for (int k = 0; k < 50; ++k) {
        const Path path = random_competitor(c->domain, x0, rng);
        const double horizon = std::max(30.0, path.breakpoints.back());
        ++tried;
        if (path_cost(c->hamiltonian, c->cost, c->domain, path, horizon) < value - 1e-9) ++beaten;
      }
    }
    pass = pass && beaten == 0;
    detail += " competitors=" + std::to_string(tried - beaten) + "/" + std::to_string(tried);
  }

  out << c->id << (pass ? " PASS" : " FAIL") << detail << '\n';
  print_verdicts(r.verdicts, out);
  return pass ? kOk : kCheckFailed;
}

int cmd_legendre(const PowerHamiltonian& h, std::ostream& out) {
  out << "p=" << fmt(h.p()) << " a=" << fmt(h.a()) << " q=" << fmt(h.q())
      << " C=" << fmt(h.legendre_coeff(), "%.17g") << '\n';
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained Hamilton-Jacobi solver and semiconcavity diagnostics", "hjsc"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::string config_path;
  std::string field_path;
  unsigned threads = 0;
  app.add_option("--config", config_path, "Problem configuration (JSON)");
  app.add_option("--out", opts.out, "Output directory")->capture_default_str();
  app.add_option("--seed", opts.seed, "Seed for randomized competitor checks")->capture_default_str();
  auto* threads_opt = app.add_option("--threads", threads, "Solver threads (0 = auto)");

  auto* solve_cmd = app.add_subcommand("solve", "Solve the configured problem and write the field");
  auto* curve_cmd = app.add_subcommand("curve", "Extract minimizing curves from the configured starts");
  auto* diagnose_cmd = app.add_subcommand("diagnose", "Run semiconcavity diagnostics");
  auto* example_cmd = app.add_subcommand("example", "Run a catalog case against its references");
  auto* legendre_cmd = app.add_subcommand("legendre", "Print the Lagrangian coefficient");
  for (auto* sub : {curve_cmd, diagnose_cmd}) {
    sub->add_option("--field", field_path, "Use a previously written field instead of solving");
  }
  std::string example_id;
  example_cmd->add_option("id", example_id, "Case id (E1, E2, E3, E4, E5, E5-p1.5)")->required();
  std::optional<double> p_arg;
  std::optional<double> a_arg;
  legendre_cmd->add_option("--p", p_arg, "Exponent p in (1, 2]");
  legendre_cmd->add_option("--a", a_arg, "Coefficient a > 0");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (!config_path.empty()) opts.config = config_path;
  if (!field_path.empty()) opts.field = field_path;
  if (threads_opt->count() > 0) opts.threads = threads;

  try {
    if (example_cmd->parsed()) return cmd_example(example_id, opts, out);
    if (legendre_cmd->parsed()) {
      PowerHamiltonian h = opts.config ? load_config(*opts.config).hamiltonian : PowerHamiltonian(2.0, 1.0);
      return cmd_legendre(PowerHamiltonian(p_arg.value_or(h.p()), a_arg.value_or(h.a())), out);
    }
    if (!opts.config) throw ConfigError("--config is required for this command");
    const ProblemConfig cfg = load_config(*opts.config);
    if (solve_cmd->parsed()) return cmd_solve(cfg, opts, out);
    if (curve_cmd->parsed()) return cmd_curve(cfg, opts, out);
    if (diagnose_cmd->parsed()) return cmd_diagnose(cfg, opts, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kBadStart;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace hjsc::cli
