#include "config.hpp"

#include <fstream>

namespace hjsc::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json* member(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& key, const std::string& path, double fallback) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->get<double>();
}

long long integer(const json& obj, const std::string& key, const std::string& path,
                  long long fallback) {
  const json* v = member(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(path + "." + key, "expected an integer");
  return v->get<long long>();
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
  const json* v = member(obj, key);
  if (!v) fail(path + "." + key, "missing");
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

const json& section(const json& obj, const std::string& key, const std::string& path) {
  static const json empty = json::object();
  const json* v = member(obj, key);
  if (!v) return empty;
  if (!v->is_object()) fail(path + "." + key, "expected an object");
  return *v;
}

Vec point(const json& v, const std::string& path, int dim) {
  if (v.is_number()) {
    if (dim != 1) fail(path, "expected a [x, y] pair in a 2D domain");
    return {v.get<double>(), 0.0};
  }
  if (!v.is_array() || v.size() != static_cast<std::size_t>(dim)) {
    fail(path, "expected " + std::to_string(dim) + " coordinate(s)");
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) fail(path + "[" + std::to_string(k) + "]", "expected a number");
  }
  return {v[0].get<double>(), dim == 2 ? v[1].get<double>() : 0.0};
}

Domain parse_domain(const json& d, const std::string& path) {
  const std::string kind = text(d, "kind", path);
  const double tol = number(d, "boundary_tolerance", path, -1.0);
  try {
    if (kind == "interval") {
      return Domain::interval(number(d, "lo", path, -1.0), number(d, "hi", path, 1.0), tol);
    }
    if (kind == "rectangle") {
      return Domain::rectangle(number(d, "x_lo", path, -1.0), number(d, "x_hi", path, 1.0),
                               number(d, "y_lo", path, -1.0), number(d, "y_hi", path, 1.0), tol);
    }
    if (kind == "disk") {
      Vec c{};
      if (const json* v = member(d, "center")) c = point(*v, path + ".center", 2);
      return Domain::disk(c, number(d, "radius", path, 1.0), tol);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown domain kind '" + kind + "' (interval, rectangle, disk)");
}

ControlSearch parse_search(const std::string& s, const std::string& path) {
  if (s == "auto") return ControlSearch::kAuto;
  if (s == "sampled") return ControlSearch::kSampled;
  if (s == "cell-exact") return ControlSearch::kCellExact;
  fail(path, "unknown control search '" + s + "' (auto, sampled, cell-exact)");
}

}  // namespace

RunningCost cost_family(const json& entry, const std::string& path) {
  const std::string family = text(entry, "family", path);
  try {
    if (family == "abs-cone") return costs::abs_cone();
    if (family == "power-well") return costs::power_well(number(entry, "c", path, 0.5));
    if (family == "quadratic") return costs::quadratic();
    if (family == "bump") return costs::bump(static_cast<int>(integer(entry, "m", path, 1)));
    if (family == "piecewise-f2") return costs::piecewise_f2();
    if (family == "constant") return costs::constant(number(entry, "value", path, 0.0));
    if (family == "compact-bump") return costs::compact_bump(number(entry, "width", path, 0.8));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".family", "unknown cost family '" + family + "'");
}

ProblemConfig config_for_case(const ExampleCase& c) {
  ProblemConfig cfg;
  cfg.case_id = c.id;
  cfg.hamiltonian = c.hamiltonian;
  cfg.cost = c.cost;
  cfg.domain = c.domain;
  return cfg;
}

ProblemConfig parse_config(const json& doc) {
  const std::string root = "config";
  if (!doc.is_object()) fail(root, "expected an object");

  ProblemConfig cfg;
  if (const json* id = member(doc, "case")) {
    if (!id->is_string()) fail(root + ".case", "expected a string");
    auto c = find_case(id->get<std::string>());
    if (!c) fail(root + ".case", "unknown catalog case '" + id->get<std::string>() + "'");
    cfg = config_for_case(*c);
  }

  if (const json* h = member(doc, "hamiltonian")) {
    const std::string path = root + ".hamiltonian";
    if (!h->is_object()) fail(path, "expected an object");
    try {
      cfg.hamiltonian = PowerHamiltonian(number(*h, "p", path, cfg.hamiltonian.p()),
                                         number(*h, "a", path, cfg.hamiltonian.a()));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  if (const json* c = member(doc, "cost")) {
    if (!c->is_object()) fail(root + ".cost", "expected an object");
    cfg.cost = cost_family(*c, root + ".cost");
  }
  if (const json* d = member(doc, "domain")) {
    if (!d->is_object()) fail(root + ".domain", "expected an object");
    cfg.domain = parse_domain(*d, root + ".domain");
  }

  const json& grid = section(doc, "grid", root);
  cfg.spacing = number(grid, "spacing", root + ".grid", cfg.spacing);
  if (!(cfg.spacing > 0.0)) fail(root + ".grid.spacing", "must be positive");

  const std::string sp = root + ".solver";
  const json& solver = section(doc, "solver", root);
  cfg.solver.dt = number(solver, "dt", sp, cfg.solver.dt);
  cfg.solver.control_radius = number(solver, "control_radius", sp, cfg.solver.control_radius);
  cfg.solver.control_samples =
      static_cast<int>(integer(solver, "control_samples", sp, cfg.solver.control_samples));
  if (member(solver, "search")) {
    cfg.solver.search = parse_search(text(solver, "search", sp), sp + ".search");
  }
  cfg.solver.tol = number(solver, "tol", sp, cfg.solver.tol);
  const long long iters = integer(solver, "max_iters", sp, static_cast<long long>(cfg.solver.max_iters));
  if (iters <= 0) fail(sp + ".max_iters", "must be positive");
  cfg.solver.max_iters = static_cast<std::size_t>(iters);
  const long long threads = integer(solver, "threads", sp, cfg.solver.threads);
  if (threads < 0) fail(sp + ".threads", "must be non-negative");
  cfg.solver.threads = static_cast<unsigned>(threads);
  if (!(cfg.solver.tol > 0.0)) fail(sp + ".tol", "must be positive");

  const std::string cp = root + ".curves";
  const json& curves = section(doc, "curves", root);
  if (const json* starts = member(curves, "starts")) {
    if (!starts->is_array()) fail(cp + ".starts", "expected an array");
    for (std::size_t k = 0; k < starts->size(); ++k) {
      cfg.curves.starts.push_back(
          point((*starts)[k], cp + ".starts[" + std::to_string(k) + "]", cfg.domain.dimension()));
    }
  }
  cfg.curves.horizon = number(curves, "horizon", cp, cfg.curves.horizon);
  if (!(cfg.curves.horizon > 0.0)) fail(cp + ".horizon", "must be positive");
  cfg.curves.dt = number(curves, "dt", cp, cfg.curves.dt);
  cfg.curves.options.boundary_band = number(curves, "boundary_band", cp, 0.0);
  cfg.curves.options.escape_exponent =
      number(curves, "escape_exponent", cp, cfg.curves.options.escape_exponent);

  const std::string dp = root + ".diagnostics";
  const json& diag = section(doc, "diagnostics", root);
  cfg.diagnostics.probe = number(diag, "probe", dp, 0.0);
  cfg.diagnostics.directions = static_cast<int>(integer(diag, "directions", dp, 8));
  cfg.diagnostics.sandwich_tol = number(diag, "sandwich_tol", dp, 0.0);
  if (const json* deltas = member(diag, "deltas")) {
    if (!deltas->is_array()) fail(dp + ".deltas", "expected an array");
    cfg.diagnostics.deltas.clear();
    for (std::size_t k = 0; k < deltas->size(); ++k) {
      if (!(*deltas)[k].is_number()) {
        fail(dp + ".deltas[" + std::to_string(k) + "]", "expected a number");
      }
      cfg.diagnostics.deltas.push_back((*deltas)[k].get<double>());
    }
  }
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace hjsc::cli
