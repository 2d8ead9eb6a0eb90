#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <hjsc/hjsc.hpp>
#include <json.hpp>

namespace hjsc::cli {

/// Malformed configuration; the message starts with the offending field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct CurveSettings {
  std::vector<Vec> starts;
  double horizon = 20.0;
  double dt = 0.0;  // 0 → half a grid spacing
  CurveOptions options;
};

struct ProblemConfig {
  std::optional<std::string> case_id;  // catalog case the problem came from
  PowerHamiltonian hamiltonian{2.0, 1.0};
  RunningCost cost = costs::constant(0.0);
  Domain domain = Domain::interval(-1.0, 1.0);
  double spacing = 1e-3;
  SolverConfig solver;
  CurveSettings curves;
  DiagnosticsOptions diagnostics;
};

/// Parses a configuration document. A top-level "case" key pre-fills the
/// hamiltonian, cost and domain from the catalog; explicit sections win.
ProblemConfig parse_config(const nlohmann::json& doc);
ProblemConfig load_config(const std::filesystem::path& path);

/// Configuration for a catalog case with every other setting at its default.
ProblemConfig config_for_case(const ExampleCase& c);

/// Cost family by name: abs-cone, power-well (c), quadratic, bump (m),
/// piecewise-f2, constant (value), compact-bump (width). In 2D all families
/// act on |x|.
RunningCost cost_family(const nlohmann::json& entry, const std::string& path);

}  // namespace hjsc::cli
