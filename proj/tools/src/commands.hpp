#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <hjsc/hjsc.hpp>
#include <json.hpp>

#include "config.hpp"

namespace hjsc::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNoConvergence = 3,
  kBadStart = 4,
};

struct GlobalOptions {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
  /// Previously written field to use instead of solving.
  std::optional<std::filesystem::path> field;
};

/// Start points probed by the example pipeline.
std::vector<Vec> default_starts(const Domain& domain);

/// The solved field: read from options.field when given, solved otherwise.
ValueField obtain_field(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out);

/// Machine-readable diagnostics for a field, extracting curves from the
/// configured starts.
nlohmann::json diagnostics_json(const ProblemConfig& cfg, const ValueField& u);

int cmd_solve(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out);
int cmd_curve(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out);
int cmd_diagnose(const ProblemConfig& cfg, const GlobalOptions& opts, std::ostream& out);
int cmd_example(const std::string& id, const GlobalOptions& opts, std::ostream& out);
int cmd_legendre(const PowerHamiltonian& h, std::ostream& out);

/// Parses `args` (without the program name), runs the command and maps
/// errors to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hjsc::cli
