#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hjsc/curves.hpp"
#include "hjsc/grid.hpp"
#include "hjsc/hamiltonian.hpp"
#include "hjsc/running_cost.hpp"
#include "hjsc/value_field.hpp"

namespace hjsc {

/// Per-node sup over directions of (u(x+h) − 2u(x) + u(x−h)) / |h|².
/// Entries are NaN at skipped nodes (no direction with x ± h ∈ Ω̄).
struct SecondDifferenceField {
  double probe = 0.0;
  std::vector<double> values;
  std::vector<bool> skipped;

  /// Largest finite entry, 0 if there is none.
  double max() const;
};

/// Throws ParameterError when probe < 2·(grid spacing) or directions < 1.
/// In 1D `directions` is ignored (the axis is the only direction); in 2D the
/// directions are spread uniformly over a half-turn.
SecondDifferenceField second_difference_field(const ValueField& u, double probe,
                                              int directions = 8);

struct Condition3Result {
  /// sup |Df|/(f − min f)^{1/p} over interior nodes with f > min f; empty if
  /// every interior node sits at the minimum (not applicable).
  std::optional<double> c_est;
  std::vector<double> profile;  // NaN at excluded nodes
  std::size_t excluded = 0;
  double min_value = 0.0;
  /// Near-boundary profile exceeds 10× its mid-domain median.
  bool divergent = false;
};

Condition3Result condition3_check(const RunningCost& f, const PowerHamiltonian& h,
                                  const Grid& grid);

/// min f over the grid, refined 4× around the sampled argmin; the analytic
/// f.min_value() takes precedence when present.
double effective_min(const RunningCost& f, const Grid& grid);

/// min{1/2, 2^{−1/p}/C}; 0 for C = +∞. Throws ParameterError for C ≤ 0.
double subsolution_constant(double c, double p);

/// c₀/(p·(1 − c₀)). Throws ParameterError unless c₀ ∈ (0, 1/2].
double hitting_time_floor(double c0, double p);

struct SandwichReport {
  double lower_violation = 0.0;  // max (c₀·f − u), after subtracting min f
  double upper_violation = 0.0;  // max (u − f)
  double tolerance = 0.0;
  bool pass = true;
  double violation() const { return std::max(lower_violation, upper_violation) - tolerance; }
};

SandwichReport sandwich_check(const ValueField& u, const RunningCost& f, double c0, double tol);

struct BoundComparison {
  Vec point;
  double measured = 0.0;     // second-difference sup at the start point
  double hitting = 0.0;      // T = min(hitting_time, horizon)
  double bound_shape = 0.0;  // 1 + 1/T
  double inverse_distance = 0.0;
  double ratio = 0.0;        // measured / (1 + 1/T)
};

/// Local second-difference bound shape at each curve's start point.
std::vector<BoundComparison> semiconcavity_bound_check(const ValueField& u,
                                                       std::span<const MinimizingCurve> curves,
                                                       double probe);

struct TrendPoint {
  double delta = 0.0;
  double max_second_difference = 0.0;
};

/// Second-difference maxima over nodes at distance δ from ∂Ω (to within half
/// a grid spacing), one entry per δ.
std::vector<TrendPoint> boundary_trend(const SecondDifferenceField& sd, const Grid& grid,
                                       std::span<const double> deltas);

/// max over the trend divided by min, minus one.
double trend_variation(std::span<const TrendPoint> trend);
/// max_k trend[k] / trend[0] − 1: how far the maxima rise above the value
/// farthest from the boundary. ∞ if any entry is not finite.
double trend_growth(std::span<const TrendPoint> trend);
/// Strictly increasing along the δ-sequence (shrinking δ).
bool strictly_increasing(std::span<const TrendPoint> trend);

struct Verdicts {
  bool globally_semiconcave = false;
  bool blowup_at_boundary = false;
  bool infinite_hitting_time = false;
  bool finite_hitting_time = false;
};

struct DiagnosticsOptions {
  double probe = 0.0;  // 0 → 4 grid spacings
  int directions = 8;
  std::vector<double> deltas{0.1, 0.05, 0.025, 0.0125};
  double sandwich_tol = 0.0;  // 0 → 2·solver tol supplied by the caller
  double semiconcave_variation = 0.25;
  double blowup_ratio = 3.0;
};

struct DiagnosticsReport {
  SecondDifferenceField second_diff;
  Condition3Result condition3;
  double c0 = 0.0;
  double hitting_lower_bound = 0.0;
  SandwichReport sandwich;
  std::vector<TrendPoint> boundary_blowup_trend;
  std::vector<BoundComparison> bounds;
  Verdicts verdicts;
};

/// Runs every check on one solved field and its curves.
DiagnosticsReport diagnose(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                           std::span<const MinimizingCurve> curves, double solver_tol,
                           const DiagnosticsOptions& options = {});

}  // namespace hjsc
