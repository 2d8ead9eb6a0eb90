#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hjsc/diagnostics.hpp"
#include "hjsc/domain.hpp"
#include "hjsc/hamiltonian.hpp"
#include "hjsc/ode_reference.hpp"
#include "hjsc/running_cost.hpp"

namespace hjsc {

/// A worked problem with its reference data and expected qualitative
/// behaviour.
struct ExampleCase {
  std::string id;
  std::string title;
  PowerHamiltonian hamiltonian;
  RunningCost cost;
  Domain domain;
  /// Reference solution; empty when none is known.
  std::function<double(Vec)> reference_u;
  /// Interval on which reference_u is claimed; nullopt means all of Ω̄.
  std::optional<std::pair<double, double>> reference_window;
  /// High-accuracy ODE profile backing reference_u, when there is one.
  std::shared_ptr<const Reference1D> reference_profile;
  /// Closed-form minimising curve s ↦ ξ(s) from a start point.
  std::function<Vec(Vec, double)> reference_curve;
  Verdicts expected;
};

/// E1: a=1, p=2, f = 1−|x|; E2: a=1/2, p=2, f = (|x|−½)²·1{|x|≥½};
/// E3: a=1/2, p=2, f = x²; E4: a=1/2, p=2, piecewise f₂;
/// E5: a=1, p=2, f = (1−x²)²; E5-p1.5: a=1, p=3/2, f = (1−x²)⁴. All on (−1, 1).
std::vector<ExampleCase> catalog();
std::optional<ExampleCase> find_case(std::string_view id);

/// A curve s ↦ γ(s) with its derivative; `breakpoints` are the times where
/// γ' may jump.
struct Path {
  std::function<Vec(double)> position;
  std::function<Vec(double)> velocity;
  std::vector<double> breakpoints;
};

/// Linear interpolation through (times[k], points[k]), constant after the
/// last time. times must start at 0 and increase.
Path piecewise_linear_path(std::vector<double> times, std::vector<Vec> points);

/// Random admissible competitor from `start`: one to four straight legs to
/// points drawn in Ω̄, with random leg durations, then frozen.
Path random_competitor(const Domain& domain, Vec start, std::mt19937_64& rng);

/// ∫₀^S e^{−s}·L(γ(s), −γ'(s)) ds by adaptive Simpson quadrature, plus the
/// tail e^{−S}·f(γ(S)) for a path frozen after S. Throws AdmissibilityError if
/// the path leaves Ω̄.
double path_cost(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain,
                 const Path& path, double horizon, double tol = 1e-12);

}  // namespace hjsc
