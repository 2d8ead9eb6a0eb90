#include "hjsc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Vec> probe_directions(int dimension, int count) {
  if (dimension == 1) return {{1.0, 0.0}};
  std::vector<Vec> dirs;
  for (int k = 0; k < count; ++k) {
    const double theta = std::numbers::pi * k / count;
    dirs.push_back({std::cos(theta), std::sin(theta)});
  }
  return dirs;
}

// Sup over directions of the centred second difference at an arbitrary point.
std::optional<double> second_difference_at(const ValueField& u, Vec x, double probe,
                                           const std::vector<Vec>& dirs) {
  const Domain& dom = u.grid().domain();
  const auto centre = u.interpolate(x);
  if (!centre) return std::nullopt;
  std::optional<double> best;
  for (Vec e : dirs) {
    const Vec a = x + probe * e;
    const Vec b = x - probe * e;
    if (!dom.in_closure(a) || !dom.in_closure(b)) continue;
    const auto ua = u.interpolate(a);
    const auto ub = u.interpolate(b);
    if (!ua || !ub) continue;
    const double d2 = (*ua - 2.0 * *centre + *ub) / (probe * probe);
    if (!best || d2 > *best) best = d2;
  }
  return best;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

double SecondDifferenceField::max() const {
  double m = 0.0;
  bool any = false;
  for (double v : values) {
    if (std::isfinite(v) && (!any || v > m)) {
      m = v;
      any = true;
    }
  }
  return m;
}

SecondDifferenceField second_difference_field(const ValueField& u, double probe, int directions) {
  const Grid& g = u.grid();
  if (!(probe >= 2.0 * g.min_spacing() * (1.0 - 1e-12))) {
    throw ParameterError("second-difference probe must be at least two grid spacings");
  }
  if (directions < 1) throw ParameterError("need at least one probe direction");
  const auto dirs = probe_directions(g.dimension(), directions);
  SecondDifferenceField out;
  out.probe = probe;
  out.values.assign(g.size(), kNaN);
  out.skipped.assign(g.size(), true);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.admissible(k)) continue;
    if (const auto d2 = second_difference_at(u, g.node(k), probe, dirs)) {
      out.values[k] = *d2;
      out.skipped[k] = false;
    }
  }
  return out;
}

double effective_min(const RunningCost& f, const Grid& grid) {
  if (f.min_value()) return *f.min_value();
  double best = std::numeric_limits<double>::infinity();
  Vec arg;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!grid.admissible(k)) continue;
    const double v = f(grid.node(k));
    if (v < best) {
      best = v;
      arg = grid.node(k);
    }
  }
  const Vec h = grid.spacing() / 4.0;
  const int ny = grid.dimension() == 2 ? 4 : 0;
  for (int a = -4; a <= 4; ++a) {
    for (int b = -ny; b <= ny; ++b) {
      const Vec p = arg + Vec{a * h.x, b * h.y};
      if (grid.domain().in_closure(p)) best = std::min(best, f(p));
    }
  }
  return best;
}

Condition3Result condition3_check(const RunningCost& f, const PowerHamiltonian& h,
                                  const Grid& grid) {
  Condition3Result out;
  out.min_value = effective_min(f, grid);
  out.profile.assign(grid.size(), kNaN);
  const Domain& dom = grid.domain();
  const double eps = 1e-14 * (1.0 + std::abs(out.min_value));

  double max_dist = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.tag(k) == NodeTag::kInterior) {
      max_dist = std::max(max_dist, dom.distance_to_boundary(grid.node(k)));
    }
  }
  std::vector<double> mid;
  double near_max = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.tag(k) != NodeTag::kInterior) continue;
    const Vec x = grid.node(k);
    const double gap = f(x) - out.min_value;
    if (gap <= eps) {
      ++out.excluded;
      continue;
    }
    const double ratio = norm(f.gradient(x)) / std::pow(gap, 1.0 / h.p());
    out.profile[k] = ratio;
    out.c_est = out.c_est ? std::max(*out.c_est, ratio) : ratio;
    const double d = dom.distance_to_boundary(x);
    if (d >= 0.25 * max_dist) mid.push_back(ratio);
    if (d <= 0.05 * dom.diameter()) near_max = std::max(near_max, ratio);
  }
  const double med = median(mid);
  out.divergent = std::isfinite(med) && near_max > 10.0 * med;
  return out;
}

double subsolution_constant(double c, double p) {
  if (!(c > 0.0)) throw ParameterError("growth constant C must be positive");
  if (!(p > 1.0 && p <= 2.0)) throw ParameterError("exponent p must lie in (1, 2]");
  if (std::isinf(c)) return 0.0;
  return std::min(0.5, std::pow(2.0, -1.0 / p) / c);
}

double hitting_time_floor(double c0, double p) {
  if (!(c0 > 0.0 && c0 <= 0.5)) throw ParameterError("c0 must lie in (0, 1/2]");
  if (!(p > 1.0 && p <= 2.0)) throw ParameterError("exponent p must lie in (1, 2]");
  return c0 / (p * (1.0 - c0));
}

SandwichReport sandwich_check(const ValueField& u, const RunningCost& f, double c0, double tol) {
  const Grid& g = u.grid();
  const double m = effective_min(f, g);
  SandwichReport out;
  out.tolerance = tol;
  out.lower_violation = -std::numeric_limits<double>::infinity();
  out.upper_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.admissible(k)) continue;
    const double fn = f(g.node(k)) - m;
    const double un = u[k] - m;
    out.lower_violation = std::max(out.lower_violation, c0 * fn - un);
    out.upper_violation = std::max(out.upper_violation, un - fn);
  }
  out.pass = out.lower_violation <= tol && out.upper_violation <= tol;
  return out;
}

std::vector<BoundComparison> semiconcavity_bound_check(const ValueField& u,
                                                       std::span<const MinimizingCurve> curves,
                                                       double probe) {
  const Grid& g = u.grid();
  const auto dirs = probe_directions(g.dimension(), 8);
  std::vector<BoundComparison> out;
  for (const MinimizingCurve& c : curves) {
    BoundComparison b;
    b.point = c.start;
    b.measured = second_difference_at(u, c.start, probe, dirs).value_or(kNaN);
    b.hitting = std::min(c.hitting_time, c.horizon);
    b.bound_shape = 1.0 + 1.0 / b.hitting;
    const double d = g.domain().distance_to_boundary(c.start);
    b.inverse_distance = d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity();
    b.ratio = b.measured / b.bound_shape;
    out.push_back(b);
  }
  return out;
}

std::vector<TrendPoint> boundary_trend(const SecondDifferenceField& sd, const Grid& grid,
                                       std::span<const double> deltas) {
  std::vector<TrendPoint> out;
  const double half = 0.5 * grid.min_spacing() * (1.0 + 1e-9);
  for (double delta : deltas) {
    TrendPoint t{delta, kNaN};
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!std::isfinite(sd.values[k])) continue;
      const double d = grid.domain().distance_to_boundary(grid.node(k));
      if (std::abs(d - delta) <= half) {
        if (!std::isfinite(t.max_second_difference) || sd.values[k] > t.max_second_difference) {
          t.max_second_difference = sd.values[k];
        }
      }
    }
    out.push_back(t);
  }
  return out;
}

double trend_variation(std::span<const TrendPoint> trend) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TrendPoint& t : trend) {
    if (!std::isfinite(t.max_second_difference)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, t.max_second_difference);
    hi = std::max(hi, t.max_second_difference);
  }
  if (trend.empty()) return 0.0;
  if (lo <= 0.0) return hi <= 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return hi / lo - 1.0;
}

bool strictly_increasing(std::span<const TrendPoint> trend) {
  for (std::size_t k = 1; k < trend.size(); ++k) {
    if (!(trend[k].max_second_difference > trend[k - 1].max_second_difference)) return false;
  }
  return !trend.empty();
}

double trend_growth(std::span<const TrendPoint> trend) {
  if (trend.empty()) return 0.0;
  const double first = trend.front().max_second_difference;
  double hi = first;
  for (const TrendPoint& t : trend) {
    if (!std::isfinite(t.max_second_difference)) return std::numeric_limits<double>::infinity();
    hi = std::max(hi, t.max_second_difference);
  }
  if (hi <= 0.0) return 0.0;
  if (first <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / first - 1.0;
}

DiagnosticsReport diagnose(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                           std::span<const MinimizingCurve> curves, double solver_tol,
                           const DiagnosticsOptions& options) {
  const Grid& g = u.grid();
  const double probe = options.probe > 0.0 ? options.probe : 4.0 * g.min_spacing();
  DiagnosticsReport r;
  r.second_diff = second_difference_field(u, probe, options.directions);
  r.condition3 = condition3_check(f, h, g);
  r.c0 = r.condition3.c_est ? subsolution_constant(*r.condition3.c_est, h.p()) : 0.5;
  r.hitting_lower_bound = r.c0 > 0.0 ? hitting_time_floor(r.c0, h.p()) : 0.0;
  const double tol = options.sandwich_tol > 0.0 ? options.sandwich_tol : 2.0 * solver_tol;
  r.sandwich = sandwich_check(u, f, r.c0, tol);
  r.boundary_blowup_trend = boundary_trend(r.second_diff, g, options.deltas);
  r.bounds = semiconcavity_bound_check(u, curves, probe);

  const auto& trend = r.boundary_blowup_trend;
  // Second differences that shrink toward ∂Ω are still bounded above, so only
  // growth counts against semiconcavity.
  r.verdicts.globally_semiconcave = trend_growth(trend) < options.semiconcave_variation;
  r.verdicts.blowup_at_boundary =
      strictly_increasing(trend) && trend.front().max_second_difference > 0.0 &&
      trend.back().max_second_difference / trend.front().max_second_difference >
          options.blowup_ratio;
  if (!curves.empty()) {
    r.verdicts.infinite_hitting_time = std::all_of(
        curves.begin(), curves.end(), [](const MinimizingCurve& c) { return !c.finite_hitting(); });
    r.verdicts.finite_hitting_time = std::all_of(
        curves.begin(), curves.end(), [](const MinimizingCurve& c) { return c.finite_hitting(); });
  }
  return r;
}

}  // namespace hjsc
