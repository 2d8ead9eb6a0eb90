#include "hjsc/running_cost.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hjsc/errors.hpp"

namespace hjsc {

RunningCost::RunningCost(std::string name, ValueFn value, GradientFn gradient,
                         std::optional<double> min_value, bool boundary_is_min,
                         std::optional<double> semiconcavity_hint)
    : name_(std::move(name)),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      min_value_(min_value),
      boundary_is_min_(boundary_is_min),
      semiconcavity_hint_(semiconcavity_hint) {
  if (!value_ || !gradient_) throw ParameterError("running cost needs both f and Df");
}

RunningCost RunningCost::scaled(double factor) const {
  if (!(factor > 0.0)) throw ParameterError("cost scale factor must be positive");
  auto v = value_;
  auto g = gradient_;
  std::optional<double> m;
  if (min_value_) m = factor * *min_value_;
  std::optional<double> hint;
  if (semiconcavity_hint_) hint = factor * *semiconcavity_hint_;
  std::ostringstream name;
  name << factor << "*" << name_;
  return RunningCost(
      name.str(), [v, factor](Vec x) { return factor * v(x); },
      [g, factor](Vec x) { return factor * g(x); }, m, boundary_is_min_, hint);
}

GradientCheck validate_gradient(const RunningCost& f, const Domain& domain, std::uint64_t seed,
                                int points, double tolerance) {
  std::mt19937_64 rng(seed);
  const Box& box = domain.bounding_box();
  std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
  std::uniform_real_distribution<double> uy(box.y_lo, box.y_hi);
  const double h = 1e-6 * std::max(1.0, domain.diameter());

  GradientCheck check;
  int accepted = 0;
  for (int attempt = 0; accepted < points && attempt < 1000 * points; ++attempt) {
    Vec x{ux(rng), domain.dimension() == 2 ? uy(rng) : 0.0};
    if (domain.distance_to_boundary(x) <= 2.0 * h) continue;
    ++accepted;
    const Vec g = f.gradient(x);
    Vec fd;
    fd.x = (f(x + Vec{h, 0.0}) - f(x - Vec{h, 0.0})) / (2.0 * h);
    if (domain.dimension() == 2) fd.y = (f(x + Vec{0.0, h}) - f(x - Vec{0.0, h})) / (2.0 * h);
    const double err = norm(g - fd) / (1.0 + norm(g));
    if (err > check.max_error) {
      check.max_error = err;
      check.worst_point = x;
    }
  }
  check.ok = check.max_error <= tolerance;
  if (!check.ok) {
    std::ostringstream msg;
    msg << "gradient of cost '" << f.name() << "' disagrees with finite differences at ("
        << check.worst_point.x << ", " << check.worst_point.y << "): scaled error "
        << check.max_error;
    throw ParameterError(msg.str());
  }
  return check;
}

namespace costs {
namespace {

// Radial cost r ↦ φ(r) with gradient φ'(r)·x/r.
RunningCost radial(std::string name, std::function<double(double)> phi,
                   std::function<double(double)> dphi, std::optional<double> min_value,
                   bool boundary_is_min, std::optional<double> hint = std::nullopt) {
  return RunningCost(
      std::move(name), [phi](Vec x) { return phi(norm(x)); },
      [dphi](Vec x) -> Vec {
        const double r = norm(x);
        if (r == 0.0) return {};
        return (dphi(r) / r) * x;
      },
      min_value, boundary_is_min, hint);
}

}  // namespace

RunningCost abs_cone() {
  return radial(
      "abs-cone", [](double r) { return 1.0 - r; }, [](double) { return -1.0; }, 0.0, true, 0.0);
}

RunningCost power_well(double c) {
  if (!(c >= 0.0)) throw ParameterError("power-well offset must be non-negative");
  return radial(
      "power-well", [c](double r) { return r >= c ? (r - c) * (r - c) : 0.0; },
      [c](double r) { return r >= c ? 2.0 * (r - c) : 0.0; }, 0.0, false);
}

RunningCost quadratic() {
  return RunningCost(
      "quadratic", [](Vec x) { return dot(x, x); }, [](Vec x) { return 2.0 * x; }, 0.0, false,
      2.0);
}

RunningCost bump(int m) {
  if (m < 1) throw ParameterError("bump exponent m must be at least 1");
  const double e = 2.0 * m;
  return RunningCost(
      "bump", [e](Vec x) { return std::pow(std::max(0.0, 1.0 - dot(x, x)), e); },
      [e](Vec x) -> Vec {
        const double s = std::max(0.0, 1.0 - dot(x, x));
        return (-2.0 * e * std::pow(s, e - 1.0)) * x;
      },
      0.0, true);
}

RunningCost piecewise_f2() {
  return radial(
      "piecewise-f2", [](double r) { return r <= 0.5 ? r * r : -0.25 * r + 0.375; },
      [](double r) { return r <= 0.5 ? 2.0 * r : -0.25; }, 0.0, false);
}

RunningCost constant(double c) {
  return RunningCost(
      "constant", [c](Vec) { return c; }, [](Vec) { return Vec{}; }, c, true, 0.0);
}

RunningCost compact_bump(double width) {
  if (!(width > 0.0)) throw ParameterError("compact bump width must be positive");
  auto phi = [width](double r) {
    const double s = r / width;
    return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
  };
  auto dphi = [width, phi](double r) {
    const double s = r / width;
    if (s >= 1.0) return 0.0;
    const double d = 1.0 - s * s;
    return phi(r) * (-2.0 * s / (d * d)) / width;
  };
  return radial("compact-bump", phi, dphi, 0.0, true);
}

}  // namespace costs
}  // namespace hjsc
