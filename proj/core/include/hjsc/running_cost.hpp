#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "hjsc/domain.hpp"
#include "hjsc/vec.hpp"

namespace hjsc {

/// The running cost f together with its gradient and structural metadata.
class RunningCost {
 public:
  using ValueFn = std::function<double(Vec)>;
  using GradientFn = std::function<Vec(Vec)>;

  RunningCost(std::string name, ValueFn value, GradientFn gradient,
              std::optional<double> min_value, bool boundary_is_min,
              std::optional<double> semiconcavity_hint = std::nullopt);

  double operator()(Vec x) const { return value_(x); }
  Vec gradient(Vec x) const { return gradient_(x); }

  const std::string& name() const noexcept { return name_; }
  /// Analytic min of f over Ω̄ when known.
  std::optional<double> min_value() const noexcept { return min_value_; }
  bool boundary_is_min() const noexcept { return boundary_is_min_; }
  std::optional<double> semiconcavity_hint() const noexcept { return semiconcavity_hint_; }

  /// Copy of this cost scaled by `factor` > 0.
  RunningCost scaled(double factor) const;

 private:
  std::string name_;
  ValueFn value_;
  GradientFn gradient_;
  std::optional<double> min_value_;
  bool boundary_is_min_;
  std::optional<double> semiconcavity_hint_;
};

struct GradientCheck {
  double max_error = 0.0;  // worst |Df − FD| / (1 + |Df|)
  Vec worst_point;
  bool ok = true;
};

/// Compares `f.gradient` with central differences at `points` random interior
/// points. Throws ParameterError when the scaled error exceeds `tolerance`.
GradientCheck validate_gradient(const RunningCost& f, const Domain& domain,
                                std::uint64_t seed = 0, int points = 25,
                                double tolerance = 1e-4);

/// Builtin cost families. In 2D they are radial in r = |x|.
namespace costs {

/// 1 − |x|.
RunningCost abs_cone();
/// (|x| − c)² for |x| ≥ c, 0 otherwise.
RunningCost power_well(double c = 0.5);
/// |x|².
RunningCost quadratic();
/// (1 − |x|²)^{2m}.
RunningCost bump(int m = 1);
/// |x|² for |x| ≤ 1/2, −|x|/4 + 3/8 outside.
RunningCost piecewise_f2();
RunningCost constant(double c);
/// exp(1 − 1/(1 − (|x|/w)²)) for |x| < w, 0 otherwise; flat near ∂Ω when w < 1.
RunningCost compact_bump(double width = 0.8);

}  // namespace costs
}  // namespace hjsc
