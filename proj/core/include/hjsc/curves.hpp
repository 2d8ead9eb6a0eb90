#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "hjsc/domain.hpp"
#include "hjsc/hamiltonian.hpp"
#include "hjsc/running_cost.hpp"
#include "hjsc/value_field.hpp"

namespace hjsc {

inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

struct CurveOptions {
  /// ε_∂; 0 → two grid spacings for extract_curve, 1e-3·diam for hamilton_ode.
  double boundary_band = 0.0;
  /// Below this gradient norm the curve is continued as constant;
  /// 0 → 1e-8·(1 + max f).
  double gradient_floor = 0.0;
  /// At a vanishing gradient the curve rests only if f − u ≤ rest_gap;
  /// otherwise it leaves along the steepest one-sided descent of u.
  /// 0 → 1e-3·(1 + max f).
  double rest_gap = 0.0;
  /// Approach exponent α in speed ∝ dist^α at which an approach to ∂Ω is
  /// treated as asymptotic rather than a finite-time hit. α < 1 reaches the
  /// boundary in finite time, α ≥ 1 does not.
  double escape_exponent = 0.75;
  /// Band [ε_∂, fit_span·ε_∂] of distances used to fit α.
  double fit_span = 8.0;
};

/// Time-stamped trajectory with velocity, costate η = e^{−s}·q·C·|ξ̇|^{q−2}·ξ̇
/// and the discounted cumulative cost ∫₀^s e^{−τ}·L(ξ, −ξ̇) dτ.
struct MinimizingCurve {
  Vec start;
  double horizon = 0.0;
  double boundary_band = 0.0;
  std::vector<double> times;
  std::vector<Vec> positions;
  std::vector<Vec> velocities;
  std::vector<Vec> costates;
  std::vector<double> running_cost;
  /// Hitting time of ∂Ω, kInfiniteTime if the curve does not reach it in
  /// finite time before the horizon.
  double hitting_time = kInfiniteTime;
  /// First time with dist(ξ, ∂Ω) ≤ ε_∂, whether or not it counts as a hit.
  std::optional<double> band_entry_time;
  /// Fitted approach exponent at band entry, when enough samples existed.
  std::optional<double> approach_exponent;

  std::size_t size() const noexcept { return times.size(); }
  bool finite_hitting() const noexcept { return hitting_time < kInfiniteTime; }
  double end_time() const noexcept { return times.empty() ? 0.0 : times.back(); }
  Vec position_at(double s) const;
  double cost_at(double s) const;
};

/// Integrates ξ̇ = feedback_velocity(H, ∇u(ξ)) with Heun's method, ∇u taken
/// from central differences of the interpolated field. Stops at the horizon
/// or at a finite-time boundary hit. dt_curve = 0 → half a grid spacing.
/// Throws DomainError if x0 is not interior.
MinimizingCurve extract_curve(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                              Vec x0, double horizon, double dt_curve = 0.0,
                              const CurveOptions& options = {});

/// Integrates ξ̇ = (e^s|η|/(qC))^{1/(q−1)}·η/|η|, η̇ = e^{−s}·Df(ξ) with RK4.
/// Stops at the horizon or when the curve enters the boundary band; throws
/// RunawayError if a step lands outside the bounding box.
MinimizingCurve hamilton_ode(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain,
                             Vec x0, Vec eta0, double horizon, double dt_curve,
                             const CurveOptions& options = {});

/// Builds a curve from given samples (costates and costs filled in).
MinimizingCurve make_curve(const PowerHamiltonian& h, const RunningCost& f,
                           std::vector<double> times, std::vector<Vec> positions,
                           std::vector<Vec> velocities);

struct ElResidual {
  double residual = 0.0;
  bool stationary = false;
  std::size_t evaluated = 0;
};

/// sup_k |d/ds(e^{−s}·q·C·|ξ̇|^{q−2}·ξ̇) − e^{−s}·Df(ξ)| over samples where
/// the speed and both neighbours' speeds exceed `speed_floor`.
ElResidual el_residual(const MinimizingCurve& curve, const PowerHamiltonian& h,
                       const RunningCost& f, double speed_floor = 1e-8);

/// u(x₀) − [cost(s) + e^{−s}·u(ξ(s))].
double dpp_defect(const MinimizingCurve& curve, const ValueField& u, double s);

struct EnergyBalance {
  double t1 = 0.0;           // argmax of f along the curve
  double integral = 0.0;     // ∫_{t1}^{end} p·(f(ξ) − u(ξ)) ds
  double value_at_t1 = 0.0;  // u(ξ(t1))
};

/// Quadrature of p·(f − u) along the curve from the argmax of f.
EnergyBalance energy_balance(const MinimizingCurve& curve, const ValueField& u,
                             const RunningCost& f, const PowerHamiltonian& h);

}  // namespace hjsc
