#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hjsc/grid.hpp"
#include "hjsc/hamiltonian.hpp"
#include "hjsc/running_cost.hpp"
#include "hjsc/value_field.hpp"

namespace hjsc {

/// How the minimisation over controls inside one Bellman update is done.
enum class ControlSearch {
  kAuto,       // kCellExact in 1D, kSampled in 2D
  kSampled,    // min over a fixed set of sampled controls
  kCellExact,  // 1D only: exact min over |w| ≤ R, cell by cell
};

/// Semi-Lagrangian value-iteration parameters. Zero-valued fields are filled
/// in by resolve_config().
struct SolverConfig {
  double dt = 0.0;              // pseudo-time step; 0 → grid spacing
  double control_radius = 0.0;  // R; 0 → derived from the cost oscillation
  int control_samples = 0;      // 0 → 101 in 1D, 257 in 2D
  ControlSearch search = ControlSearch::kAuto;
  double tol = 1e-4;
  std::size_t max_iters = 200000;
  unsigned threads = 1;  // 0 → hardware concurrency
};

/// Speed bound 2·feedback_speed(H, g_max) with |g_max| = (2·osc/a)^{1/p},
/// where osc = max f − min f over the grid.
double control_radius_for(const PowerHamiltonian& h, double cost_oscillation);

/// Copy of `cfg` with defaults filled in and validated against the grid.
/// Throws ParameterError on invalid settings.
SolverConfig resolve_config(const SolverConfig& cfg, const Grid& grid, const PowerHamiltonian& h,
                            const RunningCost& f);

/// The discrete dynamic-programming operator
///   (Tu)(x) = min_w { (1 − e^{−Δt})·L(x, w) + e^{−Δt}·u(x − Δt·w) }
/// over controls |w| ≤ R whose foot point stays in Ω̄. The running cost is
/// weighted by the exact discount integral over one step, which keeps
/// constants fixed points. Stateless after construction; apply() is a Jacobi
/// sweep.
class BellmanOperator {
 public:
  BellmanOperator(std::shared_ptr<const Grid> grid, const PowerHamiltonian& h,
                  const RunningCost& f, const SolverConfig& cfg);

  const SolverConfig& config() const noexcept { return cfg_; }
  const std::vector<double>& cost_samples() const noexcept { return cost_; }
  const std::vector<Vec>& controls() const noexcept { return controls_; }

  void apply(std::span<const double> prev, std::span<double> next) const;
  ValueField operator()(const ValueField& prev) const;

  /// Value of the bracket for one node and one control, empty when the
  /// control is inadmissible.
  std::optional<double> control_value(const ValueField& prev, std::size_t node, Vec w) const;

 private:
  double node_sampled(std::span<const double> prev, std::size_t idx) const;
  double node_cell_exact(std::span<const double> prev, std::size_t idx) const;

  std::shared_ptr<const Grid> grid_;
  PowerHamiltonian h_;
  SolverConfig cfg_;
  std::vector<double> cost_;
  std::vector<Vec> controls_;
  std::vector<double> control_cost_;  // (1 − e^{−Δt})·C·|w|^q per control
  double discount_;
  double weight_;  // 1 − e^{−Δt}
};

/// One update of the operator on `prev`.
ValueField bellman_update(const ValueField& prev, const PowerHamiltonian& h, const RunningCost& f,
                          const SolverConfig& cfg);

struct Solution {
  ValueField field;
  std::size_t iterations = 0;
  double residual = 0.0;  // last sup-norm update
  SolverConfig config;    // resolved
};

/// Value iteration from u₀ ≡ max f until ‖u_{k+1} − u_k‖∞ ≤ tol·(1 − e^{−Δt}).
/// Throws ConvergenceError after max_iters.
Solution solve(const PowerHamiltonian& h, const RunningCost& f, const Grid& grid,
               const SolverConfig& cfg = {});

/// u(x) + a|D_h u(x)|^p − f(x) at a grid node, D_h taking per axis the
/// larger-magnitude admissible one-sided difference.
double pde_residual(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                    std::size_t node);

/// Cost values at all admissible nodes; exterior entries are NaN.
std::vector<double> sample_cost(const Grid& grid, const RunningCost& f);

}  // namespace hjsc
