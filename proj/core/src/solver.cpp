#include "hjsc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hjsc/errors.hpp"
#include "parallel.hpp"

namespace hjsc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::pair<double, double> admissible_range(const Grid& grid, const std::vector<double>& cost) {
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t k = 0; k < cost.size(); ++k) {
    if (!grid.admissible(k)) continue;
    lo = std::min(lo, cost[k]);
    hi = std::max(hi, cost[k]);
  }
  return {lo, hi};
}

std::vector<Vec> make_controls(int dimension, int samples, double radius) {
  std::vector<Vec> controls;
  if (dimension == 1) {
    bool has_zero = false;
    for (int k = 0; k < samples; ++k) {
      const double w = -radius + 2.0 * radius * k / (samples - 1);
      has_zero = has_zero || (2 * k == samples - 1);
      controls.push_back({2 * k == samples - 1 ? 0.0 : w, 0.0});
    }
    if (!has_zero) controls.push_back({});
    return controls;
  }
  // Zero control plus rings, uniform in angle; ring radii grow quadratically
  // so slow speeds are resolved.
  controls.push_back({});
  const int rings = std::max(1, static_cast<int>(std::sqrt((samples - 1) / 4.0)));
  const int angles = (samples - 1) / rings;
  for (int r = 1; r <= rings; ++r) {
    const double frac = static_cast<double>(r) / rings;
    const double speed = radius * frac * frac;
    for (int a = 0; a < angles; ++a) {
      const double theta = 2.0 * std::numbers::pi * a / angles;
      controls.push_back({speed * std::cos(theta), speed * std::sin(theta)});
    }
  }
  return controls;
}

}  // namespace

std::vector<double> sample_cost(const Grid& grid, const RunningCost& f) {
  std::vector<double> out(grid.size(), kNaN);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (grid.admissible(k)) out[k] = f(grid.node(k));
  }
  return out;
}

double control_radius_for(const PowerHamiltonian& h, double cost_oscillation) {
  if (!(cost_oscillation >= 0.0)) throw ParameterError("cost oscillation must be non-negative");
  const double g_max = std::pow(2.0 * cost_oscillation / h.a(), 1.0 / h.p());
  return 2.0 * feedback_speed(h, {g_max, 0.0});
}

SolverConfig resolve_config(const SolverConfig& cfg, const Grid& grid, const PowerHamiltonian& h,
                            const RunningCost& f) {
  SolverConfig out = cfg;
  const int dim = grid.dimension();
  if (out.dt == 0.0) out.dt = grid.min_spacing();
  if (!(out.dt > 0.0 && out.dt < 1.0)) throw ParameterError("solver dt must lie in (0, 1)");
  if (out.control_samples == 0) out.control_samples = dim == 1 ? 101 : 257;
  if (out.control_samples < (dim == 1 ? 9 : 33)) {
    throw ParameterError(dim == 1 ? "control_samples must be at least 9 in 1D"
                                  : "control_samples must be at least 33 in 2D");
  }
  if (out.search == ControlSearch::kAuto) {
    out.search = dim == 1 ? ControlSearch::kCellExact : ControlSearch::kSampled;
  }
  if (out.search == ControlSearch::kCellExact && dim != 1) {
    throw ParameterError("exact per-cell control search is only available in 1D");
  }
  if (out.control_radius == 0.0) {
    const auto [lo, hi] = admissible_range(grid, sample_cost(grid, f));
    out.control_radius = control_radius_for(h, hi - lo);
    if (out.control_radius == 0.0) out.control_radius = grid.min_spacing() / out.dt;
  }
  if (!(out.control_radius > 0.0)) throw ParameterError("control radius must be positive");
  if (!(out.tol > 0.0)) throw ParameterError("solver tol must be positive");
  if (out.max_iters == 0) throw ParameterError("max_iters must be positive");
  out.threads = detail::resolve_threads(out.threads);
  return out;
}

BellmanOperator::BellmanOperator(std::shared_ptr<const Grid> grid, const PowerHamiltonian& h,
                                 const RunningCost& f, const SolverConfig& cfg)
    : grid_(std::move(grid)),
      h_(h),
      cfg_(resolve_config(cfg, *grid_, h, f)),
      cost_(sample_cost(*grid_, f)),
      discount_(std::exp(-cfg_.dt)),
      weight_(-std::expm1(-cfg_.dt)) {
  controls_ = make_controls(grid_->dimension(), cfg_.control_samples, cfg_.control_radius);
  control_cost_.reserve(controls_.size());
  for (Vec w : controls_) control_cost_.push_back(weight_ * h_.kinetic_term(w));
}

std::optional<double> BellmanOperator::control_value(const ValueField& prev, std::size_t node,
                                                     Vec w) const {
  const Vec x = grid_->node(node);
  const Vec foot = x - cfg_.dt * w;
  if (norm(w) > cfg_.control_radius * (1.0 + 1e-12)) return std::nullopt;
  if (!grid_->domain().in_closure(foot)) return std::nullopt;
  const auto u = prev.interpolate(foot);
  if (!u) return std::nullopt;
  return weight_ * (h_.kinetic_term(w) + cost_[node]) + discount_ * *u;
}

double BellmanOperator::node_sampled(std::span<const double> prev, std::size_t idx) const {
  const Vec x = grid_->node(idx);
  const Domain& dom = grid_->domain();
  double best = kInf;
  for (std::size_t c = 0; c < controls_.size(); ++c) {
    const Vec foot = x - cfg_.dt * controls_[c];
    if (!dom.in_closure(foot)) continue;
    const auto u = interpolate(*grid_, prev, foot);
    if (!u) continue;
    const double v = control_cost_[c] + discount_ * *u;
    if (v < best) best = v;
  }
  return best + weight_ * cost_[idx];
}

// On the cell [x_j, x_{j+1}] the interpolant is affine, so the bracket is
// convex in w (q ≥ 2) and its minimiser is the clamped stationary point
// (1 − e^{−Δt})·q·C·|w|^{q−2}·w = e^{−Δt}·Δt·slope.
double BellmanOperator::node_cell_exact(std::span<const double> prev, std::size_t idx) const {
  const Grid& g = *grid_;
  const double h = g.spacing().x;
  const double x0 = g.x_at(0);
  const double x = g.x_at(g.i_of(idx));
  const double dt = cfg_.dt;
  const double reach = cfg_.control_radius * dt;
  const double y_lo = std::max(x - reach, x0);
  const double y_hi = std::min(x + reach, g.x_at(g.nx() - 1));
  const std::size_t last_cell = g.nx() - 2;
  auto cell_of = [&](double y) {
    const auto c = static_cast<std::ptrdiff_t>(std::floor((y - x0) / h));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(c, 0, last_cell));
  };
  const double qc = h_.q() * h_.legendre_coeff();
  const double inv_exp = 1.0 / (h_.q() - 1.0);
  const bool quadratic = h_.q() == 2.0;

  double best = kInf;
  for (std::size_t j = cell_of(y_lo); j <= cell_of(y_hi); ++j) {
    if (!g.admissible(j) || !g.admissible(j + 1)) continue;
    const double xj = g.x_at(j);
    const double xj1 = g.x_at(j + 1);
    const double seg_lo = std::max(xj, y_lo);
    const double seg_hi = std::min(xj1, y_hi);
    if (seg_lo > seg_hi) continue;
    const double slope = (prev[j + 1] - prev[j]) / (xj1 - xj);
    const double target = discount_ * dt * slope / (weight_ * qc);
    double w = quadratic ? target : std::copysign(std::pow(std::abs(target), inv_exp), target);
    w = std::clamp(w, (x - seg_hi) / dt, (x - seg_lo) / dt);
    const double y = x - dt * w;
    const double kinetic = quadratic ? h_.legendre_coeff() * w * w : h_.kinetic_term({w, 0.0});
    const double v = weight_ * kinetic + discount_ * (prev[j] + slope * (y - xj));
    best = std::min(best, v);
  }
  return best + weight_ * cost_[idx];
}

void BellmanOperator::apply(std::span<const double> prev, std::span<double> next) const {
  const Grid& g = *grid_;
  if (prev.size() != g.size() || next.size() != g.size()) {
    throw ParameterError("Bellman update on a field of the wrong size");
  }
  const bool exact = cfg_.search == ControlSearch::kCellExact;
  detail::parallel_for(g.size(), cfg_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      if (!g.admissible(k)) {
        next[k] = kNaN;
        continue;
      }
      next[k] = exact ? node_cell_exact(prev, k) : node_sampled(prev, k);
    }
  });
}

ValueField BellmanOperator::operator()(const ValueField& prev) const {
  std::vector<double> next(grid_->size());
  apply(prev.values(), next);
  return ValueField(grid_, std::move(next));
}

ValueField bellman_update(const ValueField& prev, const PowerHamiltonian& h, const RunningCost& f,
                          const SolverConfig& cfg) {
  return BellmanOperator(prev.grid_ptr(), h, f, cfg)(prev);
}

Solution solve(const PowerHamiltonian& h, const RunningCost& f, const Grid& grid,
               const SolverConfig& cfg) {
  auto shared = std::make_shared<const Grid>(grid);
  const BellmanOperator op(shared, h, f, cfg);
  const auto [f_min, f_max] = admissible_range(*shared, op.cost_samples());
  (void)f_min;
  if (!std::isfinite(f_max)) throw ParameterError("running cost is not finite on the grid");

  std::vector<double> current(shared->size(), f_max);
  std::vector<double> next(shared->size());
  const double threshold = op.config().tol * (1.0 - std::exp(-op.config().dt));
  double residual = kInf;
  for (std::size_t it = 1; it <= op.config().max_iters; ++it) {
    op.apply(current, next);
    residual = 0.0;
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (shared->admissible(k)) residual = std::max(residual, std::abs(next[k] - current[k]));
    }
    current.swap(next);
    if (residual <= threshold) {
      return Solution{ValueField(shared, std::move(current)), it, residual, op.config()};
    }
  }
  throw ConvergenceError(residual, op.config().max_iters);
}

double pde_residual(const ValueField& u, const PowerHamiltonian& h, const RunningCost& f,
                    std::size_t node) {
  const Grid& g = u.grid();
  if (node >= g.size() || !g.admissible(node)) {
    throw DomainError("pde_residual needs an admissible node");
  }
  const std::size_t i = g.i_of(node);
  const std::size_t j = g.j_of(node);
  const double here = u[node];

  bool any = false;
  auto axis = [&](std::size_t pos, std::size_t n, auto neighbour, double spacing) {
    std::optional<double> fwd;
    std::optional<double> bwd;
    if (pos + 1 < n && g.admissible(neighbour(pos + 1))) fwd = (u[neighbour(pos + 1)] - here) / spacing;
    if (pos > 0 && g.admissible(neighbour(pos - 1))) bwd = (here - u[neighbour(pos - 1)]) / spacing;
    if (!fwd && !bwd) return 0.0;
    any = true;
    if (fwd && bwd) return std::abs(*fwd) >= std::abs(*bwd) ? *fwd : *bwd;
    return fwd ? *fwd : *bwd;
  };

  Vec d;
  d.x = axis(i, g.nx(), [&](std::size_t ii) { return g.index(ii, j); }, g.spacing().x);
  if (g.dimension() == 2) {
    d.y = axis(j, g.ny(), [&](std::size_t jj) { return g.index(i, jj); }, g.spacing().y);
  }
  if (!any) throw StencilError("node has no admissible neighbours");
  return here + h.momentum_term(d) - f(g.node(node));
}

}  // namespace hjsc
