#include "hjsc/value_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Cell index and local coordinate of `v` along an axis with `n` nodes.
std::pair<std::size_t, double> locate(double v, double lo, double h, std::size_t n) {
  double t = (v - lo) / h;
  auto i = static_cast<std::ptrdiff_t>(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 2);
  return {static_cast<std::size_t>(i), std::clamp(t - static_cast<double>(i), 0.0, 1.0)};
}

}  // namespace

ValueField::ValueField(std::shared_ptr<const Grid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ParameterError("value field needs a grid");
  if (values_.size() != grid_->size()) throw ParameterError("value count does not match grid");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!grid_->admissible(k)) values_[k] = kNaN;
  }
}

ValueField ValueField::constant(std::shared_ptr<const Grid> grid, double c) {
  std::vector<double> v(grid->size(), c);
  return ValueField(std::move(grid), std::move(v));
}

ValueField ValueField::sample(std::shared_ptr<const Grid> grid,
                              const std::function<double(Vec)>& fn) {
  std::vector<double> v(grid->size(), kNaN);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (grid->admissible(k)) v[k] = fn(grid->node(k));
  }
  return ValueField(std::move(grid), std::move(v));
}

std::optional<double> ValueField::interpolate(Vec p) const {
  return hjsc::interpolate(*grid_, values_, p);
}

std::optional<double> interpolate(const Grid& g, std::span<const double> values_, Vec p) {
  const Box& box = g.domain().bounding_box();
  const double slack = 1e-12 * (1.0 + g.domain().diameter());
  if (p.x < box.x_lo - slack || p.x > box.x_hi + slack) return std::nullopt;
  const auto [i, tx] = locate(p.x, box.x_lo, g.spacing().x, g.nx());

  if (g.dimension() == 1) {
    const std::size_t a = g.index(i);
    const std::size_t b = g.index(i + 1);
    double wsum = 0.0;
    double acc = 0.0;
    if (g.admissible(a) && 1.0 - tx > 0.0) {
      wsum += 1.0 - tx;
      acc += (1.0 - tx) * values_[a];
    }
    if (g.admissible(b) && tx > 0.0) {
      wsum += tx;
      acc += tx * values_[b];
    }
    if (wsum <= 0.0) return std::nullopt;
    return acc / wsum;
  }

  if (p.y < box.y_lo - slack || p.y > box.y_hi + slack) return std::nullopt;
  const auto [j, ty] = locate(p.y, box.y_lo, g.spacing().y, g.ny());
  const std::size_t corner[4] = {g.index(i, j), g.index(i + 1, j), g.index(i, j + 1),
                                 g.index(i + 1, j + 1)};
  const double weight[4] = {(1.0 - tx) * (1.0 - ty), tx * (1.0 - ty), (1.0 - tx) * ty, tx * ty};
  double wsum = 0.0;
  double acc = 0.0;
  for (int c = 0; c < 4; ++c) {
    if (weight[c] > 0.0 && g.admissible(corner[c])) {
      wsum += weight[c];
      acc += weight[c] * values_[corner[c]];
    }
  }
  if (wsum <= 0.0) return std::nullopt;
  return acc / wsum;
}

double ValueField::sup_distance(const ValueField& other) const {
  if (other.values_.size() != values_.size()) throw ParameterError("fields live on different grids");
  double d = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (grid_->admissible(k)) d = std::max(d, std::abs(values_[k] - other.values_[k]));
  }
  return d;
}

double ValueField::sup_error(const std::function<double(Vec)>& exact) const {
  double d = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (grid_->admissible(k)) d = std::max(d, std::abs(values_[k] - exact(grid_->node(k))));
  }
  return d;
}

Vec field_gradient(const ValueField& u, Vec p) {
  const Grid& g = u.grid();
  const Domain& dom = g.domain();
  const auto here = u.interpolate(p);
  if (!here) throw StencilError("gradient requested where the field has no admissible data");

  auto axis_derivative = [&](Vec e, double h) -> double {
    const Vec fwd_pt = p + h * e;
    const Vec bwd_pt = p - h * e;
    std::optional<double> fwd;
    std::optional<double> bwd;
    if (dom.in_closure(fwd_pt)) fwd = u.interpolate(fwd_pt);
    if (dom.in_closure(bwd_pt)) bwd = u.interpolate(bwd_pt);
    if (fwd && bwd) return (*fwd - *bwd) / (2.0 * h);
    if (fwd) return (*fwd - *here) / h;
    if (bwd) return (*here - *bwd) / h;
    throw StencilError("no admissible finite-difference stencil for the field gradient");
  };

  Vec grad;
  grad.x = axis_derivative({1.0, 0.0}, g.spacing().x);
  if (g.dimension() == 2) grad.y = axis_derivative({0.0, 1.0}, g.spacing().y);
  return grad;
}

}  // namespace hjsc
