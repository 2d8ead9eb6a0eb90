#include "hjsc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

std::size_t nodes_along(double length, double target) {
  // Guard against length/target landing a hair above an integer.
  const double cells = std::ceil(length / target - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, cells)) + 1;
}

}  // namespace

Grid::Grid(Domain domain, double target_spacing) : domain_(std::move(domain)) {
  if (!(target_spacing > 0.0) || !std::isfinite(target_spacing)) {
    throw ParameterError("grid spacing must be positive");
  }
  if (target_spacing > domain_.diameter() / 4.0 * (1.0 + 1e-12)) {
    throw ParameterError("grid spacing must not exceed a quarter of the domain diameter");
  }
  const Box& box = domain_.bounding_box();
  nx_ = nodes_along(box.x_hi - box.x_lo, target_spacing);
  spacing_.x = (box.x_hi - box.x_lo) / static_cast<double>(nx_ - 1);
  if (dimension() == 2) {
    ny_ = nodes_along(box.y_hi - box.y_lo, target_spacing);
    spacing_.y = (box.y_hi - box.y_lo) / static_cast<double>(ny_ - 1);
  }

  tags_.resize(size());
  std::set<std::size_t> rows;
  std::set<std::size_t> cols;
  for (std::size_t idx = 0; idx < size(); ++idx) {
    switch (domain_.classify(node(idx))) {
      case Membership::kInterior:
        tags_[idx] = NodeTag::kInterior;
        rows.insert(i_of(idx));
        cols.insert(j_of(idx));
        break;
      case Membership::kBoundary:
        tags_[idx] = NodeTag::kBoundary;
        break;
      case Membership::kExterior:
        tags_[idx] = NodeTag::kExterior;
        break;
    }
  }
  if (rows.empty()) throw ConstructionError("degenerate domain: grid has no interior nodes");
  if (rows.size() < 3 || (dimension() == 2 && cols.size() < 3)) {
    throw ConstructionError("grid needs at least three interior nodes per axis");
  }
}

double Grid::min_spacing() const noexcept {
  return dimension() == 2 ? std::min(spacing_.x, spacing_.y) : spacing_.x;
}

double Grid::x_at(std::size_t i) const noexcept {
  const Box& box = domain_.bounding_box();
  return i + 1 == nx_ ? box.x_hi : box.x_lo + static_cast<double>(i) * spacing_.x;
}

double Grid::y_at(std::size_t j) const noexcept {
  if (dimension() == 1) return 0.0;
  const Box& box = domain_.bounding_box();
  return j + 1 == ny_ ? box.y_hi : box.y_lo + static_cast<double>(j) * spacing_.y;
}

Vec Grid::node(std::size_t idx) const noexcept { return {x_at(i_of(idx)), y_at(j_of(idx))}; }

std::size_t Grid::count(NodeTag t) const noexcept {
  return static_cast<std::size_t>(std::count(tags_.begin(), tags_.end(), t));
}

std::optional<std::size_t> Grid::find_node(Vec p) const {
  const Box& box = domain_.bounding_box();
  const double fi = (p.x - box.x_lo) / spacing_.x;
  const double ri = std::round(fi);
  if (ri < 0.0 || ri > static_cast<double>(nx_ - 1) || std::abs(fi - ri) > 0.25) return std::nullopt;
  std::size_t j = 0;
  if (dimension() == 2) {
    const double fj = (p.y - box.y_lo) / spacing_.y;
    const double rj = std::round(fj);
    if (rj < 0.0 || rj > static_cast<double>(ny_ - 1) || std::abs(fj - rj) > 0.25) {
      return std::nullopt;
    }
    j = static_cast<std::size_t>(rj);
  }
  return index(static_cast<std::size_t>(ri), j);
}

Grid build_grid(const Domain& domain, double target_spacing) { return Grid(domain, target_spacing); }

}  // namespace hjsc
