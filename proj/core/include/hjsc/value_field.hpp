#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hjsc/grid.hpp"
#include "hjsc/vec.hpp"

namespace hjsc {

/// Grid-sampled approximation of u. Exterior nodes carry NaN and are never
/// read by interpolation.
class ValueField {
 public:
  ValueField(std::shared_ptr<const Grid> grid, std::vector<double> values);

  static ValueField constant(std::shared_ptr<const Grid> grid, double c);
  static ValueField sample(std::shared_ptr<const Grid> grid, const std::function<double(Vec)>& fn);

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t idx) const noexcept { return values_[idx]; }

  /// Multilinear interpolation over the admissible corners of the cell
  /// containing p, weights renormalised when some corners are exterior.
  /// Empty when p leaves the bounding box or no corner with positive weight
  /// is admissible.
  std::optional<double> interpolate(Vec p) const;

  /// max |u − w| over admissible nodes; both fields must share a grid shape.
  double sup_distance(const ValueField& other) const;
  /// max |u − g| over admissible nodes.
  double sup_error(const std::function<double(Vec)>& exact) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
};

/// Interpolation on raw node values laid out like `grid` (see
/// ValueField::interpolate).
std::optional<double> interpolate(const Grid& grid, std::span<const double> values, Vec p);

/// Gradient of the interpolant by central differences of width one grid
/// spacing, falling back to one-sided differences near ∂Ω. Throws
/// StencilError if some axis has no usable difference.
Vec field_gradient(const ValueField& u, Vec p);

}  // namespace hjsc
