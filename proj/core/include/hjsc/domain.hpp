#pragma once

#include <functional>
#include <memory>

#include "hjsc/vec.hpp"

namespace hjsc {

enum class DomainKind { kInterval, kRectangle, kImplicit };

enum class Membership { kInterior, kBoundary, kExterior };

struct Box {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// Open, bounded, connected region Ω together with its closure test.
///
/// Every domain is described by a level function φ with Ω = {φ < 0}. For
/// intervals and rectangles φ is the exact signed distance; for implicit
/// domains it only needs to be distance-like near ∂Ω. Points with
/// |φ| ≤ boundary_tolerance() are classified as boundary points.
class Domain {
 public:
  using LevelFunction = std::function<double(Vec)>;

  static Domain interval(double lo, double hi, double boundary_tolerance = -1.0);
  static Domain rectangle(double x_lo, double x_hi, double y_lo, double y_hi,
                          double boundary_tolerance = -1.0);
  static Domain implicit(LevelFunction level, Box bounding_box, double boundary_tolerance = -1.0);
  static Domain disk(Vec center, double radius, double boundary_tolerance = -1.0);

  DomainKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return kind_ == DomainKind::kInterval ? 1 : 2; }
  const Box& bounding_box() const noexcept { return box_; }
  double boundary_tolerance() const noexcept { return tolerance_; }
  double diameter() const noexcept;

  double level(Vec p) const;
  Membership classify(Vec p) const;
  bool in_closure(Vec p) const { return level(p) <= tolerance_; }
  bool in_interior(Vec p) const { return level(p) < -tolerance_; }
  /// Distance to ∂Ω for points of Ω̄ (0 outside).
  double distance_to_boundary(Vec p) const;
  /// Closest point of Ω̄ on the segment from `inside` to `target`.
  Vec clamp_segment(Vec inside, Vec target) const;

 private:
  Domain(DomainKind kind, Box box, LevelFunction level, double tolerance);

  DomainKind kind_;
  Box box_;
  std::shared_ptr<const LevelFunction> level_;
  double tolerance_;
};

}  // namespace hjsc
