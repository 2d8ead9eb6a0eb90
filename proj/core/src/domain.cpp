#include "hjsc/domain.hpp"

#include <algorithm>
#include <cmath>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

double default_tolerance(double tolerance, double diameter) {
  return tolerance >= 0.0 ? tolerance : 1e-10 * diameter;
}

double box_level(const Box& b, Vec p) {
  const double dx = std::max(b.x_lo - p.x, p.x - b.x_hi);
  const double dy = std::max(b.y_lo - p.y, p.y - b.y_hi);
  if (dx <= 0.0 && dy <= 0.0) return std::max(dx, dy);
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

}  // namespace

Domain::Domain(DomainKind kind, Box box, LevelFunction level, double tolerance)
    : kind_(kind),
      box_(box),
      level_(std::make_shared<const LevelFunction>(std::move(level))),
      tolerance_(tolerance) {}

Domain Domain::interval(double lo, double hi, double boundary_tolerance) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ParameterError("interval domain needs finite lo < hi");
  }
  Box box{lo, hi, 0.0, 0.0};
  return Domain(DomainKind::kInterval, box,
                [lo, hi](Vec p) { return std::max(lo - p.x, p.x - hi); },
                default_tolerance(boundary_tolerance, hi - lo));
}

Domain Domain::rectangle(double x_lo, double x_hi, double y_lo, double y_hi,
                         double boundary_tolerance) {
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) throw ParameterError("rectangle needs lo < hi on both axes");
  Box box{x_lo, x_hi, y_lo, y_hi};
  return Domain(DomainKind::kRectangle, box, [box](Vec p) { return box_level(box, p); },
                default_tolerance(boundary_tolerance, std::hypot(x_hi - x_lo, y_hi - y_lo)));
}

Domain Domain::implicit(LevelFunction level, Box bounding_box, double boundary_tolerance) {
  if (!level) throw ParameterError("implicit domain needs a level function");
  if (!(bounding_box.x_lo < bounding_box.x_hi) || !(bounding_box.y_lo < bounding_box.y_hi)) {
    throw ParameterError("implicit domain needs a non-degenerate bounding box");
  }
  const double diam = std::hypot(bounding_box.x_hi - bounding_box.x_lo,
                                 bounding_box.y_hi - bounding_box.y_lo);
  return Domain(DomainKind::kImplicit, bounding_box, std::move(level),
                default_tolerance(boundary_tolerance, diam));
}

Domain Domain::disk(Vec center, double radius, double boundary_tolerance) {
  if (!(radius > 0.0)) throw ParameterError("disk radius must be positive");
  Box box{center.x - radius, center.x + radius, center.y - radius, center.y + radius};
  return implicit([center, radius](Vec p) { return norm(p - center) - radius; }, box,
                  boundary_tolerance);
}

double Domain::diameter() const noexcept {
  return std::hypot(box_.x_hi - box_.x_lo, box_.y_hi - box_.y_lo);
}

double Domain::level(Vec p) const { return (*level_)(p); }

Membership Domain::classify(Vec p) const {
  const double phi = level(p);
  if (phi < -tolerance_) return Membership::kInterior;
  if (phi <= tolerance_) return Membership::kBoundary;
  return Membership::kExterior;
}

double Domain::distance_to_boundary(Vec p) const { return std::max(0.0, -level(p)); }

Vec Domain::clamp_segment(Vec inside, Vec target) const {
  if (in_closure(target)) return target;
  if (kind_ != DomainKind::kImplicit) {
    // Boxes are convex: clamp coordinate-wise along the segment.
    double t = 1.0;
    const Vec d = target - inside;
    auto limit = [&t](double from, double delta, double lo, double hi) {
      if (delta > 0.0 && from + delta > hi) t = std::min(t, (hi - from) / delta);
      if (delta < 0.0 && from + delta < lo) t = std::min(t, (lo - from) / delta);
    };
    limit(inside.x, d.x, box_.x_lo, box_.x_hi);
    if (kind_ == DomainKind::kRectangle) limit(inside.y, d.y, box_.y_lo, box_.y_hi);
    Vec out = inside + std::max(t, 0.0) * d;
    out.x = std::clamp(out.x, box_.x_lo, box_.x_hi);
    if (kind_ == DomainKind::kRectangle) out.y = std::clamp(out.y, box_.y_lo, box_.y_hi);
    return out;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (in_closure(inside + mid * (target - inside))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return inside + lo * (target - inside);
}

}  // namespace hjsc
