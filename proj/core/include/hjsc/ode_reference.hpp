#pragma once

#include <span>
#include <vector>

#include "hjsc/hamiltonian.hpp"
#include "hjsc/running_cost.hpp"

namespace hjsc {

struct ReferenceSample {
  double x = 0.0;
  double u = 0.0;
  double du = 0.0;
};

/// Subinterval on which u' = sign·((f − u)/a)^{1/p}.
struct BranchSpan {
  double lo = 0.0;
  double hi = 0.0;
  int sign = 0;
};

/// Dense 1D reference solution built from the characteristic branches
/// u' = ±((f − u)/a)^{1/p}. Samples are sorted by x.
class Reference1D {
 public:
  Reference1D(PowerHamiltonian h, RunningCost f, std::vector<ReferenceSample> samples,
              std::vector<BranchSpan> branches, std::vector<double> contact_points = {});

  double lo() const noexcept { return samples_.front().x; }
  double hi() const noexcept { return samples_.back().x; }
  std::span<const ReferenceSample> samples() const noexcept { return samples_; }
  std::span<const BranchSpan> branches() const noexcept { return branches_; }
  std::span<const double> contact_points() const noexcept { return contacts_; }
  const PowerHamiltonian& hamiltonian() const noexcept { return h_; }
  const RunningCost& cost() const noexcept { return f_; }

  /// Cubic Hermite interpolation of (u, u'); DomainError outside [lo, hi].
  double value(double x) const;
  double derivative(double x) const;
  /// Branch sign at x; 0 at a switch point.
  int branch_sign(double x) const;
  /// max |u + a|u'|^p − f| over samples.
  double max_pde_residual() const;

  /// Reflection x ↦ −x (for even costs).
  Reference1D mirrored() const;
  /// Concatenation of two references sharing an endpoint.
  static Reference1D join(const Reference1D& left, const Reference1D& right);

 private:
  std::size_t segment(double x) const;

  PowerHamiltonian h_;
  RunningCost f_;
  std::vector<ReferenceSample> samples_;
  std::vector<BranchSpan> branches_;
  std::vector<double> contacts_;
};

/// Integrates u' = sign·((f − u)/a)^{1/p} from (x_start, u_start) to x_end
/// with classical RK4 at fixed `step`. f − u is clamped at 0; contact points
/// (f − u ≈ 0) are recorded. Throws BranchInvalidError when u exceeds f by
/// more than the integration tolerance.
Reference1D integrate_branch(const PowerHamiltonian& h, const RunningCost& f, double x_start,
                             double u_start, int sign, double x_end, double step = 1e-5);

/// u'' from differentiating u + a|u'|^p = f:
///   u'' = (f' − u') / (p·a·sign(u')·|u'|^{p−1}).
/// Throws SingularCurvatureError where u' = 0.
double curvature_estimate(const Reference1D& ref, double x);

}  // namespace hjsc
