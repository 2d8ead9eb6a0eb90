#include "hjsc/ode_reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

constexpr double kBranchTolerance = 1e-9;
constexpr double kContactTolerance = 1e-14;

double slope(const PowerHamiltonian& h, double gap, int sign) {
  return sign * std::pow(std::max(gap, 0.0) / h.a(), 1.0 / h.p());
}

}  // namespace

Reference1D::Reference1D(PowerHamiltonian h, RunningCost f, std::vector<ReferenceSample> samples,
                         std::vector<BranchSpan> branches, std::vector<double> contact_points)
    : h_(h),
      f_(std::move(f)),
      samples_(std::move(samples)),
      branches_(std::move(branches)),
      contacts_(std::move(contact_points)) {
  if (samples_.size() < 2) throw ParameterError("reference needs at least two samples");
  std::sort(samples_.begin(), samples_.end(),
            [](const ReferenceSample& a, const ReferenceSample& b) { return a.x < b.x; });
  std::sort(branches_.begin(), branches_.end(),
            [](const BranchSpan& a, const BranchSpan& b) { return a.lo < b.lo; });
  std::sort(contacts_.begin(), contacts_.end());
}

std::size_t Reference1D::segment(double x) const {
  if (x < lo() - 1e-12 || x > hi() + 1e-12) throw DomainError("point outside the reference range");
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                             [](double v, const ReferenceSample& s) { return v < s.x; });
  auto k = static_cast<std::size_t>(std::distance(samples_.begin(), it));
  return std::clamp<std::size_t>(k, 1, samples_.size() - 1) - 1;
}

double Reference1D::value(double x) const {
  const std::size_t k = segment(x);
  const ReferenceSample& a = samples_[k];
  const ReferenceSample& b = samples_[k + 1];
  const double h = b.x - a.x;
  const double t = std::clamp((x - a.x) / h, 0.0, 1.0);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.u + (t3 - 2 * t2 + t) * h * a.du + (-2 * t3 + 3 * t2) * b.u +
         (t3 - t2) * h * b.du;
}

double Reference1D::derivative(double x) const {
  const std::size_t k = segment(x);
  const ReferenceSample& a = samples_[k];
  const ReferenceSample& b = samples_[k + 1];
  const double h = b.x - a.x;
  const double t = std::clamp((x - a.x) / h, 0.0, 1.0);
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * a.u + (3 * t2 - 4 * t + 1) * h * a.du + (-6 * t2 + 6 * t) * b.u +
          (3 * t2 - 2 * t) * h * b.du) /
         h;
}

int Reference1D::branch_sign(double x) const {
  for (const BranchSpan& b : branches_) {
    if (x > b.lo && x < b.hi) return b.sign;
  }
  return 0;
}

double Reference1D::max_pde_residual() const {
  double worst = 0.0;
  for (const ReferenceSample& s : samples_) {
    const double r = s.u + h_.momentum_term({s.du, 0.0}) - f_({s.x, 0.0});
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

Reference1D Reference1D::mirrored() const {
  std::vector<ReferenceSample> samples;
  samples.reserve(samples_.size());
  for (const ReferenceSample& s : samples_) samples.push_back({-s.x, s.u, -s.du});
  std::vector<BranchSpan> branches;
  for (const BranchSpan& b : branches_) branches.push_back({-b.hi, -b.lo, -b.sign});
  std::vector<double> contacts;
  for (double c : contacts_) contacts.push_back(-c);
  return Reference1D(h_, f_, std::move(samples), std::move(branches), std::move(contacts));
}

Reference1D Reference1D::join(const Reference1D& left, const Reference1D& right) {
  if (std::abs(left.hi() - right.lo()) > 1e-12) {
    throw ParameterError("joined references must share an endpoint");
  }
  std::vector<ReferenceSample> samples(left.samples_.begin(), left.samples_.end());
  // The shared endpoint keeps the left value; one-sided derivatives differ at
  // a kink, so the right copy is dropped.
  samples.insert(samples.end(), right.samples_.begin() + 1, right.samples_.end());
  std::vector<BranchSpan> branches(left.branches_.begin(), left.branches_.end());
  branches.insert(branches.end(), right.branches_.begin(), right.branches_.end());
  std::vector<double> contacts(left.contacts_.begin(), left.contacts_.end());
  contacts.insert(contacts.end(), right.contacts_.begin(), right.contacts_.end());
  return Reference1D(left.h_, left.f_, std::move(samples), std::move(branches),
                     std::move(contacts));
}

Reference1D integrate_branch(const PowerHamiltonian& h, const RunningCost& f, double x_start,
                             double u_start, int sign, double x_end, double step) {
  if (sign != 1 && sign != -1) throw ParameterError("branch sign must be +1 or -1");
  if (!(step > 0.0)) throw ParameterError("integration step must be positive");
  const double length = std::abs(x_end - x_start);
  if (!(length > 2.0 * step)) throw ParameterError("step too large for the integration range");
  if (u_start > f({x_start, 0.0}) + kBranchTolerance) {
    throw BranchInvalidError("starting value exceeds the cost", x_start);
  }

  const double dir = x_end > x_start ? 1.0 : -1.0;
  const auto n = static_cast<std::size_t>(std::ceil(length / step - 1e-9));
  const double hstep = dir * length / static_cast<double>(n);
  auto rhs = [&](double x, double u) { return slope(h, f({x, 0.0}) - u, sign); };

  std::vector<ReferenceSample> samples;
  samples.reserve(n + 1);
  std::vector<double> contacts;
  double x = x_start;
  double u = u_start;
  bool in_contact = false;
  for (std::size_t k = 0; k <= n; ++k) {
    const double fx = f({x, 0.0});
    const double gap = fx - u;
    if (gap < -kBranchTolerance) {
      std::ostringstream msg;
      msg << "u exceeds f by " << -gap << " at x = " << x << ": wrong branch sign";
      throw BranchInvalidError(msg.str(), x);
    }
    if (gap <= kContactTolerance * (1.0 + std::abs(fx))) {
      u = std::min(u, fx);
      if (!in_contact) contacts.push_back(x);
      in_contact = true;
    } else {
      in_contact = false;
    }
    samples.push_back({x, u, rhs(x, u)});
    if (k == n) break;
    const double k1 = rhs(x, u);
    const double k2 = rhs(x + 0.5 * hstep, u + 0.5 * hstep * k1);
    const double k3 = rhs(x + 0.5 * hstep, u + 0.5 * hstep * k2);
    const double k4 = rhs(x + hstep, u + hstep * k3);
    u += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = k + 1 == n ? x_end : x_start + static_cast<double>(k + 1) * hstep;
  }

  const BranchSpan span{std::min(x_start, x_end), std::max(x_start, x_end), sign};
  return Reference1D(h, f, std::move(samples), {span}, std::move(contacts));
}

double curvature_estimate(const Reference1D& ref, double x) {
  const int sign = ref.branch_sign(x);
  if (sign == 0) throw DomainError("curvature requested outside a constant-branch subinterval");
  const PowerHamiltonian& h = ref.hamiltonian();
  const RunningCost& f = ref.cost();
  const double u = ref.value(x);
  const double du = slope(h, f({x, 0.0}) - u, sign);
  if (du == 0.0) {
    throw SingularCurvatureError("u' vanishes: the second derivative is singular here");
  }
  const double df = f.gradient({x, 0.0}).x;
  return (df - du) / (h.p() * h.a() * std::copysign(std::pow(std::abs(du), h.p() - 1.0), du));
}

}  // namespace hjsc
