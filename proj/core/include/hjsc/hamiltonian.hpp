#pragma once

#include "hjsc/domain.hpp"
#include "hjsc/running_cost.hpp"
#include "hjsc/vec.hpp"

namespace hjsc {

/// H(x, β) = a|β|^p − f(x) with 1 < p ≤ 2 and a > 0.
///
/// The conjugate exponent q = p/(p−1) and the Legendre coefficient
/// C = (p−1)·a^{1−q}·p^{−q} are derived from (p, a) at construction, so the
/// Lagrangian is L(x, v) = C|v|^q + f(x). For a = 1 the coefficient reduces
/// to q^{-1}·p^{-q/p}.
class PowerHamiltonian {
 public:
  explicit PowerHamiltonian(double p, double a = 1.0);

  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }
  double q() const noexcept { return q_; }
  double legendre_coeff() const noexcept { return legendre_; }

  /// a|β|^p (the momentum part of H, without −f).
  double momentum_term(Vec beta) const;
  /// C|v|^q.
  double kinetic_term(Vec v) const;

 private:
  double p_;
  double a_;
  double q_;
  double legendre_;
};

/// (p−1)·a^{1−q}·p^{−q}; throws ParameterError unless a > 0 and 1 < p ≤ 2.
double legendre_coeff(double a, double p);

/// L(x, v) = C|v|^q + f(x); throws DomainError when x ∉ Ω̄.
double lagrangian(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain, Vec x,
                  Vec v);

/// Optimal speed for value gradient g: (|g| / (q·C))^{1/(q−1)}.
double feedback_speed(const PowerHamiltonian& h, Vec g);

/// Optimal velocity −feedback_speed(g)·g/|g|, the inverse of
/// v ↦ −q·C·|v|^{q−2}·v. Zero for g = 0.
Vec feedback_velocity(const PowerHamiltonian& h, Vec g);

/// The map v ↦ −q·C·|v|^{q−2}·v whose inverse is feedback_velocity.
Vec gradient_from_velocity(const PowerHamiltonian& h, Vec v);

}  // namespace hjsc
