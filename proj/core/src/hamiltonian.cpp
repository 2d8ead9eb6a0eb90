#include "hjsc/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "hjsc/errors.hpp"

namespace hjsc {
namespace {

void check_range(double a, double p) {
  if (!(p > 1.0 && p <= 2.0)) {
    throw ParameterError("Hamiltonian exponent p must lie in (1, 2], got " + std::to_string(p));
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("Hamiltonian coefficient a must be positive, got " + std::to_string(a));
  }
}

// |x|^e with exact squares for the common p = q = 2 case.
double power(double x, double e) { return e == 2.0 ? x * x : std::pow(x, e); }

}  // namespace

double legendre_coeff(double a, double p) {
  check_range(a, p);
  const double q = p / (p - 1.0);
  return (p - 1.0) * std::pow(a, 1.0 - q) * std::pow(p, -q);
}

PowerHamiltonian::PowerHamiltonian(double p, double a)
    : p_(p), a_(a), q_(p / (p - 1.0)), legendre_(hjsc::legendre_coeff(a, p)) {}

double PowerHamiltonian::momentum_term(Vec beta) const { return a_ * power(norm(beta), p_); }

double PowerHamiltonian::kinetic_term(Vec v) const { return legendre_ * power(norm(v), q_); }

double lagrangian(const PowerHamiltonian& h, const RunningCost& f, const Domain& domain, Vec x,
                  Vec v) {
  if (!domain.in_closure(x)) throw DomainError("lagrangian evaluated outside the closed domain");
  return h.kinetic_term(v) + f(x);
}

double feedback_speed(const PowerHamiltonian& h, Vec g) {
  const double m = norm(g);
  if (m == 0.0) return 0.0;
  return power(m / (h.q() * h.legendre_coeff()), 1.0 / (h.q() - 1.0));
}

Vec feedback_velocity(const PowerHamiltonian& h, Vec g) {
  const double m = norm(g);
  if (m == 0.0) return {};
  return (-feedback_speed(h, g) / m) * g;
}

Vec gradient_from_velocity(const PowerHamiltonian& h, Vec v) {
  const double s = norm(v);
  if (s == 0.0) return {};
  return (-h.q() * h.legendre_coeff() * power(s, h.q() - 2.0)) * v;
}

}  // namespace hjsc
