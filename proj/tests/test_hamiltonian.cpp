#include <doctest.h>

#include <cmath>
#include <random>

#include <hjsc/hjsc.hpp>

#include "support.hpp"

using namespace hjsc;
using hjsc::test::at;

namespace {

// sup_β (β·v − a|β|^p) by a coarse scan followed by golden-section search on
// the bracketing cells. Knows nothing about the closed form.
double numeric_conjugate(double a, double p, double v) {
  auto phi = [&](double b) { return b * v - a * std::pow(std::abs(b), p); };
  const double hi = 200.0;
  const int n = 200000;
  int best = 0;
  for (int k = 1; k <= n; ++k) {
    if (phi(hi * k / n) > phi(hi * best / n)) best = k;
  }
  double lo = hi * std::max(0, best - 1) / n;
  double up = hi * std::min(n, best + 1) / n;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double m1 = up - g * (up - lo);
    const double m2 = lo + g * (up - lo);
    if (phi(m1) < phi(m2)) lo = m1; else up = m2;
  }
  return phi(0.5 * (lo + up));
}

}  // namespace

TEST_CASE("legendre coefficient closed values") {
  CHECK(legendre_coeff(1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(legendre_coeff(0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  // a = 1 reduces to q^{-1} p^{-q/p}
  const double p = 1.5, q = 3.0;
  CHECK(legendre_coeff(1.0, p) == doctest::Approx(std::pow(p, -q / p) / q).epsilon(1e-14));
}

TEST_CASE("legendre coefficient matches the numeric convex conjugate") {
  for (double a : {1.0, 0.5}) {
    for (double p : {2.0, 1.5}) {
      const PowerHamiltonian h(p, a);
      for (double v : {0.3, 1.0, 2.5}) {
        const double c_num = numeric_conjugate(a, p, v) / std::pow(v, h.q());
        INFO("a=" << a << " p=" << p << " v=" << v);
        CHECK(std::abs(c_num - h.legendre_coeff()) <= 1e-8);
      }
    }
  }
}

TEST_CASE("legendre coefficient rejects parameters out of range") {
  CHECK_THROWS_AS(legendre_coeff(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(legendre_coeff(1.0, 2.1), ParameterError);
  CHECK_THROWS_AS(legendre_coeff(0.0, 2.0), ParameterError);
  CHECK_THROWS_AS(legendre_coeff(-1.0, 1.5), ParameterError);
  CHECK_THROWS_AS(PowerHamiltonian(0.9, 1.0), ParameterError);
}

TEST_CASE("lagrangian values") {
  const Domain d = Domain::interval(-1.0, 1.0);
  CHECK(lagrangian(PowerHamiltonian(2.0, 1.0), costs::constant(0.0), d, at(0.0), at(2.0)) ==
        doctest::Approx(1.0));
  CHECK(lagrangian(PowerHamiltonian(2.0, 0.5), costs::quadratic(), d, at(1.0), at(0.0)) ==
        doctest::Approx(1.0));
  // zero velocity at the minimiser of f gives min f
  CHECK(lagrangian(PowerHamiltonian(1.5, 1.0), costs::abs_cone(), d, at(1.0), at(0.0)) == 0.0);
  CHECK_THROWS_AS(lagrangian(PowerHamiltonian(2.0, 1.0), costs::abs_cone(), d, at(1.5), at(0.0)),
                  DomainError);
}

TEST_CASE("feedback speed and velocity") {
  const PowerHamiltonian h1(2.0, 1.0);
  const PowerHamiltonian h2(2.0, 0.5);
  CHECK(feedback_speed(h1, {1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(feedback_speed(h2, {0.3, 0.0}) == doctest::Approx(0.3));
  CHECK(feedback_speed(h1, {}) == 0.0);

  const Vec v = feedback_velocity(h1, {1.0, 0.0});
  CHECK(v.x == doctest::Approx(-2.0));
  CHECK(v.y == 0.0);
  // g = u'(0.8) = 0.8 − 1/2 for the well problem gives the initial slope of
  // the curve ½ + 0.3e^{−s}
  CHECK(feedback_velocity(h2, at(0.8 - 0.5)).x == doctest::Approx(-0.3));
  const Vec z = feedback_velocity(PowerHamiltonian(1.5, 1.0), {});
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);
}

TEST_CASE("feedback round trip on random gradients") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_mag(std::log(1e-6), std::log(10.0));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (double a : {1.0, 0.5}) {
    for (double p : {2.0, 1.5, 1.2}) {
      const PowerHamiltonian h(p, a);
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const double r = std::exp(log_mag(rng));
        const double t = angle(rng);
        const Vec g{r * std::cos(t), r * std::sin(t)};
        const Vec back = gradient_from_velocity(h, feedback_velocity(h, g));
        worst = std::max(worst, norm(back - g));
      }
      INFO("a=" << a << " p=" << p);
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("Fenchel equality at the feedback optimiser") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.9, 0.9);
  std::uniform_real_distribution<double> ug(-3.0, 3.0);
  const Domain d = Domain::rectangle(-1.0, 1.0, -1.0, 1.0);
  const RunningCost f = costs::bump(1);
  for (double p : {2.0, 1.5}) {
    const PowerHamiltonian h(p, 0.7);
    for (int k = 0; k < 50; ++k) {
      const Vec x{ux(rng), ux(rng)};
      const Vec g{ug(rng), ug(rng)};
      const Vec v = feedback_velocity(h, g);
      const double lhs = lagrangian(h, f, d, x, -1.0 * v) + dot(g, v);
      const double rhs = f(x) - h.momentum_term(g);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}
