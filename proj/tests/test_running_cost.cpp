#include <doctest.h>

#include <cmath>
#include <random>

#include <hjsc/hjsc.hpp>

using namespace hjsc;

TEST_CASE("builtin costs have consistent gradients") {
  const Domain line = Domain::interval(-1.0, 1.0);
  const Domain disk = Domain::disk({}, 1.0);
  const RunningCost all[] = {costs::abs_cone(),    costs::power_well(0.5), costs::quadratic(),
                             costs::bump(1),       costs::bump(2),         costs::piecewise_f2(),
                             costs::constant(0.3), costs::compact_bump(0.8)};
  for (const RunningCost& f : all) {
    INFO(f.name());
    CHECK(validate_gradient(f, line, 1).ok);
    CHECK(validate_gradient(f, disk, 2).ok);
  }
}

TEST_CASE("inconsistent gradient is rejected") {
  const RunningCost wrong("wrong", [](Vec x) { return x.x * x.x; }, [](Vec x) { return Vec{x.x, 0.0}; },
                          0.0, false);
  CHECK_THROWS_AS(validate_gradient(wrong, Domain::interval(-1.0, 1.0)), ParameterError);
}

TEST_CASE("costs stay above their declared minimum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const RunningCost all[] = {costs::abs_cone(), costs::power_well(0.5), costs::quadratic(),
                             costs::bump(1), costs::piecewise_f2(), costs::compact_bump(0.6)};
  for (const RunningCost& f : all) {
    REQUIRE(f.min_value().has_value());
    for (int k = 0; k < 1000; ++k) {
      const Vec x{u(rng), 0.0};
      CHECK(f(x) >= *f.min_value());
    }
  }
}

TEST_CASE("cost formulas") {
  CHECK(costs::abs_cone()(Vec{0.25, 0.0}) == 0.75);
  CHECK(costs::power_well(0.5)(Vec{0.8, 0.0}) == doctest::Approx(0.09));
  CHECK(costs::power_well(0.5)(Vec{-0.3, 0.0}) == 0.0);
  CHECK(costs::piecewise_f2()(Vec{0.5, 0.0}) == doctest::Approx(0.25));
  CHECK(costs::piecewise_f2()(Vec{1.0, 0.0}) == doctest::Approx(0.125));
  CHECK(costs::bump(1)(Vec{0.5, 0.0}) == doctest::Approx(0.5625));
  CHECK(costs::compact_bump(0.8)(Vec{0.9, 0.0}) == 0.0);
  const RunningCost twice = costs::quadratic().scaled(2.0);
  CHECK(twice(Vec{0.5, 0.0}) == doctest::Approx(0.5));
  CHECK(twice.gradient(Vec{0.5, 0.0}).x == doctest::Approx(2.0));
  CHECK_THROWS_AS(costs::bump(0), ParameterError);
}
