#include <doctest.h>

#include <cmath>
#include <random>

#include <hjsc/hjsc.hpp>

#include "support.hpp"

using namespace hjsc;
using hjsc::test::at;

TEST_CASE("interval grid at spacing 0.5") {
  const Grid g = build_grid(Domain::interval(-1.0, 1.0), 0.5);
  REQUIRE(g.size() == 5);
  const double want[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(g.node(i).x == want[i]);
  CHECK(g.tag(0) == NodeTag::kBoundary);
  CHECK(g.tag(4) == NodeTag::kBoundary);
  CHECK(g.count(NodeTag::kInterior) == 3);
}

TEST_CASE("fine interval and square grids") {
  CHECK(build_grid(Domain::interval(-1.0, 1.0), 1e-3).size() == 2001);
  const Grid sq = build_grid(Domain::rectangle(0.0, 1.0, 0.0, 1.0), 0.25);
  CHECK(sq.nx() == 5);
  CHECK(sq.ny() == 5);
  CHECK(sq.count(NodeTag::kInterior) == 9);
  CHECK(sq.count(NodeTag::kBoundary) == 16);
}

TEST_CASE("spacing never exceeds the target") {
  const Grid g = build_grid(Domain::rectangle(0.0, 1.0, 0.0, 0.7), 0.03);
  CHECK(g.spacing().x <= 0.03);
  CHECK(g.spacing().y <= 0.03);
  CHECK(g.x_at(g.nx() - 1) == 1.0);
  CHECK(g.y_at(g.ny() - 1) == 0.7);
}

TEST_CASE("disk grid tags agree with membership") {
  const Domain d = Domain::disk({0.2, -0.1}, 0.8);
  const Grid g = build_grid(d, 0.05);
  std::size_t interior = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec x = g.node(i);
    switch (g.tag(i)) {
      case NodeTag::kInterior: CHECK(d.classify(x) == Membership::kInterior); ++interior; break;
      case NodeTag::kBoundary: CHECK(d.classify(x) == Membership::kBoundary); break;
      case NodeTag::kExterior: CHECK(d.classify(x) == Membership::kExterior); break;
    }
  }
  CHECK(interior > 0);
}

TEST_CASE("grid construction errors") {
  CHECK_THROWS_AS(build_grid(Domain::interval(-1.0, 1.0), 0.6), ParameterError);
  CHECK_THROWS_AS(build_grid(Domain::interval(-1.0, 1.0), 0.0), ParameterError);
  // a sliver one node thick cannot host three interior nodes across
  const Domain sliver = Domain::implicit([](Vec p) { return std::abs(p.y) - 1e-3; },
                                         Box{-1.0, 1.0, -1.0, 1.0});
  CHECK_THROWS_AS(build_grid(sliver, 0.1), ConstructionError);
}

TEST_CASE("membership partitions random points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const Domain domains[] = {Domain::interval(-1.0, 1.0), Domain::rectangle(-1.0, 1.0, -0.5, 0.5),
                            Domain::disk({}, 1.0)};
  for (const Domain& d : domains) {
    for (int k = 0; k < 500; ++k) {
      const Vec x{u(rng), d.dimension() == 2 ? u(rng) : 0.0};
      const Membership m = d.classify(x);
      CHECK(d.in_interior(x) == (m == Membership::kInterior));
      CHECK(d.in_closure(x) == (m != Membership::kExterior));
      if (m == Membership::kInterior) CHECK(d.distance_to_boundary(x) > 0.0);
    }
  }
  const Domain iv = Domain::interval(-1.0, 1.0);
  CHECK(iv.classify(at(1.0)) == Membership::kBoundary);
  CHECK(iv.classify(at(1.0 + 1e-12)) == Membership::kBoundary);
  CHECK(iv.classify(at(1.0 + 1e-6)) == Membership::kExterior);
}

TEST_CASE("clamp_segment stops at the boundary") {
  const Domain sq = Domain::rectangle(-1.0, 1.0, -1.0, 1.0);
  const Vec c = sq.clamp_segment({0.0, 0.0}, {2.0, 0.5});
  CHECK(c.x == doctest::Approx(1.0));
  CHECK(sq.in_closure(c));
  const Domain disk = Domain::disk({}, 1.0);
  const Vec e = disk.clamp_segment({0.0, 0.0}, {3.0, 0.0});
  CHECK(e.x == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(disk.in_closure(e));
  const Vec same = disk.clamp_segment({0.0, 0.0}, {0.3, 0.2});
  CHECK(same.x == 0.3);
  CHECK(same.y == 0.2);
}

TEST_CASE("interpolation reproduces affine fields") {
  auto g1 = hjsc::test::grid_ptr(Domain::interval(-1.0, 1.0), 0.1);
  const ValueField lin = ValueField::sample(g1, [](Vec x) { return 2.0 * x.x - 0.3; });
  for (double x : {-1.0, -0.55, 0.0, 0.123, 0.99, 1.0}) {
    CHECK(*lin.interpolate(at(x)) == doctest::Approx(2.0 * x - 0.3));
  }
  CHECK_FALSE(lin.interpolate(at(1.2)).has_value());
  CHECK(field_gradient(lin, at(0.37)).x == doctest::Approx(2.0));
  CHECK(field_gradient(lin, at(1.0)).x == doctest::Approx(2.0));

  auto g2 = hjsc::test::grid_ptr(Domain::rectangle(0.0, 1.0, 0.0, 2.0), 0.1);
  const ValueField bil =
      ValueField::sample(g2, [](Vec x) { return 1.0 + x.x - 0.5 * x.y + 0.25 * x.x * x.y; });
  for (Vec p : {Vec{0.33, 1.71}, Vec{0.05, 0.05}, Vec{1.0, 2.0}}) {
    CHECK(*bil.interpolate(p) == doctest::Approx(1.0 + p.x - 0.5 * p.y + 0.25 * p.x * p.y));
  }
}

TEST_CASE("exterior nodes carry NaN and are never read") {
  auto g = hjsc::test::grid_ptr(Domain::disk({}, 1.0), 0.1);
  const ValueField u = ValueField::constant(g, 2.0);
  std::size_t exterior = 0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    if (!g->admissible(i)) {
      CHECK(std::isnan(u[i]));
      ++exterior;
    }
  }
  CHECK(exterior > 0);
  // a cut cell near the rim still interpolates from its admissible corners
  const auto v = u.interpolate({0.69, 0.69});
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(2.0));
}
