#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cch2/errors.hpp"
#include "cch2/geometry.hpp"
#include "cch2/rng.hpp"
#include "oracles.hpp"

using namespace cch2;

TEST_CASE("minkowski dot of two points on a geodesic gives -cosh of the gap") {
  const HPoint a{std::sinh(0.3), 0.0, std::cosh(0.3)};
  const HPoint b{std::sinh(-0.3), 0.0, std::cosh(-0.3)};
  CHECK(minkowski_dot(a, b) == doctest::Approx(-std::cosh(0.6)).epsilon(1e-14));
  CHECK(geodesic_distance(a, b) == doctest::Approx(0.6).epsilon(1e-13));
}

TEST_CASE("lift recovers the sheet coordinate") {
  const HPoint p = lift(GraphPoint{3.0, 4.0});
  CHECK(p.w == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  CHECK(hyperboloid_defect(p) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("distance of a point to itself is zero after clamping") {
  const HPoint p = chart_to_ambient(ChartPoint{0.7, -0.4});
  CHECK(geodesic_distance(p, p) == 0.0);
}

TEST_CASE("distance complains when the pairing is far off the sheet") {
  const HPoint off{0.0, 0.0, 0.5};  // not on the hyperboloid
  const HPoint p{0.0, 0.0, 1.0};
  CHECK_THROWS_AS((void)geodesic_distance(off, p), ArgumentBelowOne);
}

TEST_CASE("chart round-trips in both charts") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const ChartPoint c{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const HPoint p = chart_to_ambient(c);
    CHECK(std::abs(hyperboloid_defect(p)) < 1e-11);
    const ChartPoint back = ambient_to_chart(p);
    CHECK(back.theta == doctest::Approx(c.theta).epsilon(1e-12));
    CHECK(back.phi == doctest::Approx(c.phi).epsilon(1e-12));

    const Eigen::Vector2d g = chart_coords_of(p, ChartTag::Graph);
    const HPoint lifted = point_from_chart(g[0], g[1], ChartTag::Graph);
    CHECK(lifted.x == doctest::Approx(p.x).epsilon(1e-13));
    CHECK(lifted.y == doctest::Approx(p.y).epsilon(1e-13));
    CHECK(lifted.w == doctest::Approx(p.w).epsilon(1e-13));
  }
}

TEST_CASE("chart range guard rejects coordinates past the overflow limit") {
  CHECK_THROWS_AS((void)chart_to_ambient(ChartPoint{kChartRangeLimit + 1.0, 0.0}),
                  ChartRangeError);
  CHECK_THROWS_AS((void)point_from_chart(0.0, kChartRangeLimit + 1.0, ChartTag::ThetaPhi),
                  ChartRangeError);
}

TEST_CASE("rotation preserves distances, defect, and the w coordinate") {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const HPoint a = chart_to_ambient(ChartPoint{rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const HPoint b = chart_to_ambient(ChartPoint{rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const double angle = rng.uniform(-3.2, 3.2);
    const HPoint ra = so2_rotate(a, angle);
    const HPoint rb = so2_rotate(b, angle);
    CHECK(ra.w == doctest::Approx(a.w).epsilon(1e-14));
    CHECK(std::abs(hyperboloid_defect(ra)) < 1e-11);
    CHECK(geodesic_distance(ra, rb) ==
          doctest::Approx(geodesic_distance(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("chart frame Jacobian and second partials match finite differences") {
  Rng rng(13);
  for (ChartTag tag : {ChartTag::Graph, ChartTag::ThetaPhi}) {
    for (int k = 0; k < 40; ++k) {
      const double u0 = rng.uniform(-1.5, 1.5);
      const double u1 = rng.uniform(-1.5, 1.5);
      const ChartFrame f = chart_frame(u0, u1, tag);

      const double h = 1e-5;
      auto embed = [&](double a, double b) {
        const HPoint p = point_from_chart(a, b, tag);
        return Eigen::Vector3d{p.x, p.y, p.w};
      };
      const Eigen::Vector3d d0 = (embed(u0 + h, u1) - embed(u0 - h, u1)) / (2 * h);
      const Eigen::Vector3d d1 = (embed(u0, u1 + h) - embed(u0, u1 - h)) / (2 * h);
      CHECK((f.jac.col(0) - d0).lpNorm<Eigen::Infinity>() < 1e-8);
      CHECK((f.jac.col(1) - d1).lpNorm<Eigen::Infinity>() < 1e-8);

      // second differences divide by h^2: a larger step keeps roundoff down
      const double h2 = 1e-3;
      const Eigen::Vector3d s00 =
          (embed(u0 + h2, u1) - 2 * embed(u0, u1) + embed(u0 - h2, u1)) / (h2 * h2);
      const Eigen::Vector3d s11 =
          (embed(u0, u1 + h2) - 2 * embed(u0, u1) + embed(u0, u1 - h2)) / (h2 * h2);
      const Eigen::Vector3d s01 = (embed(u0 + h2, u1 + h2) - embed(u0 + h2, u1 - h2) -
                                   embed(u0 - h2, u1 + h2) + embed(u0 - h2, u1 - h2)) /
                                  (4 * h2 * h2);
      CHECK((f.second[0] - s00).lpNorm<Eigen::Infinity>() < 1e-5);
      CHECK((f.second[1] - s01).lpNorm<Eigen::Infinity>() < 1e-5);
      CHECK((f.second[2] - s11).lpNorm<Eigen::Infinity>() < 1e-5);
    }
  }
}

TEST_CASE("independent chart distance formulas agree with the library metric") {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const ChartPoint c1{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const ChartPoint c2{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const HPoint p1 = chart_to_ambient(c1), p2 = chart_to_ambient(c2);
    const double lib = std::cosh(geodesic_distance(p1, p2));
    const double via_tp = oracle::cosh_dist_thetaphi(c1.theta, c1.phi, c2.theta, c2.phi);
    const double via_g = oracle::cosh_dist_graph(p1.x, p1.y, p2.x, p2.y);
    CHECK(lib == doctest::Approx(via_tp).epsilon(1e-12));
    CHECK(lib == doctest::Approx(via_g).epsilon(1e-12));
  }
}

TEST_CASE("stacked chart coordinates are coordinate-major and invert cleanly") {
  CHECK(chart_index(2, 1, 4) == 6);
  CHECK(chart_index(0, 0, 4) == 0);
  CHECK(chart_index(3, 0, 4) == 3);

  Rng rng(15);
  Configuration q = oracle::random_config(4, rng);
  for (ChartTag tag : {ChartTag::Graph, ChartTag::ThetaPhi}) {
    const Eigen::VectorXd z = configuration_chart_coords(q, tag);
    REQUIRE(z.size() == 8);
    const Eigen::Vector2d c0 = chart_coords_of(q.points[0], tag);
    CHECK(z[0] == doctest::Approx(c0[0]).epsilon(1e-15));
    CHECK(z[4] == doctest::Approx(c0[1]).epsilon(1e-15));
    const Configuration back = configuration_from_chart(z, q.masses, tag);
    for (int i = 0; i < 4; ++i) {
      CHECK(back.points[i].x == doctest::Approx(q.points[i].x).epsilon(1e-12));
      CHECK(back.points[i].y == doctest::Approx(q.points[i].y).epsilon(1e-12));
    }
  }
}
