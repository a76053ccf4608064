#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "grushin/distance.hpp"

using namespace grushin;

TEST_CASE("coincident endpoints give zero") {
  const DistanceResult res =
      cc_distance_upper(Alpha(1.0), {1, 2}, {1, 2}, 33, 100, 1);
  CHECK(res.distance_upper == 0.0);
  CHECK(res.lower_bound == 0.0);
}

TEST_CASE("horizontal pairs are joined by the straight segment") {
  // The segment (1,0)-(3,0) realizes the lower bound |dx| exactly, for
  // every alpha: the y-term of the metric vanishes along it.
  for (const double av : {0.5, 1.0, 2.0}) {
    const DistanceResult res =
        cc_distance_upper(Alpha(av), {1, 0}, {3, 0}, 33, 2000, 1);
    CHECK(res.lower_bound == doctest::Approx(2.0));
    CHECK(res.distance_upper >= 2.0);
    CHECK(res.distance_upper <= 2.02);
  }
}

TEST_CASE("optimization beats the straight line for vertical pairs") {
  // Straight vertical at x = 0.5 costs 1/0.5 = 2; bowing away from the
  // axis is strictly cheaper.
  const DistanceResult res =
      cc_distance_upper(Alpha(1.0), {0.5, 0}, {0.5, 1}, 33, 2000, 1);
  CHECK(res.distance_upper < 1.99);
  CHECK(res.distance_upper > 0.9);  // euclidean floor sanity
  CHECK(res.lower_bound == 0.0);
}

TEST_CASE("upper bound is monotone in the sweep budget") {
  const Alpha alpha(1.0);
  double prev = HUGE_VAL;
  for (const int iters : {0, 20, 100, 500}) {
    const DistanceResult res =
        cc_distance_upper(alpha, {0.5, 0}, {-0.5, 2}, 17, iters, 9);
    CHECK(res.distance_upper <= prev * (1 + 1e-9) + 1e-12);
    prev = res.distance_upper;
  }
}

TEST_CASE("upper bound is monotone in the knot budget") {
  const Alpha alpha(1.0);
  double prev = HUGE_VAL;
  for (const int knots : {3, 5, 9, 17, 33}) {
    const DistanceResult res =
        cc_distance_upper(alpha, {0.5, 0}, {-0.5, 2}, knots, 800, 9);
    CHECK(res.distance_upper <= prev * (1 + 1e-9) + 1e-12);
    prev = res.distance_upper;
  }
}

TEST_CASE("identical seeds reproduce the result exactly") {
  const DistanceResult a =
      cc_distance_upper(Alpha(1.0), {0.5, 0}, {0.5, 1}, 17, 300, 42);
  const DistanceResult b =
      cc_distance_upper(Alpha(1.0), {0.5, 0}, {0.5, 1}, 17, 300, 42);
  CHECK(a.distance_upper == b.distance_upper);
  CHECK(a.objective_evals == b.objective_evals);
  REQUIRE(a.curve.points().size() == b.curve.points().size());
  for (size_t i = 0; i < a.curve.points().size(); ++i) {
    CHECK(a.curve.points()[i].x == b.curve.points()[i].x);
    CHECK(a.curve.points()[i].y == b.curve.points()[i].y);
  }
}

TEST_CASE("returned curve connects the endpoints and matches the bound") {
  const DistanceResult res =
      cc_distance_upper(Alpha(2.0), {1, 1}, {2, -1}, 17, 500, 5);
  REQUIRE(res.curve.is_polyline());
  const GrushinPoint front = res.curve.points().front();
  const GrushinPoint back = res.curve.points().back();
  CHECK(front.x == doctest::Approx(1.0));
  CHECK(front.y == doctest::Approx(1.0));
  CHECK(back.x == doctest::Approx(2.0));
  CHECK(back.y == doctest::Approx(-1.0));
  const LengthResult len = grushin_length(Alpha(2.0), res.curve);
  CHECK(res.distance_upper == doctest::Approx(len.value).epsilon(1e-12));
  CHECK(res.distance_upper >= res.lower_bound);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(cc_distance_upper(Alpha(1.0), {0, 0}, {1, 1}, 1, 10, 1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(cc_distance_upper(Alpha(1.0), {0, 0}, {1, 1}, 9, -1, 1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(
      cc_distance_upper(Alpha(1.0), {std::nan(""), 0}, {1, 1}, 9, 10, 1),
      InvalidArgumentError);
}

TEST_CASE("distance scales with dilation") {
  // d(delta_lambda p, delta_lambda q) = lambda d(p, q): compare upper
  // bounds computed independently at matched budgets.
  const Alpha alpha(1.0);
  const GrushinPoint p{0.5, 0}, q{0.5, 1};
  const GrushinPoint P = dilation(alpha, 2.0, p), Q = dilation(alpha, 2.0, q);
  const double d1 = cc_distance_upper(alpha, p, q, 33, 1500, 3).distance_upper;
  const double d2 = cc_distance_upper(alpha, P, Q, 33, 1500, 3).distance_upper;
  CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(5e-3));
}
