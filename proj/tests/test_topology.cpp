#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "grushin/topology.hpp"

using namespace grushin;

namespace {

RectilinearDomain omega() {
  // One left component touching three axis intervals, three right
  // components touching one each: side degrees {3,1,1,1}.
  return RectilinearDomain({
      RatRect{Rational(-2), Rational(1), Rational(1), Rational(2)},
      RatRect{Rational(-2), Rational(-1), Rational(-3), Rational(2)},
      RatRect{Rational(-2), Rational(1), Rational(-1), Rational(0)},
      RatRect{Rational(-2), Rational(1), Rational(-3), Rational(-2)},
  });
}

RectilinearDomain omega_prime() {
  // Same axis component count, side degrees {2,2,1,1}.
  return RectilinearDomain({
      RatRect{Rational(-2), Rational(2), Rational(1), Rational(2)},
      RatRect{Rational(-2), Rational(-1), Rational(-1), Rational(2)},
      RatRect{Rational(-2), Rational(2), Rational(-1), Rational(0)},
      RatRect{Rational(1), Rational(2), Rational(-3), Rational(0)},
      RatRect{Rational(-2), Rational(2), Rational(-3), Rational(-2)},
  });
}

std::vector<int> sorted_side_degrees(const RectilinearDomain& dom) {
  const IncidenceGraph g = incidence_graph(dom);
  std::vector<int> d = g.side_degree;
  std::sort(d.begin(), d.end(), std::greater<int>());
  return d;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(3, 1).str() == "3");
  CHECK(a < Rational(1, 2));
  CHECK(Rational(-1, 3) < b);
  CHECK(a == Rational(2, 6));
  CHECK_THROWS_AS(Rational(1, 0), InvalidArgumentError);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-1.25") == Rational(-5, 4));
  CHECK(Rational::parse("2/3") == Rational(2, 3));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  // The document layer wraps these into ParseError with a field path; the
  // raw parser reports a plain argument error.
  CHECK_THROWS_AS(Rational::parse("abc"), InvalidArgumentError);
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgumentError);
  CHECK_THROWS_AS(Rational::parse(""), InvalidArgumentError);
}

TEST_CASE("rational from double is the exact binary value") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-2.0) == Rational(-2));
  CHECK(Rational::from_double(0.1) != Rational(1, 10));  // binary 0.1
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  // Values needing denominators beyond the exact range are refused with a
  // hint to use a decimal string.
  CHECK_THROWS_AS(Rational::from_double(1e-300), InvalidArgumentError);
}

TEST_CASE("domain validation names the offending rectangle") {
  CHECK_THROWS_AS(RectilinearDomain({}), InvalidArgumentError);
  try {
    RectilinearDomain({RatRect{Rational(0), Rational(1), Rational(0),
                               Rational(1)},
                       RatRect{Rational(2), Rational(2), Rational(0),
                               Rational(1)}});
    FAIL("expected a throw");
  } catch (const InvalidArgumentError& e) {
    CHECK(std::string(e.what()).find("rects[1]") != std::string::npos);
  }
}

TEST_CASE("contains is open") {
  const RectilinearDomain dom({RatRect{Rational(0), Rational(1), Rational(0),
                                       Rational(1)}});
  CHECK(dom.contains(0.5, 0.5));
  CHECK(!dom.contains(0.0, 0.5));
  CHECK(!dom.contains(1.0, 0.5));
  CHECK(!dom.contains(0.5, 1.0));
}

TEST_CASE("axis components merge only strict overlaps") {
  // Two straddling rectangles whose y-intervals merely touch at 1: the
  // open union omits the touching segment, so the components stay apart.
  const RectilinearDomain touching(
      {RatRect{Rational(-1), Rational(1), Rational(0), Rational(1)},
       RatRect{Rational(-1), Rational(1), Rational(1), Rational(2)}});
  CHECK(axis_components(touching).size() == 2);

  const RectilinearDomain overlapping(
      {RatRect{Rational(-1), Rational(1), Rational(0), Rational(1)},
       RatRect{Rational(-1), Rational(1), Rational(1, 2), Rational(2)}});
  const auto merged = axis_components(overlapping);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].lo == Rational(0));
  CHECK(merged[0].hi == Rational(2));

  // Rectangles that do not straddle contribute nothing.
  const RectilinearDomain off_axis(
      {RatRect{Rational(1), Rational(2), Rational(0), Rational(1)}});
  CHECK(axis_components(off_axis).empty());
}

TEST_CASE("omega decomposition invariants") {
  CHECK(axis_components(omega()).size() == 3);
  const std::vector<int> deg = sorted_side_degrees(omega());
  CHECK(deg == std::vector<int>{3, 1, 1, 1});

  CHECK(axis_components(omega_prime()).size() == 3);
  const std::vector<int> degp = sorted_side_degrees(omega_prime());
  CHECK(degp == std::vector<int>{2, 2, 1, 1});
}

TEST_CASE("incidence graph structure for omega") {
  const IncidenceGraph g = incidence_graph(omega());
  CHECK(g.axis_count == 3);
  CHECK(g.sides.size() == 4);
  CHECK(g.edges.size() == 6);  // degree sum on either class
  for (const int d : g.axis_degree) CHECK(d == 2);
  int left = 0, right = 0;
  for (const SideComponent& s : g.sides)
    (s.side < 0 ? left : right) += 1;
  CHECK(left == 1);
  CHECK(right == 3);
}

TEST_CASE("obstruction between omega and omega prime") {
  const ObstructionResult res = obstruction_check(omega(), omega_prime());
  CHECK(res.obstructed);
  CHECK(res.certificate.find("degree multiset") != std::string::npos);
  CHECK(res.certificate.find("{3,1,1,1}") != std::string::npos);
  CHECK(res.certificate.find("{2,2,1,1}") != std::string::npos);
}

TEST_CASE("no obstruction against itself, with witness maps") {
  const ObstructionResult res = obstruction_check(omega(), omega());
  CHECK(!res.obstructed);
  CHECK(res.certificate.empty());
  REQUIRE(res.axis_map.size() == 3);
  REQUIRE(res.side_map.size() == 4);
  CHECK(!res.side_swapped);
}

TEST_CASE("mirrored domains need the global side swap") {
  const RectilinearDomain base = omega();
  std::vector<RatRect> mirrored;
  for (const RatRect& r : base.rects())
    mirrored.push_back(
        RatRect{Rational(0) - r.xmax, Rational(0) - r.xmin, r.ymin, r.ymax});
  const RectilinearDomain mir(mirrored);

  const ObstructionResult with_swap = obstruction_check(omega(), mir, true);
  CHECK(!with_swap.obstructed);
  CHECK(with_swap.side_swapped);

  const ObstructionResult without_swap =
      obstruction_check(omega(), mir, false);
  CHECK(without_swap.obstructed);
}

TEST_CASE("axis count mismatch is certified first") {
  const RectilinearDomain one(
      {RatRect{Rational(-1), Rational(1), Rational(0), Rational(1)}});
  const ObstructionResult res = obstruction_check(one, omega());
  CHECK(res.obstructed);
  CHECK(res.certificate.find("axis") != std::string::npos);
}

TEST_CASE("scaling preserves the whole incidence structure") {
  const RectilinearDomain scaled = omega().scaled(Rational(3), Rational(1, 7));
  const ObstructionResult res = obstruction_check(omega(), scaled);
  CHECK(!res.obstructed);
  CHECK(sorted_side_degrees(scaled) == std::vector<int>{3, 1, 1, 1});
}

TEST_CASE("side components report their rectangles") {
  const auto sides = side_components(omega());
  REQUIRE(sides.size() == 4);
  // Deterministic order: the left component first.
  CHECK(sides[0].side == -1);
  CHECK(sides[0].rect_indices == std::vector<int>{0, 1, 2, 3});
  CHECK(sides[0].incident_axis == std::vector<int>{0, 1, 2});
}
