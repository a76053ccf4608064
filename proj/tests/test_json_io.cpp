#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "grushin/json_io.hpp"

using namespace grushin;

namespace {
std::string fixture(const std::string& name) {
  return std::string(GRUSHIN_FIXTURE_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("map documents parse for every kind") {
  const GrushinMap conj = load_map(fixture("map_joukovski_a1.json"));
  CHECK(conj.alpha().value() == 1.0);
  CHECK(conj.as_conjugated() != nullptr);
  const GrushinPoint img = conj.evaluate({2.0, 0.0});
  CHECK(img.x == doctest::Approx(2.2360679774997896));

  const GrushinMap ent = load_map(fixture("map_entire_a1.json"));
  REQUIRE(ent.as_entire() != nullptr);
  CHECK(ent.as_entire()->a == 2.0);
  CHECK(ent.as_entire()->b == 0.5);

  const GrushinMap smp = load_map(fixture("map_sampled_entire_a1.json"));
  CHECK(smp.as_sampled() != nullptr);
  CHECK(!smp.has_analytic_jets());
}

TEST_CASE("expression grammar covers composition and polynomials") {
  const GrushinMap m = parse_map_json(R"({
    "alpha": 0.5,
    "kind": "conjugated",
    "expr": {
      "type": "compose",
      "outer": {"type": "real_affine", "a": 2, "c": 0},
      "inner": {"type": "odd_real_poly", "coeffs": [1, 0.5],
                "domain": [-4, 4, -4, 4]}
    }
  })",
                                      "<test>");
  CHECK(m.as_conjugated() != nullptr);
  CHECK_NOTHROW(m.evaluate({0.5, 0.5}));
}

TEST_CASE("unknown and missing fields are rejected with paths") {
  try {
    parse_map_json(R"({"alpha": 1, "kind": "entire", "a": 2, "b": 0,
                       "weird": 1})",
                   "doc");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("weird") != std::string::npos);
    CHECK(e.path == "doc");
  }
  try {
    parse_map_json(R"({"alpha": 1, "kind": "conjugated",
                       "expr": {"type": "real_affine", "a": 1}})",
                   "doc");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$.expr") != std::string::npos);
    CHECK(std::string(e.what()).find("\"c\"") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_map_json("{", "doc"), ParseError);
  CHECK_THROWS_AS(parse_map_json(R"({"alpha": -1, "kind": "entire",
                                     "a": 1, "b": 0})",
                                 "doc"),
                  ParseError);
  CHECK_THROWS_AS(parse_map_json(R"({"alpha": 1, "kind": "nope"})", "doc"),
                  ParseError);
}

TEST_CASE("invariant violations carry the document position") {
  try {
    load_map(fixture("bad_expr_zero_a.json"));
    FAIL("expected throw");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("$.expr") != std::string::npos);
    CHECK(msg.find("nonzero") != std::string::npos);
  }
  try {
    load_domain(fixture("bad_domain_rect.json"));
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("rects[1]") != std::string::npos);
  }
}

TEST_CASE("curve documents parse for every kind") {
  const ParamCurve poly = load_curve(fixture("curve_polyline_offaxis.json"));
  CHECK(poly.is_polyline());
  CHECK(poly.points().size() == 4);

  const ParamCurve seg = load_curve(fixture("curve_segment_horizontal.json"));
  CHECK(seg.position(0.0).x == doctest::Approx(1.0));
  CHECK(seg.position(1.0).x == doctest::Approx(3.0));

  const ParamCurve graph = load_curve(fixture("curve_t_t3.json"));
  CHECK(graph.position(0.5).y == doctest::Approx(0.125));
  CHECK(graph.velocity(0.5).y == doctest::Approx(0.75));
}

TEST_CASE("domain coordinates accept exact rational strings") {
  const RectilinearDomain dom = parse_domain_json(
      R"({"rects": [["-2/3", "1/3", "-1.5", 2]]})", "<test>");
  CHECK(dom.rects()[0].xmin == Rational(-2, 3));
  CHECK(dom.rects()[0].xmax == Rational(1, 3));
  CHECK(dom.rects()[0].ymin == Rational(-3, 2));
  CHECK(dom.rects()[0].ymax == Rational(2));
  CHECK_THROWS_AS(
      parse_domain_json(R"({"rects": [["x", 1, 0, 1]]})", "<test>"),
      ParseError);
}

TEST_CASE("missing files raise a parse error naming the path") {
  try {
    load_map("/nonexistent/nowhere.json");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.path == "/nonexistent/nowhere.json");
  }
}

TEST_CASE("report serialization is deterministic") {
  const GrushinMap map = load_map(fixture("map_identity_a1.json"));
  const RectilinearDomain dom = load_domain(fixture("domain_square.json"));
  const std::string a = to_json(verify_conformal(map, dom));
  const std::string b = to_json(verify_conformal(map, dom));
  CHECK(a == b);
  CHECK(a.find("\"pass\": true") != std::string::npos);
  CHECK(a.back() == '\n');
}

TEST_CASE("length reports serialize divergence as null") {
  LengthResult res;
  res.value = HUGE_VAL;
  res.diverged = true;
  res.error_estimate = 0.0;
  const std::string s = to_json(res);
  CHECK(s.find("\"value\": null") != std::string::npos);
  CHECK(s.find("\"diverged\": true") != std::string::npos);
}

TEST_CASE("curve serialization round trips a polyline") {
  const ParamCurve c = load_curve(fixture("curve_polyline_offaxis.json"));
  const ParamCurve back = parse_curve_json(curve_to_json(c), "<round>");
  REQUIRE(back.points().size() == c.points().size());
  for (size_t i = 0; i < c.points().size(); ++i) {
    CHECK(back.points()[i].x == c.points()[i].x);
    CHECK(back.points()[i].y == c.points()[i].y);
  }
  // A segment is stored as a two-point polyline, so it serializes too.
  const ParamCurve seg = load_curve(fixture("curve_segment_horizontal.json"));
  const ParamCurve segback = parse_curve_json(curve_to_json(seg), "<round>");
  REQUIRE(segback.points().size() == 2);
  CHECK(segback.points()[1].x == 3.0);
}

TEST_CASE("grid csv golden output for the identity") {
  const GrushinMap map = load_map(fixture("map_identity_a1.json"));
  const RectilinearDomain dom = load_domain(fixture("domain_square.json"));
  std::ostringstream out;
  emit_grid_csv(map, dom, 2, out);
  CHECK(out.str() ==
        "x,y,g1,g2,wbar_abs,det_dalpha\n"
        "-0.5,-0.5,-0.5,-0.5,0,1\n"
        "0.5,-0.5,0.5,-0.5,0,1\n"
        "-0.5,0.5,-0.5,0.5,0,1\n"
        "0.5,0.5,0.5,0.5,0,1\n");
  CHECK_THROWS_AS(emit_grid_csv(map, dom, 0, out), InvalidArgumentError);
}

TEST_CASE("obstruction and incidence reports serialize") {
  const RectilinearDomain a = load_domain(fixture("domain_omega.json"));
  const RectilinearDomain b = load_domain(fixture("domain_omega_prime.json"));
  const std::string obs = to_json(obstruction_check(a, b));
  CHECK(obs.find("\"obstructed\": true") != std::string::npos);
  CHECK(obs.find("degree multiset") != std::string::npos);
  const std::string inc = to_json(incidence_graph(a));
  CHECK(inc.find("\"axis_count\": 3") != std::string::npos);
  CHECK(inc.find("\"-3\"") != std::string::npos);  // exact rational endpoints
}

TEST_CASE("classification serialization") {
  const std::string yes =
      classification_to_json(EntireParams{2.0, 0.5, 1e-14});
  CHECK(yes.find("\"entire\": true") != std::string::npos);
  CHECK(yes.find("\"a\": 2.0") != std::string::npos);
  const std::string no = classification_to_json(std::nullopt);
  CHECK(no.find("\"entire\": false") != std::string::npos);
}
