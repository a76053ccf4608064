#include "grushin/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace grushin {

namespace {

using nlohmann::json;

struct Ctx {
  std::string origin;
  std::string path;
  Ctx at(const std::string& key) const { return {origin, path + "." + key}; }
  Ctx idx(size_t i) const {
    return {origin, path + "[" + std::to_string(i) + "]"};
  }
};

[[noreturn]] void fail(const Ctx& c, const std::string& what) {
  throw ParseError(c.origin, c.path + ": " + what);
}

void check_keys(const json& j, const Ctx& c,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(c, "expected an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    const auto match = [&](const char* s) { return k == s; };
    if (!std::any_of(required.begin(), required.end(), match) &&
        !std::any_of(optional.begin(), optional.end(), match))
      fail(c, "unexpected field \"" + k + "\"");
  }
  for (const char* k : required)
    if (!j.contains(k)) fail(c, "missing field \"" + std::string(k) + "\"");
}

double get_double(const json& j, const Ctx& c) {
  if (!j.is_number()) fail(c, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(c, "number must be finite");
  return v;
}

std::string get_string(const json& j, const Ctx& c) {
  if (!j.is_string()) fail(c, "expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const Ctx& c, size_t exact_size = 0) {
  if (!j.is_array()) fail(c, "expected an array");
  if (exact_size && j.size() != exact_size)
    fail(c, "expected an array of " + std::to_string(exact_size) +
                " elements, got " + std::to_string(j.size()));
  return j;
}

std::vector<double> get_double_array(const json& j, const Ctx& c,
                                     size_t min_size = 0) {
  get_array(j, c);
  if (j.size() < min_size)
    fail(c, "expected at least " + std::to_string(min_size) + " elements");
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(get_double(j[i], c.idx(i)));
  return out;
}

Complex get_complex(const json& j, const Ctx& c) {
  get_array(j, c, 2);
  return {get_double(j[0], c.idx(0)), get_double(j[1], c.idx(1))};
}

GrushinPoint get_point(const json& j, const Ctx& c) {
  get_array(j, c, 2);
  return {get_double(j[0], c.idx(0)), get_double(j[1], c.idx(1))};
}

// Wraps library validation errors with the document position.
template <typename F>
auto checked(const Ctx& c, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(c, e.what());
  }
}

HoloExpr parse_expr(const json& j, const Ctx& c) {
  if (!j.is_object()) fail(c, "expected an expression object");
  if (!j.contains("type")) fail(c, "missing field \"type\"");
  const std::string type = get_string(j["type"], c.at("type"));
  if (type == "identity") {
    check_keys(j, c, {"type"});
    return HoloExpr::identity();
  }
  if (type == "real_affine") {
    check_keys(j, c, {"type", "a", "c"});
    const double a = get_double(j["a"], c.at("a"));
    const double cc = get_double(j["c"], c.at("c"));
    return checked(c, [&] { return HoloExpr::real_affine(a, cc); });
  }
  if (type == "complex_affine") {
    check_keys(j, c, {"type", "a", "b"});
    const Complex a = get_complex(j["a"], c.at("a"));
    const Complex b = get_complex(j["b"], c.at("b"));
    return checked(c, [&] { return HoloExpr::complex_affine(a, b); });
  }
  if (type == "joukovski") {
    check_keys(j, c, {"type"});
    return HoloExpr::joukovski();
  }
  if (type == "odd_real_poly") {
    check_keys(j, c, {"type", "coeffs"}, {"domain"});
    std::vector<double> coeffs =
        get_double_array(j["coeffs"], c.at("coeffs"), 1);
    std::optional<PlaneRect> domain;
    if (j.contains("domain")) {
      const Ctx cd = c.at("domain");
      const json& d = get_array(j["domain"], cd, 4);
      domain = PlaneRect{get_double(d[0], cd.idx(0)),
                         get_double(d[1], cd.idx(1)),
                         get_double(d[2], cd.idx(2)),
                         get_double(d[3], cd.idx(3))};
      if (!(domain->umin < domain->umax && domain->vmin < domain->vmax))
        fail(cd, "degenerate rectangle");
    }
    return checked(
        c, [&] { return HoloExpr::odd_real_poly(std::move(coeffs), domain); });
  }
  if (type == "compose") {
    check_keys(j, c, {"type", "outer", "inner"});
    HoloExpr outer = parse_expr(j["outer"], c.at("outer"));
    HoloExpr inner = parse_expr(j["inner"], c.at("inner"));
    return HoloExpr::compose(std::move(outer), std::move(inner));
  }
  fail(c.at("type"), "unknown expression type \"" + type + "\"");
}

std::vector<double> get_matrix(const json& j, const Ctx& c, size_t rows,
                               size_t cols) {
  get_array(j, c, rows);
  std::vector<double> flat;
  flat.reserve(rows * cols);
  for (size_t r = 0; r < rows; ++r) {
    const Ctx cr = c.idx(r);
    const json& row = get_array(j[r], cr, cols);
    for (size_t i = 0; i < cols; ++i)
      flat.push_back(get_double(row[i], cr.idx(i)));
  }
  return flat;
}

GrushinMap parse_map(const json& j, const Ctx& c) {
  if (!j.is_object()) fail(c, "expected a map object");
  if (!j.contains("kind")) fail(c, "missing field \"kind\"");
  if (!j.contains("alpha")) fail(c, "missing field \"alpha\"");
  const double alpha_v = get_double(j["alpha"], c.at("alpha"));
  const Alpha alpha =
      checked(c.at("alpha"), [&] { return Alpha(alpha_v); });
  const std::string kind = get_string(j["kind"], c.at("kind"));
  if (kind == "conjugated") {
    check_keys(j, c, {"alpha", "kind", "expr"});
    return GrushinMap::make_conjugated(alpha,
                                       parse_expr(j["expr"], c.at("expr")));
  }
  if (kind == "entire") {
    check_keys(j, c, {"alpha", "kind", "a", "b"});
    const double a = get_double(j["a"], c.at("a"));
    const double b = get_double(j["b"], c.at("b"));
    return checked(c, [&] { return GrushinMap::make_entire(alpha, a, b); });
  }
  if (kind == "sampled") {
    check_keys(j, c, {"alpha", "kind", "xs", "ys", "g1", "g2"});
    SampledGrid grid;
    grid.xs = get_double_array(j["xs"], c.at("xs"), 2);
    grid.ys = get_double_array(j["ys"], c.at("ys"), 2);
    grid.g1 = get_matrix(j["g1"], c.at("g1"), grid.ys.size(), grid.xs.size());
    grid.g2 = get_matrix(j["g2"], c.at("g2"), grid.ys.size(), grid.xs.size());
    return checked(
        c, [&] { return GrushinMap::make_sampled(alpha, std::move(grid)); });
  }
  fail(c.at("kind"), "unknown map kind \"" + kind + "\"");
}

ParamCurve parse_curve(const json& j, const Ctx& c) {
  if (!j.is_object()) fail(c, "expected a curve object");
  if (!j.contains("kind")) fail(c, "missing field \"kind\"");
  const std::string kind = get_string(j["kind"], c.at("kind"));
  if (kind == "polyline") {
    check_keys(j, c, {"kind", "t", "points"});
    std::vector<double> ts = get_double_array(j["t"], c.at("t"), 2);
    const Ctx cp = c.at("points");
    const json& pts = get_array(j["points"], cp);
    std::vector<GrushinPoint> points;
    points.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
      points.push_back(get_point(pts[i], cp.idx(i)));
    return checked(c, [&] {
      return ParamCurve::polyline(std::move(ts), std::move(points));
    });
  }
  if (kind == "segment") {
    check_keys(j, c, {"kind", "from", "to"});
    const GrushinPoint a = get_point(j["from"], c.at("from"));
    const GrushinPoint b = get_point(j["to"], c.at("to"));
    return checked(c, [&] { return ParamCurve::segment(a, b); });
  }
  if (kind == "graph") {
    check_keys(j, c, {"kind", "interval", "poly"});
    const Ctx ci = c.at("interval");
    const json& iv = get_array(j["interval"], ci, 2);
    const double a = get_double(iv[0], ci.idx(0));
    const double b = get_double(iv[1], ci.idx(1));
    if (!(a < b)) fail(ci, "interval must satisfy a < b");
    std::vector<double> poly = get_double_array(j["poly"], c.at("poly"), 1);
    const auto horner = [poly](double t) {
      double v = 0.0;
      for (size_t k = poly.size(); k-- > 0;) v = v * t + poly[k];
      return v;
    };
    const auto dhorner = [poly](double t) {
      double v = 0.0;
      for (size_t k = poly.size(); k-- > 1;) v = v * t + double(k) * poly[k];
      return v;
    };
    return checked(c, [&] {
      return ParamCurve::closed_form(
          a, b, [horner](double t) { return GrushinPoint{t, horner(t)}; },
          [dhorner](double t) { return Vec2{1.0, dhorner(t)}; });
    });
  }
  fail(c.at("kind"), "unknown curve kind \"" + kind + "\"");
}

Rational get_rational(const json& j, const Ctx& c) {
  if (j.is_string())
    return checked(c, [&] { return Rational::parse(j.get<std::string>()); });
  if (j.is_number())
    return checked(c, [&] { return Rational::from_double(j.get<double>()); });
  fail(c, "expected a number or a rational string");
}

RectilinearDomain parse_domain(const json& j, const Ctx& c) {
  check_keys(j, c, {"rects"});
  const Ctx cr = c.at("rects");
  const json& arr = get_array(j["rects"], cr);
  std::vector<RatRect> rects;
  rects.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const Ctx ci = cr.idx(i);
    const json& r = get_array(arr[i], ci, 4);
    rects.push_back(RatRect{
        get_rational(r[0], ci.idx(0)), get_rational(r[1], ci.idx(1)),
        get_rational(r[2], ci.idx(2)), get_rational(r[3], ci.idx(3))});
  }
  return checked(c, [&] { return RectilinearDomain(std::move(rects)); });
}

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(origin, e.what());
  }
}

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(file, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// null for non-finite values (JSON has no inf/nan literal).
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

json length_json(const LengthResult& res) {
  json j;
  j["type"] = "length_result";
  j["value"] = res.diverged ? json(nullptr) : num(res.value);
  j["diverged"] = res.diverged;
  j["error_estimate"] = num(res.error_estimate);
  j["axis_crossings"] = num_array(res.axis_crossings);
  return j;
}

json curve_json(const ParamCurve& curve) {
  if (!curve.is_polyline())
    throw InvalidArgumentError(
        "curve_to_json: only polyline curves serialize; sample closed-form "
        "curves first");
  json j;
  j["kind"] = "polyline";
  j["t"] = num_array(curve.knots());
  json pts = json::array();
  for (const GrushinPoint& p : curve.points())
    pts.push_back(json::array({num(p.x), num(p.y)}));
  j["points"] = pts;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const char* status_name(LimitStatus s) {
  switch (s) {
    case LimitStatus::finite_nonzero: return "finite_nonzero";
    case LimitStatus::vanishing: return "vanishing";
    case LimitStatus::divergent: return "divergent";
    case LimitStatus::untested: return "untested";
  }
  return "untested";
}

const char* verdict_name(AdmissibilityReport::Verdict v) {
  switch (v) {
    case AdmissibilityReport::Verdict::admissible: return "admissible";
    case AdmissibilityReport::Verdict::not_admissible: return "not_admissible";
    case AdmissibilityReport::Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* trend_name(AdmissibilityReport::Trend t) {
  return t == AdmissibilityReport::Trend::increasing ? "increasing" : "stable";
}

}  // namespace

GrushinMap parse_map_json(const std::string& text, const std::string& origin) {
  return parse_map(parse_text(text, origin), Ctx{origin, "$"});
}

ParamCurve parse_curve_json(const std::string& text,
                            const std::string& origin) {
  return parse_curve(parse_text(text, origin), Ctx{origin, "$"});
}

RectilinearDomain parse_domain_json(const std::string& text,
                                    const std::string& origin) {
  return parse_domain(parse_text(text, origin), Ctx{origin, "$"});
}

HoloExpr parse_expr_json(const std::string& text, const std::string& origin) {
  return parse_expr(parse_text(text, origin), Ctx{origin, "$"});
}

GrushinMap load_map(const std::string& file) {
  return parse_map_json(slurp(file), file);
}

ParamCurve load_curve(const std::string& file) {
  return parse_curve_json(slurp(file), file);
}

RectilinearDomain load_domain(const std::string& file) {
  return parse_domain_json(slurp(file), file);
}

std::string to_json(const ConformalityReport& rep) {
  json j;
  j["type"] = "conformality_report";
  j["pass"] = rep.pass;
  j["reasons"] = rep.reasons;
  j["max_wbar"] = num(rep.max_wbar);
  j["max_w"] = num(rep.max_w);
  j["min_det_dalpha"] = num(rep.min_det_dalpha);
  j["zero_set_discrepancy"] = num(rep.zero_set_discrepancy);
  j["source_axis_components"] = rep.source_axis_components;
  j["image_axis_components"] = rep.image_axis_components;
  j["grid_points"] = rep.grid_points;
  j["skipped_singular"] = rep.skipped_singular;
  j["used_analytic_jets"] = rep.used_analytic_jets;
  json checks = json::array();
  for (const AxisSegmentCheck& c : rep.limit_checks) {
    json jc;
    jc["y_lo"] = num(c.y_lo);
    jc["y_hi"] = num(c.y_hi);
    jc["status"] = status_name(c.status);
    jc["matrix_norm"] = num(c.matrix_norm);
    jc["reference_norm"] = num(c.reference_norm);
    checks.push_back(jc);
  }
  j["limit_checks"] = checks;
  return dump(j);
}

std::string to_json(const LengthResult& res) { return dump(length_json(res)); }

std::string to_json(const AdmissibilityReport& rep) {
  json j;
  j["type"] = "admissibility_report";
  j["verdict"] = verdict_name(rep.verdict);
  j["trend_dx"] = trend_name(rep.trend_dx);
  j["trend_dy"] = trend_name(rep.trend_dy);
  j["integral_dx"] = num(rep.integral_dx);
  j["integral_dy_over_xalpha"] = num(rep.integral_dy_over_xalpha);
  j["ladder_dx"] = num_array(rep.ladder_dx);
  j["ladder_dy"] = num_array(rep.ladder_dy);
  return dump(j);
}

std::string to_json(const DistanceResult& res) {
  json j;
  j["type"] = "distance_result";
  j["distance_upper"] = num(res.distance_upper);
  j["lower_bound"] = num(res.lower_bound);
  j["objective_evals"] = res.objective_evals;
  j["iterations_used"] = res.iterations_used;
  j["curve"] = curve_json(res.curve);
  return dump(j);
}

std::string to_json(const DistortionResult& res) {
  json j;
  j["type"] = "distortion_result";
  j["pushed_length"] = num(res.pushed_length);
  j["weighted_length"] = num(res.weighted_length);
  j["base_length"] = num(res.base_length);
  j["c1"] = num(res.c1);
  j["c2"] = num(res.c2);
  j["pushed_detail"] = length_json(res.pushed_detail);
  j["weighted_detail"] = length_json(res.weighted_detail);
  j["base_detail"] = length_json(res.base_detail);
  return dump(j);
}

std::string to_json(const ObstructionResult& res) {
  json j;
  j["type"] = "obstruction_result";
  j["obstructed"] = res.obstructed;
  j["certificate"] = res.certificate;
  j["axis_map"] = res.axis_map;
  j["side_map"] = res.side_map;
  j["side_swapped"] = res.side_swapped;
  return dump(j);
}

std::string to_json(const RatioLimitReport& rep) {
  json j;
  j["type"] = "ratio_limit_report";
  j["xs"] = num_array(rep.xs);
  j["ratios"] = num_array(rep.ratios);
  j["errors"] = num_array(rep.errors);
  j["reference"] = num(rep.reference);
  j["rate"] = num(rep.rate);
  j["converged"] = rep.converged;
  return dump(j);
}

std::string to_json(const IncidenceGraph& graph) {
  json j;
  j["type"] = "incidence_graph";
  j["axis_count"] = graph.axis_count;
  json axis = json::array();
  for (const RatInterval& seg : graph.axis)
    axis.push_back(json::array({seg.lo.str(), seg.hi.str()}));
  j["axis"] = axis;
  json sides = json::array();
  for (const SideComponent& s : graph.sides) {
    json js;
    js["side"] = s.side;
    js["rect_indices"] = s.rect_indices;
    js["incident_axis"] = s.incident_axis;
    sides.push_back(js);
  }
  j["sides"] = sides;
  json edges = json::array();
  for (const auto& [a, s] : graph.edges)
    edges.push_back(json::array({a, s}));
  j["edges"] = edges;
  j["axis_degree"] = graph.axis_degree;
  j["side_degree"] = graph.side_degree;
  return dump(j);
}

std::string classification_to_json(const std::optional<EntireParams>& params) {
  json j;
  j["type"] = "entire_classification";
  j["entire"] = params.has_value();
  if (params) {
    j["a"] = num(params->a);
    j["b"] = num(params->b);
    j["max_residual"] = num(params->max_residual);
  }
  return dump(j);
}

std::string curve_to_json(const ParamCurve& curve) {
  return dump(curve_json(curve));
}

void emit_grid_csv(const GrushinMap& map, const RectilinearDomain& domain,
                   int resolution, std::ostream& out) {
  if (resolution < 2)
    throw InvalidArgumentError("emit_grid_csv: resolution must be >= 2");
  const auto bb = domain.bbox();
  const double hx = (bb[1] - bb[0]) / resolution;
  const double hy = (bb[3] - bb[2]) / resolution;
  const double fd_h = 0.45 * std::min(hx, hy);
  const Alpha alpha = map.alpha();
  out << "x,y,g1,g2,wbar_abs,det_dalpha\n";
  char buf[256];
  for (int j = 0; j < resolution; ++j) {
    const double y = bb[2] + (j + 0.5) * hy;
    for (int i = 0; i < resolution; ++i) {
      const double x = bb[0] + (i + 0.5) * hx;
      if (!domain.contains(x, y)) continue;
      const GrushinPoint img = map.evaluate({x, y});
      double wbar_abs = std::nan(""), det = std::nan("");
      try {
        const HorizontalJet jet = map.has_analytic_jets()
                                      ? map.analytic_jet({x, y})
                                      : finite_diff_jet(map, {x, y}, fd_h);
        wbar_abs = std::abs(wirtinger(alpha, jet, {x, y}).wbar);
        if (std::fabs(jet.g1) >= 1e-12)
          det = d_alpha_matrix(alpha, jet, {x, y}).det();
      } catch (const Error&) {
      }
      std::snprintf(buf, sizeof buf,
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", x, y, img.x,
                    img.y, wbar_abs, det);
      out << buf;
    }
  }
}

}  // namespace grushin
