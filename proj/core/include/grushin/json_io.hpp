#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "grushin/conformal.hpp"
#include "grushin/curves.hpp"
#include "grushin/distance.hpp"
#include "grushin/topology.hpp"
#include "grushin/types.hpp"
#include "grushin/verify.hpp"

namespace grushin {

// Strict parsers: unknown fields, wrong types and out-of-range values are
// rejected with a ParseError carrying `origin` (file name or argument label)
// and the JSON path of the offending field. Map documents:
//   {"alpha": a, "kind": "conjugated", "expr": <expr>}
//   {"alpha": a, "kind": "entire", "a": a, "b": b}
//   {"alpha": a, "kind": "sampled", "xs": [...], "ys": [...],
//    "g1": [[row]...], "g2": [[row]...]}         (rows indexed by y)
// Expression nodes:
//   {"type": "identity"}
//   {"type": "real_affine", "a": a, "c": c}          a z + i c
//   {"type": "complex_affine", "a": [re,im], "b": [re,im]}
//   {"type": "joukovski"}
//   {"type": "odd_real_poly", "coeffs": [c0,...], "domain": [umin,umax,vmin,vmax]?}
//   {"type": "compose", "outer": <expr>, "inner": <expr>}
// Curve documents:
//   {"kind": "polyline", "t": [...], "points": [[x,y],...]}
//   {"kind": "segment", "from": [x,y], "to": [x,y]}       t in [0,1]
//   {"kind": "graph", "interval": [a,b], "poly": [c0,...]} t -> (t, poly(t))
// Domain documents:
//   {"rects": [[xmin,xmax,ymin,ymax], ...]}
// Domain coordinates may be JSON numbers (converted exactly from their
// binary value) or strings ("3", "-1.25", "2/3") for exact rationals.
GrushinMap parse_map_json(const std::string& text, const std::string& origin);
ParamCurve parse_curve_json(const std::string& text,
                            const std::string& origin);
RectilinearDomain parse_domain_json(const std::string& text,
                                    const std::string& origin);
HoloExpr parse_expr_json(const std::string& text, const std::string& origin);

GrushinMap load_map(const std::string& file);
ParamCurve load_curve(const std::string& file);
RectilinearDomain load_domain(const std::string& file);

// Deterministic pretty-printed JSON documents (2-space indent, trailing
// newline, keys in fixed order). Non-finite numbers serialize as null.
std::string to_json(const ConformalityReport& rep);
std::string to_json(const LengthResult& res);
std::string to_json(const AdmissibilityReport& rep);
std::string to_json(const DistanceResult& res);
std::string to_json(const DistortionResult& res);
std::string to_json(const ObstructionResult& res);
std::string to_json(const RatioLimitReport& rep);
std::string to_json(const IncidenceGraph& graph);
std::string classification_to_json(const std::optional<EntireParams>& params);

// Polyline curves only (the pushforward / distance outputs); parseable by
// parse_curve_json.
std::string curve_to_json(const ParamCurve& curve);

// CSV table over the same cell-center grid verify_conformal uses:
// header x,y,g1,g2,wbar_abs,det_dalpha, rows ordered y-outer / x-inner,
// 17 significant digits. Points outside the domain are omitted; jet
// failures (singular line, sampled-grid edge) print nan in the jet columns.
void emit_grid_csv(const GrushinMap& map, const RectilinearDomain& domain,
                   int resolution, std::ostream& out);

}  // namespace grushin
