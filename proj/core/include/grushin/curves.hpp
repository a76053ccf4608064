#pragma once

#include <functional>
#include <vector>

#include "grushin/conformal.hpp"
#include "grushin/types.hpp"

namespace grushin {

// Parametrized curve t -> (gamma1(t), gamma2(t)) on [t0, t1]. Two
// representations: closed form (position plus velocity callbacks, checked
// against each other at construction) and polyline (piecewise linear with
// explicit knots; velocity is the segment slope, right-continuous).
class ParamCurve {
 public:
  using PosFn = std::function<GrushinPoint(double)>;
  using VelFn = std::function<Vec2(double)>;

  // Degenerate constant curve at the origin; useful as a placeholder in
  // result structs before assignment.
  ParamCurve() = default;

  static ParamCurve closed_form(double t0, double t1, PosFn pos, VelFn vel);
  static ParamCurve polyline(std::vector<double> ts,
                             std::vector<GrushinPoint> pts);
  static ParamCurve segment(GrushinPoint a, GrushinPoint b);  // t in [0, 1]

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  GrushinPoint position(double t) const;
  Vec2 velocity(double t) const;
  bool is_polyline() const { return !knots_.empty(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<GrushinPoint>& points() const { return points_; }

 private:
  double t0_ = 0.0, t1_ = 0.0;
  PosFn pos_;
  VelFn vel_;
  std::vector<double> knots_;
  std::vector<GrushinPoint> points_;
  size_t segment_of(double t) const;
};

struct LengthOptions {
  double rel_tol = 1e-10;
  // eps-floor applied to |gamma1| near the singular line, as a fraction of
  // the curve diameter (keeps the regularization dilation-covariant).
  double floor_scale = 1e-9;
  int max_doublings = 12;  // smooth-piece panel doublings (from 4 panels)
  int max_shells = 60;     // dyadic shells toward a singular split point
};

struct LengthResult {
  double value = 0.0;  // +inf when diverged
  bool diverged = false;
  double error_estimate = 0.0;  // includes sensitivity to the eps-floor
  std::vector<double> axis_crossings;  // parameters where gamma1 changes sign
};

// Arc length for the metric integrand sqrt(g1'^2 + g2'^2 / |g1|^(2 alpha)).
// The curve is split at sign changes of gamma1; pieces touching the split
// points are integrated over dyadic shells with the floored integrand, and
// the integral is declared divergent when shell contributions stop decaying
// under refinement.
LengthResult grushin_length(Alpha alpha, const ParamCurve& curve,
                            const LengthOptions& opts = {});

// Admissibility of gamma: both \int |gamma1'| and \int |gamma2'|/|gamma1|^a
// must be finite. Estimated on a uniform midpoint ladder with `levels`
// refinements; an integral whose last two refinements each grow by more
// than 10% is classified as increasing (divergent at desk scale).
struct AdmissibilityReport {
  enum class Verdict { admissible, not_admissible, inconclusive };
  enum class Trend { stable, increasing };
  Verdict verdict = Verdict::inconclusive;
  Trend trend_dx = Trend::stable;
  Trend trend_dy = Trend::stable;
  double integral_dx = 0.0;
  double integral_dy_over_xalpha = 0.0;
  std::vector<double> ladder_dx;  // estimate per refinement level
  std::vector<double> ladder_dy;
};
AdmissibilityReport admissibility_check(Alpha alpha, const ParamCurve& curve,
                                        int levels = 3);

// Image polyline of the curve under the map, sampled at `samples` parameters
// (uniform, plus the original knots for polyline inputs).
ParamCurve pushforward(const GrushinMap& map, const ParamCurve& curve,
                       int samples);

// Length of the image curve two ways: directly (pushforward + length) and
// as the weighted length \int |grad_H g1| dl along the source curve, with
// the observed min/max of the pointwise distortion factor.
struct DistortionOptions {
  int push_samples = 8193;
  LengthOptions length;
};
struct DistortionResult {
  double pushed_length = 0.0;
  double weighted_length = 0.0;
  double base_length = 0.0;  // length of the source curve
  double c1 = 0.0, c2 = 0.0;  // min/max of |grad_H g1| along the curve
  LengthResult pushed_detail;
  LengthResult weighted_detail;
  LengthResult base_detail;
};
DistortionResult length_distortion(const GrushinMap& map,
                                   const ParamCurve& curve,
                                   const DistortionOptions& opts = {});

}  // namespace grushin
