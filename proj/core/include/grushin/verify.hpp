#pragma once

#include <string>
#include <vector>

#include "grushin/conformal.hpp"
#include "grushin/topology.hpp"

namespace grushin {

enum class LimitStatus { finite_nonzero, vanishing, divergent, untested };

struct VerifyOptions {
  int resolution = 100;
  double wbar_tol = 1e-10;     // analytic jets: |Wbar| <= tol * (1 + |W|)
  double wbar_tol_fd = 1e-5;   // finite-difference jets (sampled maps)
  double limit_tol = 1e-5;     // match tolerance against the Ext reference
  double limit_floor = 1e-8;   // below this the limit matrix counts as zero
  double injectivity_tol = 1e-9;
};

// Per axis component: behavior of D_alpha g approaching the segment.
struct AxisSegmentCheck {
  double y_lo = 0.0, y_hi = 0.0;
  LimitStatus status = LimitStatus::untested;
  double matrix_norm = 0.0;     // |D_alpha g| at the innermost probe
  double reference_norm = 0.0;  // |Ext * D gtilde| when available
};

struct ConformalityReport {
  bool pass = false;
  std::vector<std::string> reasons;  // empty iff pass

  double max_wbar = 0.0;
  double max_w = 0.0;
  double min_det_dalpha = 0.0;
  // Worst distance between the detected zero set of g1 and the axis, as a
  // fraction of nothing (absolute x units); +inf when a required zero is
  // missing entirely.
  double zero_set_discrepancy = 0.0;
  int source_axis_components = 0;
  int image_axis_components = 0;
  std::vector<AxisSegmentCheck> limit_checks;
  int grid_points = 0;
  int skipped_singular = 0;
  bool used_analytic_jets = false;
};

// Grid-based conformality verdict over a rectilinear domain: Wbar residual,
// orientation (det D_alpha g > 0), zero set of g1 against the axis, count
// of axis components before/after, boundary limit of D_alpha g, and an
// injectivity spot check. Throws GridTooCoarseError when some rectangle of
// the domain receives fewer than 4 grid points.
ConformalityReport verify_conformal(const GrushinMap& map,
                                    const RectilinearDomain& domain,
                                    const VerifyOptions& opts = {});

}  // namespace grushin
