#pragma once

#include <cstdint>

#include "grushin/curves.hpp"
#include "grushin/types.hpp"

namespace grushin {

// Certified upper bound for the Carnot-Caratheodory distance, produced by
// optimizing a polyline between the endpoints.
struct DistanceResult {
  double distance_upper = 0.0;
  double lower_bound = 0.0;  // |p.x - q.x|, the horizontal-variation bound
  ParamCurve curve;          // the optimized polyline (t in [0, 1])
  long long objective_evals = 0;
  int iterations_used = 0;
};

// Multi-resolution descent: starts from the straight segment at 3 knots,
// alternates accept-only coordinate-descent sweeps with knot-doubling
// subdivision (which preserves the path, hence the length), until `knots`
// vertices are reached or the sweep budget `iterations` is exhausted. The
// same seed reproduces the same trajectory; a larger budget or a deeper
// knot ladder only extends that trajectory, so the reported bound is
// non-increasing in both. The returned bound is the optimized polyline's
// length recomputed with the rigorous integrator.
DistanceResult cc_distance_upper(Alpha alpha, GrushinPoint p, GrushinPoint q,
                                 int knots, int iterations, uint64_t seed);

}  // namespace grushin
