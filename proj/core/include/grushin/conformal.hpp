#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "grushin/core_ops.hpp"
#include "grushin/holo.hpp"
#include "grushin/types.hpp"

namespace grushin {

// Rectangular tensor grid of map samples, row-major with y as the row index:
// g1[iy * xs.size() + ix] is the first component at (xs[ix], ys[iy]).
struct SampledGrid {
  std::vector<double> xs, ys;
  std::vector<double> g1, g2;
};

// A candidate conformal map of the Grushin plane. Three representations:
//   Conjugated:   phi^-1 o expr o phi for a holomorphic expression tree
//   EntireAffine: (sign(a) |a|^(1/(alpha+1)) x, a y + b), the entire family
//   Sampled:      bilinear interpolation of tabulated values
// Conjugated and EntireAffine carry analytic jets; Sampled does not.
class GrushinMap {
 public:
  struct Conjugated {
    Alpha alpha;
    HoloExpr expr;
  };
  struct EntireAffine {
    Alpha alpha;
    double a, b;
  };
  struct Sampled {
    Alpha alpha;
    SampledGrid grid;
  };

  static GrushinMap make_conjugated(Alpha alpha, HoloExpr expr);
  static GrushinMap make_entire(Alpha alpha, double a, double b);
  static GrushinMap make_sampled(Alpha alpha, SampledGrid grid);

  Alpha alpha() const;
  GrushinPoint evaluate(GrushinPoint p) const;
  bool has_analytic_jets() const;

  // Exact first-order jet from the defining formulas. For Conjugated maps,
  // throws SingularPointError where |g1| < 1e-12 (in particular on the
  // zero set of the first component). Sampled maps have no analytic jets.
  HorizontalJet analytic_jet(GrushinPoint p) const;

  const Conjugated* as_conjugated() const;
  const EntireAffine* as_entire() const;
  const Sampled* as_sampled() const;

 private:
  using Impl = std::variant<Conjugated, EntireAffine, Sampled>;
  explicit GrushinMap(Impl impl) : impl_(std::move(impl)) {}
  Impl impl_;
};

// Conjugation of a plane-side holomorphic expression. The expression should
// map the vertical axis to itself on the domain of interest; verify_conformal
// checks that behavior numerically rather than trusting the caller.
GrushinMap conjugate(Alpha alpha, HoloExpr expr);

// The entire conformal family; a must be nonzero.
GrushinMap entire_map(Alpha alpha, double a, double b);

// Probe grid for classify_entire: n x n points over the given box plus the
// axis points used to read off the parameters.
struct ProbeGrid {
  double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
  int n = 7;
};

struct EntireParams {
  double a, b;
  double max_residual;  // worst deviation from the entire formula on the grid
};

// Recovers (a, b) if the map agrees with the entire family on the probe
// grid; returns nullopt otherwise (NotEntireAffine verdict).
std::optional<EntireParams> classify_entire(const GrushinMap& map,
                                            const ProbeGrid& grid = {});

// Symbolic composition g o h. Both maps must share alpha; Sampled maps do
// not compose symbolically (DomainMismatchError).
GrushinMap compose_maps(const GrushinMap& g, const GrushinMap& h);

// Symbolic inverse; NotInvertibleError when none exists.
GrushinMap invert_map(const GrushinMap& map);

// Boundary extension factor at (0, y):
//   Ext(0, y) = (1 / |d gtilde_1 / du (i y)|)^(alpha / (alpha + 1))
// computed from the plane-side derivative of the conjugating expression.
// Throws DegenerateDerivativeError when that derivative is below 1e-12.
double ext_boundary(const GrushinMap& map, double y);

// Empirical check that gtilde_1(x + i y0) / x converges to the plane-side
// derivative as x -> 0, with the observed convergence rate.
struct RatioLimitReport {
  std::vector<double> xs;
  std::vector<double> ratios;
  std::vector<double> errors;  // |ratio - reference|
  double reference = 0.0;      // Re expr'(i y0)
  double rate = 0.0;           // least-squares slope of log error vs log x
  bool converged = false;
};
RatioLimitReport ratio_limit_check(const HoloExpr& expr, double y0,
                                   const std::vector<double>& xs);

// finite_diff_jet against a GrushinMap evaluator.
HorizontalJet finite_diff_jet(const GrushinMap& map, GrushinPoint p, double h);
HorizontalJet finite_diff_jet(const GrushinMap& map, GrushinPoint p);

}  // namespace grushin
