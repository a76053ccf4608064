#pragma once

#include <functional>
#include <utility>

#include "grushin/types.hpp"

namespace grushin {

// |t|^p with the convention 0^p = 0 (p > 0 throughout this library).
double abs_pow(double t, double p);

// sign(t) |t|^p, the odd extension of the power function. All fractional
// powers of signed quantities in the library go through these two helpers so
// that branch-cut conventions are fixed in exactly one place.
double signed_pow(double t, double p);

// Canonical change of variables (x, y) -> (x |x|^alpha / (alpha + 1), y)
// between the Grushin plane and plane-side coordinates, and its inverse.
PlanePoint meyerson(Alpha alpha, GrushinPoint p);
GrushinPoint meyerson_inverse(Alpha alpha, PlanePoint q);

// Anisotropic dilation (x, y) -> (lambda x, lambda^(alpha+1) y), lambda > 0.
GrushinPoint dilation(Alpha alpha, double lambda, GrushinPoint p);

// Horizontal gradients (X g_i, Y_alpha g_i) of both components, where
// X = d/dx and Y_alpha = |x|^alpha d/dy. Returns (grad_H g1, grad_H g2).
std::pair<Vec2, Vec2> horizontal_gradient(Alpha alpha, const HorizontalJet& jet,
                                          GrushinPoint p);

// Norm of grad_H g1, the pointwise length-distortion factor of g.
double horizontal_gradient_norm(Alpha alpha, const HorizontalJet& jet,
                                GrushinPoint p);

// The Wirtinger-type derivatives
//   Wbar g = |g1|^a dg1/dx - |x|^a dg2/dy + i (dg2/dx + |x g1|^a dg1/dy)
//   W    g = |g1|^a dg1/dx + |x|^a dg2/dy + i (dg2/dx - |x g1|^a dg1/dy).
WirtingerPair wirtinger(Alpha alpha, const HorizontalJet& jet, GrushinPoint p);

// Jacobian-type quantity J_g = |x|^alpha (dg1/dx dg2/dy - dg1/dy dg2/dx).
// Defined for every jet, including on the zero set of g1.
double jacobian_jg(Alpha alpha, const HorizontalJet& jet, GrushinPoint p);

// Intrinsic differential; throws SingularPointError when |g1| < 1e-12.
DAlphaMatrix d_alpha_matrix(Alpha alpha, const HorizontalJet& jet,
                            GrushinPoint p);

// Residual of the identity |W g|^2 - |Wbar g|^2 = 4 |g1|^alpha J_g, in the
// J_g form so it stays defined where g1 vanishes. Zero for exact arithmetic.
double wirtinger_identity_residual(Alpha alpha, const HorizontalJet& jet,
                                   GrushinPoint p);

// Default central-difference step: (machine eps)^(1/3) * (1 + |p|).
double default_fd_step(GrushinPoint p);

// Central-difference jet of an arbitrary evaluator. Five evaluations.
// Exceptions from the evaluator propagate; DomainViolationError is rethrown
// as EvaluationOutsideDomainError because the offender is the stencil, not
// the base point.
HorizontalJet finite_diff_jet(
    const std::function<GrushinPoint(GrushinPoint)>& eval, GrushinPoint p,
    double h);
HorizontalJet finite_diff_jet(
    const std::function<GrushinPoint(GrushinPoint)>& eval, GrushinPoint p);

}  // namespace grushin
