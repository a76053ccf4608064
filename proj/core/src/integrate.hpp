#pragma once

#include <array>
#include <functional>

#include "grushin/curves.hpp"

// Internal quadrature shared by the length functional and the geodesic
// upper-bound solver. Not installed.
namespace grushin::detail {

inline constexpr std::array<double, 15> kGl15Nodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};

inline constexpr std::array<double, 15> kGl15Weights = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename F>
double gl15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 15; ++i)
    s += kGl15Weights[i] * f(c + h * kGl15Nodes[i]);
  return s * h;
}

// Metric speed with the eps-floor regularization of |gamma1|.
double floored_speed(Alpha alpha, GrushinPoint p, Vec2 v, double floor_eps);

// Weighted Grushin length: integrand weight(t, p) * floored speed. A null
// weight means 1. Reports the min/max observed weight over all quadrature
// evaluations alongside the LengthResult.
struct WeightedLength {
  LengthResult result;
  double weight_min = 0.0;
  double weight_max = 0.0;
};
WeightedLength weighted_curve_length(
    Alpha alpha, const ParamCurve& curve, const LengthOptions& opts,
    const std::function<double(double, GrushinPoint)>* weight);

}  // namespace grushin::detail
