#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace grushin {

using Complex = std::complex<double>;

// Error taxonomy. Everything thrown by the library derives from Error so
// callers (notably the CLI) can map failures to exit codes uniformly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested derivative object does not exist at the point (on or too close
// to the zero set of g1 / the singular line).
struct SingularPointError : Error {
  using Error::Error;
};

// Evaluation hit a pole of a holomorphic building block (Joukovski at 0).
struct PoleHitError : Error {
  using Error::Error;
};

// Evaluation left the declared domain of a map or expression.
struct DomainViolationError : Error {
  using Error::Error;
};

// A finite-difference stencil left the evaluator's domain.
struct EvaluationOutsideDomainError : Error {
  using Error::Error;
};

// Two maps cannot be combined (different alpha, or sampled data involved).
struct DomainMismatchError : Error {
  using Error::Error;
};

// No symbolic inverse exists for the requested map/expression.
struct NotInvertibleError : Error {
  using Error::Error;
};

// A boundary derivative needed by an extension/limit formula is too small.
struct DegenerateDerivativeError : Error {
  using Error::Error;
};

// A verification grid does not resolve every rectangle of the domain.
struct GridTooCoarseError : Error {
  using Error::Error;
};

// Combinatorial search exceeded its budget.
struct SearchBudgetExceededError : Error {
  using Error::Error;
};

// Bad argument values (non-positive alpha or lambda, zero linear part, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

// Malformed input document. `path` names the offending field, e.g. "rects[2]".
struct ParseError : Error {
  ParseError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path(path) {}
  std::string path;
};

// The exponent of the Grushin structure. Validated once at construction so
// downstream code can assume 0 < alpha < inf.
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0)
      throw InvalidArgumentError("alpha must be finite and > 0");
  }
  double value() const { return value_; }

 private:
  double value_;
};

// Point in the Grushin plane (x is the coordinate transverse to the
// singular line {x = 0}).
struct GrushinPoint {
  double x = 0.0;
  double y = 0.0;
};

// Point in the plane-side coordinates (u, v) of the canonical change of
// variables; u = 0 corresponds to x = 0.
struct PlanePoint {
  double u = 0.0;
  double v = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  double norm() const { return std::hypot(x, y); }
};

// First-order data of a map g = (g1, g2) at a point: values and the four
// classical partial derivatives.
struct HorizontalJet {
  double g1 = 0.0;
  double g2 = 0.0;
  double g1_x = 0.0;
  double g1_y = 0.0;
  double g2_x = 0.0;
  double g2_y = 0.0;
};

// The pair (W g, Wbar g) of Wirtinger-type derivatives.
struct WirtingerPair {
  Complex w;
  Complex wbar;
};

// The 2x2 intrinsic differential D_alpha g expressed in the frames
// (X, Y_alpha) at the source and target points.
struct DAlphaMatrix {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;
  double det() const { return m11 * m22 - m12 * m21; }
  double frobenius() const {
    return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22);
  }
};

}  // namespace grushin
