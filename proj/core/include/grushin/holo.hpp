#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grushin/types.hpp"

namespace grushin {

// Axis-aligned open rectangle in plane-side coordinates, used to restrict
// expression nodes (odd polynomials are axis-compatible only locally).
struct PlaneRect {
  double umin = 0.0, umax = 0.0, vmin = 0.0, vmax = 0.0;
  bool contains(Complex z) const {
    return z.real() > umin && z.real() < umax && z.imag() > vmin &&
           z.imag() < vmax;
  }
};

struct HoloEval {
  Complex value;
  Complex derivative;
};

// Immutable holomorphic expression tree. Building blocks:
//   real_affine(a, c):    z -> a z + i c          (a real nonzero, c real)
//   complex_affine(a, b): z -> a z + b            (a complex nonzero)
//   joukovski():          z -> z + 1/z            (pole at 0)
//   odd_real_poly(c):     z -> sum c_k z^(2k+1)   (real c, optional domain)
//   compose(f, g):        z -> f(g(z))
// real_affine and joukovski map the imaginary axis into itself by
// construction; complex_affine and odd polynomials make no such claim and
// must be checked against a domain.
class HoloExpr {
 public:
  struct RealAffine {
    double a, c;
  };
  struct ComplexAffine {
    Complex a, b;
  };
  struct Joukovski {};
  struct OddRealPoly {
    std::vector<double> coeffs;  // coeffs[k] multiplies z^(2k+1)
    std::optional<PlaneRect> domain;
  };
  struct Compose;
  struct Node;

  static HoloExpr real_affine(double a, double c);
  static HoloExpr complex_affine(Complex a, Complex b);
  static HoloExpr joukovski();
  static HoloExpr odd_real_poly(std::vector<double> coeffs,
                                std::optional<PlaneRect> domain = {});
  static HoloExpr compose(HoloExpr outer, HoloExpr inner);
  static HoloExpr identity() { return real_affine(1.0, 0.0); }

  // Value and derivative at z. Throws PoleHitError at the Joukovski pole,
  // DomainViolationError outside a node's declared domain.
  HoloEval eval(Complex z) const;

  // Symbolic inverse; exists for affine nodes and compositions of
  // invertible nodes. Throws NotInvertibleError otherwise.
  HoloExpr inverse() const;

  std::string describe() const;

  const Node& node() const { return *root_; }

 private:
  explicit HoloExpr(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
  std::shared_ptr<const Node> root_;
};

struct HoloExpr::Compose {
  HoloExpr outer;
  HoloExpr inner;
};

struct HoloExpr::Node {
  std::variant<RealAffine, ComplexAffine, Joukovski, OddRealPoly, Compose> v;
};

}  // namespace grushin
