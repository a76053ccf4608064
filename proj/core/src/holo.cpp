#include "grushin/holo.hpp"

#include <cmath>
#include <sstream>

namespace grushin {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return finite(z.real()) && finite(z.imag()); }

std::shared_ptr<const HoloExpr::Node> wrap(
    std::variant<HoloExpr::RealAffine, HoloExpr::ComplexAffine,
                 HoloExpr::Joukovski, HoloExpr::OddRealPoly, HoloExpr::Compose>
        v) {
  return std::make_shared<const HoloExpr::Node>(HoloExpr::Node{std::move(v)});
}

}  // namespace

HoloExpr HoloExpr::real_affine(double a, double c) {
  if (!finite(a) || !finite(c))
    throw InvalidArgumentError("real_affine: coefficients must be finite");
  if (a == 0.0)
    throw InvalidArgumentError("real_affine: linear part a must be nonzero");
  return HoloExpr(wrap(RealAffine{a, c}));
}

HoloExpr HoloExpr::complex_affine(Complex a, Complex b) {
  if (!finite(a) || !finite(b))
    throw InvalidArgumentError("complex_affine: coefficients must be finite");
  if (a == Complex(0.0, 0.0))
    throw InvalidArgumentError("complex_affine: linear part a must be nonzero");
  return HoloExpr(wrap(ComplexAffine{a, b}));
}

HoloExpr HoloExpr::joukovski() { return HoloExpr(wrap(Joukovski{})); }

HoloExpr HoloExpr::odd_real_poly(std::vector<double> coeffs,
                                 std::optional<PlaneRect> domain) {
  if (coeffs.empty())
    throw InvalidArgumentError("odd_real_poly: need at least one coefficient");
  bool any = false;
  for (double c : coeffs) {
    if (!finite(c))
      throw InvalidArgumentError("odd_real_poly: coefficients must be finite");
    any = any || c != 0.0;
  }
  if (!any)
    throw InvalidArgumentError("odd_real_poly: all coefficients are zero");
  if (domain && !(domain->umin < domain->umax && domain->vmin < domain->vmax))
    throw InvalidArgumentError("odd_real_poly: empty domain rectangle");
  return HoloExpr(wrap(OddRealPoly{std::move(coeffs), domain}));
}

HoloExpr HoloExpr::compose(HoloExpr outer, HoloExpr inner) {
  return HoloExpr(wrap(Compose{std::move(outer), std::move(inner)}));
}

HoloEval HoloExpr::eval(Complex z) const {
  struct V {
    Complex z;
    HoloEval operator()(const RealAffine& n) const {
      return {n.a * z + Complex(0.0, n.c), Complex(n.a, 0.0)};
    }
    HoloEval operator()(const ComplexAffine& n) const {
      return {n.a * z + n.b, n.a};
    }
    HoloEval operator()(const Joukovski&) const {
      if (std::abs(z) < 1e-14)
        throw PoleHitError("joukovski: evaluation at the pole z = 0");
      const Complex inv = 1.0 / z;
      return {z + inv, 1.0 - inv * inv};
    }
    HoloEval operator()(const OddRealPoly& n) const {
      if (n.domain && !n.domain->contains(z))
        throw DomainViolationError(
            "odd_real_poly: point outside the declared domain");
      // Horner in w = z^2 for p(z) = z q(z^2); p' = q(z^2) + 2 z^2 q'(z^2).
      const Complex w = z * z;
      Complex q(0.0, 0.0), dq(0.0, 0.0);
      for (size_t k = n.coeffs.size(); k-- > 0;) {
        dq = dq * w + q;
        q = q * w + n.coeffs[k];
      }
      return {z * q, q + 2.0 * w * dq};
    }
    HoloEval operator()(const Compose& n) const {
      const HoloEval in = n.inner.eval(z);
      const HoloEval out = n.outer.eval(in.value);
      return {out.value, out.derivative * in.derivative};
    }
  };
  return std::visit(V{z}, root_->v);
}

HoloExpr HoloExpr::inverse() const {
  struct V {
    HoloExpr operator()(const RealAffine& n) const {
      return HoloExpr::real_affine(1.0 / n.a, -n.c / n.a);
    }
    HoloExpr operator()(const ComplexAffine& n) const {
      return HoloExpr::complex_affine(1.0 / n.a, -n.b / n.a);
    }
    HoloExpr operator()(const Joukovski&) const {
      throw NotInvertibleError("joukovski has no global inverse");
    }
    HoloExpr operator()(const OddRealPoly&) const {
      throw NotInvertibleError("odd_real_poly has no symbolic inverse");
    }
    HoloExpr operator()(const Compose& n) const {
      return HoloExpr::compose(n.inner.inverse(), n.outer.inverse());
    }
  };
  return std::visit(V{}, root_->v);
}

std::string HoloExpr::describe() const {
  struct V {
    std::string operator()(const RealAffine& n) const {
      std::ostringstream os;
      os << n.a << "*z + " << n.c << "i";
      return os.str();
    }
    std::string operator()(const ComplexAffine& n) const {
      std::ostringstream os;
      os << "(" << n.a.real() << "+" << n.a.imag() << "i)*z + (" << n.b.real()
         << "+" << n.b.imag() << "i)";
      return os.str();
    }
    std::string operator()(const Joukovski&) const { return "z + 1/z"; }
    std::string operator()(const OddRealPoly& n) const {
      std::ostringstream os;
      os << "odd_poly(";
      for (size_t k = 0; k < n.coeffs.size(); ++k)
        os << (k ? ", " : "") << n.coeffs[k];
      os << ")";
      return os.str();
    }
    std::string operator()(const Compose& n) const {
      return "(" + n.outer.describe() + ") o (" + n.inner.describe() + ")";
    }
  };
  return std::visit(V{}, root_->v);
}

}  // namespace grushin
