#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "grushin/holo.hpp"

using namespace grushin;

namespace {
void check_close(Complex a, Complex b, double tol = 1e-12) {
  CHECK(std::abs(a - b) <= tol * (1.0 + std::abs(b)));
}
}  // namespace

TEST_CASE("real affine evaluation and derivative") {
  const HoloExpr f = HoloExpr::real_affine(3.0, -1.0);  // 3z - i
  const HoloEval e = f.eval({2.0, 0.5});
  check_close(e.value, {6.0, 0.5});
  check_close(e.derivative, {3.0, 0.0});
  CHECK_THROWS_AS(HoloExpr::real_affine(0.0, 1.0), InvalidArgumentError);
}

TEST_CASE("real affine preserves the imaginary axis") {
  const HoloExpr f = HoloExpr::real_affine(-2.0, 4.0);
  for (double y : {-3.0, 0.0, 1.5}) {
    const HoloEval e = f.eval({0.0, y});
    CHECK(e.value.real() == 0.0);
  }
}

TEST_CASE("complex affine") {
  const HoloExpr f = HoloExpr::complex_affine({1.0, 2.0}, {0.0, -1.0});
  const HoloEval e = f.eval({1.0, 1.0});
  check_close(e.value, Complex(1.0, 2.0) * Complex(1.0, 1.0) +
                           Complex(0.0, -1.0));
  check_close(e.derivative, {1.0, 2.0});
  CHECK_THROWS_AS(HoloExpr::complex_affine({0.0, 0.0}, {1.0, 0.0}),
                  InvalidArgumentError);
}

TEST_CASE("joukovski values at the reference point") {
  const HoloExpr w = HoloExpr::joukovski();
  const HoloEval e = w.eval({2.0, 0.0});
  CHECK(e.value.real() == doctest::Approx(2.5));
  CHECK(e.value.imag() == doctest::Approx(0.0));
  CHECK(e.derivative.real() == doctest::Approx(0.75));
  // On the axis: w(2i) = 1.5i, w'(2i) = 1.25.
  const HoloEval a = w.eval({0.0, 2.0});
  CHECK(a.value.real() == doctest::Approx(0.0));
  CHECK(a.value.imag() == doctest::Approx(1.5));
  CHECK(a.derivative.real() == doctest::Approx(1.25));
  CHECK(a.derivative.imag() == doctest::Approx(0.0));
  CHECK_THROWS_AS(w.eval({0.0, 0.0}), PoleHitError);
}

TEST_CASE("odd real polynomial evaluation") {
  // z + 2 z^3: coeffs {1, 2}
  const HoloExpr p = HoloExpr::odd_real_poly({1.0, 2.0});
  const Complex z{0.5, -1.2};
  check_close(p.eval(z).value, z + 2.0 * z * z * z);
  check_close(p.eval(z).derivative, 1.0 + 6.0 * z * z);
  CHECK_THROWS_AS(HoloExpr::odd_real_poly({}), InvalidArgumentError);
  CHECK_THROWS_AS(HoloExpr::odd_real_poly({0.0, 0.0}), InvalidArgumentError);
}

TEST_CASE("odd real polynomial respects its domain") {
  const HoloExpr p =
      HoloExpr::odd_real_poly({1.0, 1.0}, PlaneRect{-1.0, 1.0, -1.0, 1.0});
  CHECK_NOTHROW(p.eval({0.5, 0.5}));
  CHECK_THROWS_AS(p.eval({2.0, 0.0}), DomainViolationError);
}

TEST_CASE("composition evaluates inner then outer") {
  const HoloExpr f = HoloExpr::compose(HoloExpr::joukovski(),
                                       HoloExpr::real_affine(2.0, 0.0));
  const HoloEval e = f.eval({1.0, 0.0});  // w(2) with chain rule factor 2
  CHECK(e.value.real() == doctest::Approx(2.5));
  CHECK(e.derivative.real() == doctest::Approx(1.5));
}

TEST_CASE("symbolic inverses round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const HoloExpr exprs[] = {
      HoloExpr::real_affine(3.0, -1.0),
      HoloExpr::complex_affine({1.0, -2.0}, {0.5, 0.5}),
      HoloExpr::compose(HoloExpr::real_affine(2.0, 1.0),
                        HoloExpr::complex_affine({0.0, 1.0}, {1.0, 0.0})),
      HoloExpr::identity(),
  };
  for (const HoloExpr& f : exprs) {
    const HoloExpr g = f.inverse();
    for (int i = 0; i < 50; ++i) {
      const Complex z{u(rng), u(rng)};
      check_close(g.eval(f.eval(z).value).value, z, 1e-11);
      check_close(f.eval(g.eval(z).value).value, z, 1e-11);
    }
  }
  CHECK_THROWS_AS(HoloExpr::joukovski().inverse(), NotInvertibleError);
  CHECK_THROWS_AS(HoloExpr::odd_real_poly({1.0, 1.0}).inverse(),
                  NotInvertibleError);
}

TEST_CASE("derivatives agree with central differences") {
  const HoloExpr exprs[] = {
      HoloExpr::joukovski(),
      HoloExpr::odd_real_poly({1.0, -0.5, 0.25}),
      HoloExpr::compose(HoloExpr::joukovski(),
                        HoloExpr::real_affine(3.0, 2.0)),
  };
  const Complex z{1.3, 0.4};
  const double h = 1e-6;
  for (const HoloExpr& f : exprs) {
    const Complex fd =
        (f.eval(z + h).value - f.eval(z - h).value) / (2.0 * h);
    check_close(f.eval(z).derivative, fd, 1e-8);
  }
}

TEST_CASE("describe labels every node kind") {
  CHECK(HoloExpr::joukovski().describe().find("1/z") != std::string::npos);
  CHECK(!HoloExpr::real_affine(2.0, 0.0).describe().empty());
  CHECK(!HoloExpr::odd_real_poly({1.0}).describe().empty());
  CHECK(!HoloExpr::compose(HoloExpr::identity(), HoloExpr::joukovski())
             .describe()
             .empty());
}
