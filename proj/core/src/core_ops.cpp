#include "grushin/core_ops.hpp"

#include <cmath>
#include <limits>

namespace grushin {

double abs_pow(double t, double p) {
  const double a = std::fabs(t);
  if (a == 0.0) return 0.0;
  if (p == 1.0) return a;  // common fast path, also exact
  return std::pow(a, p);
}

double signed_pow(double t, double p) {
  const double m = abs_pow(t, p);
  return std::signbit(t) ? -m : m;
}

PlanePoint meyerson(Alpha alpha, GrushinPoint p) {
  const double a = alpha.value();
  return {signed_pow(p.x, a + 1.0) / (a + 1.0), p.y};
}

GrushinPoint meyerson_inverse(Alpha alpha, PlanePoint q) {
  const double a = alpha.value();
  return {signed_pow((a + 1.0) * q.u, 1.0 / (a + 1.0)), q.v};
}

GrushinPoint dilation(Alpha alpha, double lambda, GrushinPoint p) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw InvalidArgumentError("dilation factor must be finite and > 0");
  return {lambda * p.x, std::pow(lambda, alpha.value() + 1.0) * p.y};
}

std::pair<Vec2, Vec2> horizontal_gradient(Alpha alpha, const HorizontalJet& jet,
                                          GrushinPoint p) {
  const double w = abs_pow(p.x, alpha.value());
  return {Vec2{jet.g1_x, w * jet.g1_y}, Vec2{jet.g2_x, w * jet.g2_y}};
}

double horizontal_gradient_norm(Alpha alpha, const HorizontalJet& jet,
                                GrushinPoint p) {
  const double w = abs_pow(p.x, alpha.value());
  return std::hypot(jet.g1_x, w * jet.g1_y);
}

WirtingerPair wirtinger(Alpha alpha, const HorizontalJet& jet, GrushinPoint p) {
  const double a = alpha.value();
  const double g1a = abs_pow(jet.g1, a);
  const double xa = abs_pow(p.x, a);
  const double xg1a = abs_pow(p.x * jet.g1, a);
  const double re_w = g1a * jet.g1_x + xa * jet.g2_y;
  const double im_w = jet.g2_x - xg1a * jet.g1_y;
  const double re_wbar = g1a * jet.g1_x - xa * jet.g2_y;
  const double im_wbar = jet.g2_x + xg1a * jet.g1_y;
  return {Complex(re_w, im_w), Complex(re_wbar, im_wbar)};
}

double jacobian_jg(Alpha alpha, const HorizontalJet& jet, GrushinPoint p) {
  return abs_pow(p.x, alpha.value()) *
         (jet.g1_x * jet.g2_y - jet.g1_y * jet.g2_x);
}

DAlphaMatrix d_alpha_matrix(Alpha alpha, const HorizontalJet& jet,
                            GrushinPoint p) {
  if (std::fabs(jet.g1) < 1e-12)
    throw SingularPointError("d_alpha_matrix: |g1| below 1e-12 at the point");
  const double a = alpha.value();
  const double xa = abs_pow(p.x, a);
  const double g1a = abs_pow(jet.g1, a);
  return {jet.g1_x, xa * jet.g1_y, jet.g2_x / g1a, xa * jet.g2_y / g1a};
}

double wirtinger_identity_residual(Alpha alpha, const HorizontalJet& jet,
                                   GrushinPoint p) {
  const WirtingerPair wp = wirtinger(alpha, jet, p);
  const double lhs = std::norm(wp.w) - std::norm(wp.wbar);
  const double rhs =
      4.0 * abs_pow(jet.g1, alpha.value()) * jacobian_jg(alpha, jet, p);
  return lhs - rhs;
}

double default_fd_step(GrushinPoint p) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::cbrt(eps) * (1.0 + std::hypot(p.x, p.y));
}

HorizontalJet finite_diff_jet(
    const std::function<GrushinPoint(GrushinPoint)>& eval, GrushinPoint p,
    double h) {
  if (!std::isfinite(h) || h <= 0.0)
    throw InvalidArgumentError("finite_diff_jet: step must be finite and > 0");
  const auto probe = [&](GrushinPoint q) {
    try {
      return eval(q);
    } catch (const DomainViolationError& e) {
      throw EvaluationOutsideDomainError(e.what());
    }
  };
  const GrushinPoint c = probe(p);
  const GrushinPoint xp = probe({p.x + h, p.y});
  const GrushinPoint xm = probe({p.x - h, p.y});
  const GrushinPoint yp = probe({p.x, p.y + h});
  const GrushinPoint ym = probe({p.x, p.y - h});
  HorizontalJet jet;
  jet.g1 = c.x;
  jet.g2 = c.y;
  jet.g1_x = (xp.x - xm.x) / (2.0 * h);
  jet.g1_y = (yp.x - ym.x) / (2.0 * h);
  jet.g2_x = (xp.y - xm.y) / (2.0 * h);
  jet.g2_y = (yp.y - ym.y) / (2.0 * h);
  return jet;
}

HorizontalJet finite_diff_jet(
    const std::function<GrushinPoint(GrushinPoint)>& eval, GrushinPoint p) {
  return finite_diff_jet(eval, p, default_fd_step(p));
}

}  // namespace grushin
