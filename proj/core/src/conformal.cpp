#include "grushin/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace grushin {

namespace {

void validate_grid(const SampledGrid& g) {
  if (g.xs.size() < 2 || g.ys.size() < 2)
    throw InvalidArgumentError("sampled grid needs at least 2 x 2 samples");
  const auto increasing = [](const std::vector<double>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (!(v[i] < v[i + 1])) return false;
    return true;
  };
  if (!increasing(g.xs) || !increasing(g.ys))
    throw InvalidArgumentError("sampled grid axes must be strictly increasing");
  const size_t n = g.xs.size() * g.ys.size();
  if (g.g1.size() != n || g.g2.size() != n)
    throw InvalidArgumentError("sampled grid value arrays must be ny*nx long");
  for (double v : g.g1)
    if (!std::isfinite(v))
      throw InvalidArgumentError("sampled grid contains non-finite g1 value");
  for (double v : g.g2)
    if (!std::isfinite(v))
      throw InvalidArgumentError("sampled grid contains non-finite g2 value");
}

// Index of the cell [v[i], v[i+1]] containing t, clamped grid-interior.
size_t cell_index(const std::vector<double>& v, double t) {
  const auto it = std::upper_bound(v.begin(), v.end(), t);
  size_t i = it == v.begin() ? 0 : static_cast<size_t>(it - v.begin()) - 1;
  if (i + 1 >= v.size()) i = v.size() - 2;
  return i;
}

GrushinPoint eval_sampled(const SampledGrid& g, GrushinPoint p) {
  if (p.x < g.xs.front() || p.x > g.xs.back() || p.y < g.ys.front() ||
      p.y > g.ys.back())
    throw DomainViolationError("sampled map: point outside the sample box");
  const size_t ix = cell_index(g.xs, p.x);
  const size_t iy = cell_index(g.ys, p.y);
  const size_t nx = g.xs.size();
  const double tx = (p.x - g.xs[ix]) / (g.xs[ix + 1] - g.xs[ix]);
  const double ty = (p.y - g.ys[iy]) / (g.ys[iy + 1] - g.ys[iy]);
  const auto lerp2 = [&](const std::vector<double>& val) {
    const double v00 = val[iy * nx + ix];
    const double v10 = val[iy * nx + ix + 1];
    const double v01 = val[(iy + 1) * nx + ix];
    const double v11 = val[(iy + 1) * nx + ix + 1];
    return (1 - ty) * ((1 - tx) * v00 + tx * v10) +
           ty * ((1 - tx) * v01 + tx * v11);
  };
  return {lerp2(g.g1), lerp2(g.g2)};
}

}  // namespace

GrushinMap GrushinMap::make_conjugated(Alpha alpha, HoloExpr expr) {
  return GrushinMap(Conjugated{alpha, std::move(expr)});
}

GrushinMap GrushinMap::make_entire(Alpha alpha, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw InvalidArgumentError("entire map parameters must be finite");
  if (a == 0.0)
    throw InvalidArgumentError("entire map requires a != 0");
  return GrushinMap(EntireAffine{alpha, a, b});
}

GrushinMap GrushinMap::make_sampled(Alpha alpha, SampledGrid grid) {
  validate_grid(grid);
  return GrushinMap(Sampled{alpha, std::move(grid)});
}

Alpha GrushinMap::alpha() const {
  return std::visit([](const auto& m) { return m.alpha; }, impl_);
}

GrushinPoint GrushinMap::evaluate(GrushinPoint p) const {
  struct V {
    GrushinPoint p;
    GrushinPoint operator()(const Conjugated& m) const {
      const PlanePoint q = meyerson(m.alpha, p);
      const HoloEval he = m.expr.eval(Complex(q.u, q.v));
      const GrushinPoint img = meyerson_inverse(
          m.alpha, PlanePoint{he.value.real(), he.value.imag()});
      return img;
    }
    GrushinPoint operator()(const EntireAffine& m) const {
      const double s = signed_pow(m.a, 1.0 / (m.alpha.value() + 1.0));
      return {s * p.x, m.a * p.y + m.b};
    }
    GrushinPoint operator()(const Sampled& m) const {
      return eval_sampled(m.grid, p);
    }
  };
  return std::visit(V{p}, impl_);
}

bool GrushinMap::has_analytic_jets() const {
  return !std::holds_alternative<Sampled>(impl_);
}

HorizontalJet GrushinMap::analytic_jet(GrushinPoint p) const {
  struct V {
    GrushinPoint p;
    HorizontalJet operator()(const Conjugated& m) const {
      const double a = m.alpha.value();
      const PlanePoint pq = meyerson(m.alpha, p);
      const HoloEval he = m.expr.eval(Complex(pq.u, pq.v));
      const double dp = he.derivative.real();
      const double dq = he.derivative.imag();
      HorizontalJet jet;
      jet.g1 = signed_pow((a + 1.0) * he.value.real(), 1.0 / (a + 1.0));
      jet.g2 = he.value.imag();
      if (std::fabs(jet.g1) < 1e-12)
        throw SingularPointError(
            "analytic_jet: first component vanishes at the point");
      const double xa = abs_pow(p.x, a);
      const double g1a = abs_pow(jet.g1, a);
      jet.g1_x = xa * dp / g1a;
      jet.g1_y = -dq / g1a;
      jet.g2_x = xa * dq;
      jet.g2_y = dp;
      return jet;
    }
    HorizontalJet operator()(const EntireAffine& m) const {
      const double s = signed_pow(m.a, 1.0 / (m.alpha.value() + 1.0));
      HorizontalJet jet;
      jet.g1 = s * p.x;
      jet.g2 = m.a * p.y + m.b;
      jet.g1_x = s;
      jet.g1_y = 0.0;
      jet.g2_x = 0.0;
      jet.g2_y = m.a;
      return jet;
    }
    HorizontalJet operator()(const Sampled&) const {
      throw InvalidArgumentError(
          "analytic_jet: sampled maps carry no analytic jets");
    }
  };
  return std::visit(V{p}, impl_);
}

const GrushinMap::Conjugated* GrushinMap::as_conjugated() const {
  return std::get_if<Conjugated>(&impl_);
}
const GrushinMap::EntireAffine* GrushinMap::as_entire() const {
  return std::get_if<EntireAffine>(&impl_);
}
const GrushinMap::Sampled* GrushinMap::as_sampled() const {
  return std::get_if<Sampled>(&impl_);
}

GrushinMap conjugate(Alpha alpha, HoloExpr expr) {
  return GrushinMap::make_conjugated(alpha, std::move(expr));
}

GrushinMap entire_map(Alpha alpha, double a, double b) {
  return GrushinMap::make_entire(alpha, a, b);
}

std::optional<EntireParams> classify_entire(const GrushinMap& map,
                                            const ProbeGrid& grid) {
  if (grid.n < 2 || !(grid.xmin < grid.xmax) || !(grid.ymin < grid.ymax))
    throw InvalidArgumentError("classify_entire: bad probe grid");
  try {
    const double b = map.evaluate({0.0, 0.0}).y;
    const double a = map.evaluate({0.0, 1.0}).y - b;
    if (!std::isfinite(a) || !std::isfinite(b) || std::fabs(a) < 1e-12)
      return std::nullopt;
    const double s = signed_pow(a, 1.0 / (map.alpha().value() + 1.0));
    double residual = 0.0;
    double scale = 1.0;
    for (int i = 0; i < grid.n; ++i) {
      const double x =
          grid.xmin + (grid.xmax - grid.xmin) * i / double(grid.n - 1);
      for (int j = 0; j < grid.n; ++j) {
        const double y =
            grid.ymin + (grid.ymax - grid.ymin) * j / double(grid.n - 1);
        const GrushinPoint img = map.evaluate({x, y});
        residual = std::max(residual, std::fabs(img.x - s * x));
        residual = std::max(residual, std::fabs(img.y - (a * y + b)));
        scale = std::max({scale, std::fabs(img.x), std::fabs(img.y)});
      }
    }
    if (residual > 1e-9 * scale) return std::nullopt;
    return EntireParams{a, b, residual};
  } catch (const Error&) {
    // Evaluation failures (poles, domain limits) rule out the entire family.
    return std::nullopt;
  }
}

GrushinMap compose_maps(const GrushinMap& g, const GrushinMap& h) {
  if (g.alpha().value() != h.alpha().value())
    throw DomainMismatchError("compose_maps: maps have different alpha");
  if (g.as_sampled() || h.as_sampled())
    throw DomainMismatchError("compose_maps: sampled maps do not compose");
  if (g.as_entire() && h.as_entire()) {
    const auto* ge = g.as_entire();
    const auto* he = h.as_entire();
    return entire_map(g.alpha(), ge->a * he->a, ge->a * he->b + ge->b);
  }
  const auto to_expr = [](const GrushinMap& m) {
    if (const auto* e = m.as_entire()) return HoloExpr::real_affine(e->a, e->b);
    return m.as_conjugated()->expr;
  };
  return conjugate(g.alpha(), HoloExpr::compose(to_expr(g), to_expr(h)));
}

GrushinMap invert_map(const GrushinMap& map) {
  if (const auto* e = map.as_entire())
    return entire_map(map.alpha(), 1.0 / e->a, -e->b / e->a);
  if (const auto* c = map.as_conjugated())
    return conjugate(map.alpha(), c->expr.inverse());
  throw NotInvertibleError("invert_map: sampled maps are not invertible");
}

double ext_boundary(const GrushinMap& map, double y) {
  const double a = map.alpha().value();
  double deriv;
  if (const auto* c = map.as_conjugated()) {
    deriv = c->expr.eval(Complex(0.0, y)).derivative.real();
  } else if (const auto* e = map.as_entire()) {
    deriv = e->a;
  } else {
    throw InvalidArgumentError("ext_boundary: map must be analytic");
  }
  if (!std::isfinite(deriv) || std::fabs(deriv) < 1e-12)
    throw DegenerateDerivativeError(
        "ext_boundary: boundary derivative below 1e-12");
  return abs_pow(deriv, -a / (a + 1.0));
}

RatioLimitReport ratio_limit_check(const HoloExpr& expr, double y0,
                                   const std::vector<double>& xs) {
  if (xs.empty())
    throw InvalidArgumentError("ratio_limit_check: empty x sequence");
  RatioLimitReport rep;
  rep.reference = expr.eval(Complex(0.0, y0)).derivative.real();
  for (double x : xs) {
    if (!(x > 0.0))
      throw InvalidArgumentError("ratio_limit_check: x values must be > 0");
    const double ratio = expr.eval(Complex(x, y0)).value.real() / x;
    rep.xs.push_back(x);
    rep.ratios.push_back(ratio);
    rep.errors.push_back(std::fabs(ratio - rep.reference));
  }
  // Least-squares slope of log error against log x, ignoring errors at
  // rounding level (they carry no rate information).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < rep.xs.size(); ++i) {
    if (rep.errors[i] <= 1e-15 * (1.0 + std::fabs(rep.reference))) continue;
    const double lx = std::log(rep.xs[i]);
    const double ly = std::log(rep.errors[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++n;
  }
  rep.rate = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  const double final_err = rep.errors.back();
  rep.converged =
      final_err <= 1e-8 * (1.0 + std::fabs(rep.reference)) || n < 2;
  return rep;
}

HorizontalJet finite_diff_jet(const GrushinMap& map, GrushinPoint p, double h) {
  return finite_diff_jet(
      [&map](GrushinPoint q) {
        try {
          return map.evaluate(q);
        } catch (const PoleHitError& e) {
          throw EvaluationOutsideDomainError(e.what());
        }
      },
      p, h);
}

HorizontalJet finite_diff_jet(const GrushinMap& map, GrushinPoint p) {
  return finite_diff_jet(map, p, default_fd_step(p));
}

}  // namespace grushin
