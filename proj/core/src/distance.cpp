#include "grushin/distance.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "integrate.hpp"

namespace grushin {

namespace {

struct Solver {
  Alpha alpha;
  double floor_eps;
  long long evals = 0;

  double seg_len(GrushinPoint a, GrushinPoint b) {
    const Vec2 v{b.x - a.x, b.y - a.y};
    const auto f = [&](double t) {
      const GrushinPoint p{a.x + t * v.x, a.y + t * v.y};
      return detail::floored_speed(alpha, p, v, floor_eps);
    };
    evals += 30;
    return detail::gl15(f, 0.0, 0.5) + detail::gl15(f, 0.5, 1.0);
  }
};

}  // namespace

DistanceResult cc_distance_upper(Alpha alpha, GrushinPoint p, GrushinPoint q,
                                 int knots, int iterations, uint64_t seed) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(q.x) ||
      !std::isfinite(q.y))
    throw InvalidArgumentError("cc_distance_upper: non-finite endpoint");
  if (knots < 2)
    throw InvalidArgumentError("cc_distance_upper: need at least 2 knots");
  if (iterations < 0)
    throw InvalidArgumentError("cc_distance_upper: negative iteration budget");

  DistanceResult res;
  res.lower_bound = std::fabs(p.x - q.x);
  if (p.x == q.x && p.y == q.y) {
    res.distance_upper = 0.0;
    res.curve = ParamCurve::closed_form(
        0.0, 1.0, [p](double) { return p; }, [](double) { return Vec2{}; });
    return res;
  }

  const double chord = std::hypot(q.x - p.x, q.y - p.y);
  Solver sv{alpha, 1e-9 * chord};

  // Knot-count ladder 3, 5, 9, ... doubling the segments, capped at `knots`.
  std::vector<int> ladder;
  for (int k = 3; k < knots; k = 2 * k - 1) ladder.push_back(k);
  ladder.push_back(std::max(knots, 2));
  if (ladder.size() > 1 && ladder[ladder.size() - 2] >= ladder.back())
    ladder.pop_back();

  std::vector<double> ts;
  std::vector<GrushinPoint> pts;
  const int n0 = std::min(ladder.front(), knots);
  for (int i = 0; i < n0; ++i) {
    const double t = double(i) / double(n0 - 1);
    ts.push_back(t);
    pts.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
  }

  std::vector<double> seg(pts.size() - 1);
  const auto refresh_seg = [&](size_t i) { seg[i] = sv.seg_len(pts[i], pts[i + 1]); };
  for (size_t i = 0; i + 1 < pts.size(); ++i) refresh_seg(i);

  std::mt19937_64 rng(seed);
  const double step0 = 0.5 * chord;
  const double step_min = 1e-10 * std::max(chord, 1.0);
  double step = step0;
  size_t stage = 0;
  bool improved_any_at_step = true;

  const auto subdivide_midpoints = [&]() {
    std::vector<double> nts;
    std::vector<GrushinPoint> npts;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      nts.push_back(ts[i]);
      npts.push_back(pts[i]);
      nts.push_back(0.5 * (ts[i] + ts[i + 1]));
      npts.push_back({0.5 * (pts[i].x + pts[i + 1].x),
                      0.5 * (pts[i].y + pts[i + 1].y)});
    }
    nts.push_back(ts.back());
    npts.push_back(pts.back());
    ts.swap(nts);
    pts.swap(npts);
  };
  const auto split_longest = [&](int extra) {
    for (int c = 0; c < extra; ++c) {
      size_t best = 0;
      for (size_t i = 1; i + 1 < pts.size(); ++i)
        if (seg[i] > seg[best]) best = i;
      ts.insert(ts.begin() + best + 1, 0.5 * (ts[best] + ts[best + 1]));
      pts.insert(pts.begin() + best + 1,
                 GrushinPoint{0.5 * (pts[best].x + pts[best + 1].x),
                              0.5 * (pts[best].y + pts[best + 1].y)});
      seg.insert(seg.begin() + best, 0.0);
      refresh_seg(best);
      refresh_seg(best + 1);
    }
  };

  int it = 0;
  while (it < iterations) {
    const bool converged = !improved_any_at_step && step < step_min;
    if (converged) {
      if (stage + 1 >= ladder.size()) break;
      ++stage;
      const int target = ladder[stage];
      if (target == int(2 * pts.size() - 1)) {
        subdivide_midpoints();
        seg.assign(pts.size() - 1, 0.0);
        for (size_t i = 0; i + 1 < pts.size(); ++i) refresh_seg(i);
      } else {
        split_longest(target - int(pts.size()));
      }
      step = step0;
      improved_any_at_step = true;
      continue;
    }

    // One coordinate-descent sweep over the interior vertices.
    ++it;
    std::vector<size_t> order;
    for (size_t i = 1; i + 1 < pts.size(); ++i) order.push_back(i);
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng() % i]);

    bool improved = false;
    for (size_t i : order) {
      const double base = seg[i - 1] + seg[i];
      double best_delta = -1e-15 * (1.0 + base);
      GrushinPoint best_pt = pts[i];
      double best_l = seg[i - 1], best_r = seg[i];
      bool found = false;
      const GrushinPoint moves[4] = {{pts[i].x + step, pts[i].y},
                                     {pts[i].x - step, pts[i].y},
                                     {pts[i].x, pts[i].y + step},
                                     {pts[i].x, pts[i].y - step}};
      for (const GrushinPoint& cand : moves) {
        const double l = sv.seg_len(pts[i - 1], cand);
        const double r = sv.seg_len(cand, pts[i + 1]);
        const double delta = l + r - base;
        if (delta < best_delta) {
          best_delta = delta;
          best_pt = cand;
          best_l = l;
          best_r = r;
          found = true;
        }
      }
      if (found) {
        pts[i] = best_pt;
        seg[i - 1] = best_l;
        seg[i] = best_r;
        improved = true;
      }
    }
    if (!improved) {
      step *= 0.5;
      improved_any_at_step = false;
    } else {
      improved_any_at_step = true;
    }
  }

  res.iterations_used = it;
  res.objective_evals = sv.evals;
  // Vertices can land on top of each other during descent; drop duplicates
  // so the polyline stays valid (endpoints differ, so >= 2 survive).
  std::vector<double> fts{ts.front()};
  std::vector<GrushinPoint> fpts{pts.front()};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].x == fpts.back().x && pts[i].y == fpts.back().y) continue;
    fts.push_back(ts[i]);
    fpts.push_back(pts[i]);
  }
  res.curve = ParamCurve::polyline(std::move(fts), std::move(fpts));
  const LengthResult rigorous = grushin_length(alpha, res.curve);
  res.distance_upper = rigorous.diverged ? HUGE_VAL : rigorous.value;
  res.distance_upper = std::max(res.distance_upper, res.lower_bound);
  return res;
}

}  // namespace grushin
