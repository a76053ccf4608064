#include <benchmark/benchmark.h>

#include "grushin/conformal.hpp"
#include "grushin/core_ops.hpp"
#include "grushin/curves.hpp"
#include "grushin/distance.hpp"
#include "grushin/holo.hpp"
#include "grushin/topology.hpp"
#include "grushin/verify.hpp"

using namespace grushin;

namespace {

RectilinearDomain unit_square() {
  return RectilinearDomain({RatRect{-1, 1, -1, 1}});
}

GrushinMap joukovski_map(double alpha) {
  return conjugate(Alpha(alpha), HoloExpr::joukovski());
}

void BM_MeyersonRoundTrip(benchmark::State& state) {
  const Alpha alpha(1.5);
  GrushinPoint p{0.7, -1.3};
  for (auto _ : state) {
    const PlanePoint q = meyerson(alpha, p);
    benchmark::DoNotOptimize(meyerson_inverse(alpha, q));
  }
}
BENCHMARK(BM_MeyersonRoundTrip);

void BM_AnalyticJet(benchmark::State& state) {
  const GrushinMap map = joukovski_map(1.0);
  const GrushinPoint p{2.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(map.analytic_jet(p));
}
BENCHMARK(BM_AnalyticJet);

void BM_FiniteDiffJet(benchmark::State& state) {
  const GrushinMap map = joukovski_map(1.0);
  const GrushinPoint p{2.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(finite_diff_jet(map, p, 1e-5));
}
BENCHMARK(BM_FiniteDiffJet);

void BM_VerifyGrid(benchmark::State& state) {
  const GrushinMap map = conjugate(Alpha(1.0), HoloExpr::identity());
  const RectilinearDomain dom = unit_square();
  VerifyOptions opts;
  opts.resolution = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_conformal(map, dom, opts));
}
BENCHMARK(BM_VerifyGrid)->Arg(25)->Arg(50)->Arg(100);

void BM_LengthCrossing(benchmark::State& state) {
  const ParamCurve cubic = ParamCurve::closed_form(
      -1.0, 1.0, [](double t) { return GrushinPoint{t, t * t * t}; },
      [](double t) { return Vec2{1.0, 3.0 * t * t}; });
  const Alpha alpha(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(grushin_length(alpha, cubic));
}
BENCHMARK(BM_LengthCrossing);

void BM_LengthPolyline(benchmark::State& state) {
  std::vector<double> ts;
  std::vector<GrushinPoint> pts;
  const int n = int(state.range(0));
  for (int i = 0; i <= n; ++i) {
    const double t = double(i) / n;
    ts.push_back(t);
    pts.push_back({0.5 + 2.0 * t, t * (1.0 - t)});
  }
  const ParamCurve poly = ParamCurve::polyline(ts, pts);
  const Alpha alpha(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(grushin_length(alpha, poly));
}
BENCHMARK(BM_LengthPolyline)->Arg(16)->Arg(256)->Arg(4096);

void BM_DistanceSolver(benchmark::State& state) {
  const Alpha alpha(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(cc_distance_upper(alpha, {1.0, 0.0}, {3.0, 0.0},
                                               int(state.range(0)), 200, 42));
}
BENCHMARK(BM_DistanceSolver)->Arg(5)->Arg(17)->Arg(33);

void BM_Obstruction(benchmark::State& state) {
  const RectilinearDomain a({RatRect{-2, 1, 1, 2}, RatRect{-2, -1, -3, 2},
                             RatRect{-2, 1, -1, 0}, RatRect{-2, 1, -3, -2}});
  const RectilinearDomain b({RatRect{-2, 2, 1, 2}, RatRect{-2, -1, -1, 2},
                             RatRect{-2, 2, -1, 0}, RatRect{1, 2, -3, 0},
                             RatRect{-2, 2, -3, -2}});
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_check(a, b));
}
BENCHMARK(BM_Obstruction);

}  // namespace

BENCHMARK_MAIN();
