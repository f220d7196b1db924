#include <ballroll/curves.hpp>
#include <ballroll/experiments.hpp>
#include <ballroll/geometry.hpp>
#include <ballroll/rolling.hpp>
#include <ballroll/surfaces.hpp>

#include <benchmark/benchmark.h>

#include <array>

using namespace ballroll;

namespace {

void BM_PointGeometry(benchmark::State& state) {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75);
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_point_geometry(ell, u, 0.4));
    u += 1e-6;
  }
}
BENCHMARK(BM_PointGeometry);

void BM_PointGeometryUnduloid(benchmark::State& state) {
  const SurfaceChart und = make_unduloid(1.0, 0.25);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_point_geometry(und, s, 0.4));
    s += 1e-6;
  }
}
BENCHMARK(BM_PointGeometryUnduloid);

void BM_Geodesic(benchmark::State& state) {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75);
  const double length = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_from(ell, 0.4, 0.2, 1.0, length));
}
BENCHMARK(BM_Geodesic)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RollBall(benchmark::State& state) {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
  const SurfaceCurve g = geodesic_from(ell, 0.4, 0.2, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(roll(g, BallRoller{0.3}));
}
BENCHMARK(BM_RollBall)->Unit(benchmark::kMillisecond);

void BM_RollChart(benchmark::State& state) {
  const SurfaceChart ell = make_ellipsoid(1.5, 1.0, 0.75, true);
  const SurfaceCurve g = geodesic_from(ell, 0.4, 0.2, 1.0, 0.5);
  const Roller roller = ChartRoller{make_torus(3.0, 1.0), 0.0, 0.0, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(roll(g, roller));
}
BENCHMARK(BM_RollChart)->Unit(benchmark::kMillisecond);

void BM_InitialSpeedSimulated(benchmark::State& state) {
  const SurfaceChart und = make_unduloid(1.0, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(initial_speed_simulated(und, 0.3, 0.1, 0.7, 1.0));
}
BENCHMARK(BM_InitialSpeedSimulated)->Unit(benchmark::kMicrosecond);

void BM_IsotropyClosed(benchmark::State& state) {
  const SurfaceChart cat = make_catenoid(1.0);
  const std::array<double, 3> dirs = {0.0, 1.0471975511965976, 2.0943951023931953};
  for (auto _ : state) benchmark::DoNotOptimize(isotropy_test(cat, 0.2, 0.3, 0.7, dirs));
}
BENCHMARK(BM_IsotropyClosed);

void BM_IsotropySimulated(benchmark::State& state) {
  const SurfaceChart cat = make_catenoid(1.0);
  const std::array<double, 3> dirs = {0.0, 1.0471975511965976, 2.0943951023931953};
  IsotropyOptions opt;
  opt.simulate = true;
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(isotropy_test(cat, 0.2, 0.3, 0.7, dirs, opt));
}
BENCHMARK(BM_IsotropySimulated)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
