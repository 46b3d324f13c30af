#include <benchmark/benchmark.h>

#include "plcp/analytics.hpp"
#include "plcp/delaunay.hpp"
#include "plcp/errors.hpp"
#include "plcp/estimators.hpp"
#include "plcp/predicates.hpp"
#include "plcp/sampler.hpp"
#include "plcp/tessellation.hpp"

namespace {

using namespace plcp;

void BM_SampleStationary(benchmark::State& state) {
  const ModelParams p{1.0, static_cast<double>(state.range(0))};
  std::uint64_t i = 0;
  std::size_t points = 0;
  for (auto _ : state) {
    const Realization real = sample_stationary(p, 5.0, 2.0, {1, i++});
    points += real.points.size();
    benchmark::DoNotOptimize(real.points.data());
  }
  state.counters["points"] = benchmark::Counter(static_cast<double>(points),
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SampleStationary)->Arg(1)->Arg(10)->Arg(100);

void BM_Delaunay(benchmark::State& state) {
  const Realization real = sample_stationary({1.0, 1.0}, 100.0, 0.0, {2, 0});
  std::vector<Point2> pts;
  for (const CoxPoint& c : real.points) pts.push_back(c.position);
  pts.resize(std::min<std::size_t>(pts.size(), static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    DelaunayTriangulation dt(pts);
    benchmark::DoNotOptimize(dt.triangles().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_Delaunay)->Arg(1000)->Arg(10000)->Arg(30000);

void BM_Voronoi(benchmark::State& state) {
  const Realization real = sample_stationary({1.0, 1.0}, 20.0, 4.0, {3, 0});
  for (auto _ : state) {
    const Tessellation tess = build_voronoi(real);
    benchmark::DoNotOptimize(tess.vertices.data());
  }
  state.counters["generators"] = static_cast<double>(real.points.size());
}
BENCHMARK(BM_Voronoi);

void BM_TypicalCell(benchmark::State& state) {
  const ModelParams p{1.0, static_cast<double>(state.range(0))};
  std::uint64_t i = 0;
  for (auto _ : state) {
    const Realization real = align_typical_line(sample_palm(p, 3.0, 0.0, {4, i++}));
    try {
      benchmark::DoNotOptimize(typical_cell_extent(real).area);
    } catch (const InsufficientWindow&) {
    }
  }
}
BENCHMARK(BM_TypicalCell)->Arg(10)->Arg(100)->Arg(1000);

void BM_Incircle(benchmark::State& state) {
  // Cocircular input forces the exact fallback.
  const bool degenerate = state.range(0) != 0;
  const Point2 a{1, 0}, b{0, 1}, c{-1, 0};
  const Point2 d = degenerate ? Point2{0, -1} : Point2{0.3, -0.9};
  for (auto _ : state) benchmark::DoNotOptimize(predicates::incircle(a, b, c, d));
}
BENCHMARK(BM_Incircle)->Arg(0)->Arg(1);

void BM_NnCdf(benchmark::State& state) {
  const ModelParams p{1.0, 5.0};
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nn_cdf(r, p));
    r = r < 3.0 ? r + 0.01 : 0.5;
  }
}
BENCHMARK(BM_NnCdf);

void BM_LaplaceRadial(benchmark::State& state) {
  const ModelParams p{1.0, 1.0};
  const RadialFunction f = path_loss(4.0, 1.0, 0.1, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(laplace_functional_radial(f, p));
}
BENCHMARK(BM_LaplaceRadial);

void BM_LaplaceGeneral(benchmark::State& state) {
  const ModelParams p{1.0, 1.0};
  const PlanarFunction f = shifted(as_planar(gaussian_bump(1.0, 1.0)), {0.5, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(laplace_functional(f, p));
}
BENCHMARK(BM_LaplaceGeneral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
