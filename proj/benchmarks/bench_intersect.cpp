#include <benchmark/benchmark.h>

#include <vector>

#include "igeo/estimators.hpp"
#include "igeo/intersect.hpp"
#include "igeo/samplers.hpp"
#include "igeo/shapes.hpp"

namespace {

const igeo::SimplicialMesh& sphere(int level) {
  static std::vector<igeo::SimplicialMesh> cache = [] {
    std::vector<igeo::SimplicialMesh> out;
    for (int k = 0; k <= 5; ++k) out.push_back(igeo::shapes::make_sphere(3, k, 1.0));
    return out;
  }();
  return cache[static_cast<std::size_t>(level)];
}

void BM_LineCount(benchmark::State& state) {
  const igeo::SimplicialMesh& m = sphere(static_cast<int>(state.range(0)));
  const igeo::QueryOptions opts{state.range(1) != 0};
  igeo::RandomStream rs(1);
  for (auto _ : state) {
    const igeo::OrientedLine l = igeo::sample_line_meeting_ball(rs, 3, m.ball().center, m.ball().radius);
    benchmark::DoNotOptimize(igeo::collect_line_hits(l, m, opts));
  }
  state.counters["facets"] = static_cast<double>(m.num_facets());
}
BENCHMARK(BM_LineCount)->ArgsProduct({{1, 3, 5}, {0, 1}});

void BM_PointDistance(benchmark::State& state) {
  const igeo::SimplicialMesh& m = sphere(static_cast<int>(state.range(0)));
  igeo::RandomStream rs(2);
  for (auto _ : state) {
    const igeo::Vector p = igeo::sample_ball_point(rs, 3, m.ball().center, 1.1);
    benchmark::DoNotOptimize(igeo::within_distance(p, m, 0.05));
  }
}
BENCHMARK(BM_PointDistance)->DenseRange(1, 5, 2);

void BM_PlaneComponents(benchmark::State& state) {
  const igeo::SimplicialMesh& m = sphere(static_cast<int>(state.range(0)));
  igeo::RandomStream rs(3);
  for (auto _ : state) {
    const igeo::AffineFlat g = igeo::sample_grassmannian(rs, 3, 2);
    const igeo::AffineFlat f(g.basis(), 0.9 * igeo::sample_unit_ball(rs, 3));
    try {
      benchmark::DoNotOptimize(igeo::slice_components(f, m));
    } catch (const igeo::Error&) {
    }
  }
}
BENCHMARK(BM_PlaneComponents)->DenseRange(1, 5, 2);

void BM_CroftonArea(benchmark::State& state) {
  const igeo::SimplicialMesh& m = sphere(4);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(igeo::crofton_area(m, static_cast<std::uint64_t>(state.range(0)),
                                                igeo::RandomStream(seed++), igeo::ExecPolicy{1}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CroftonArea)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
