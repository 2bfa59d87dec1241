#include "mwdim/boxcount.hpp"
#include "mwdim/julia.hpp"
#include "mwdim/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace mwdim;

namespace {

const julia::RefinedIFS& level(std::size_t k) {
    static std::vector<julia::RefinedIFS> levels = [] {
        std::vector<julia::RefinedIFS> v{julia::initial_ifs(julia::build_initial_regions(julia::QuadraticMap{}))};
        while (v.size() <= 10) v.push_back(julia::refine(v.back()));
        return v;
    }();
    return levels.at(k);
}

void BM_SpectralRadius(benchmark::State& state) {
    const auto& ifs = level(static_cast<std::size_t>(state.range(0)));
    const auto m = build_matrix(ifs.graph, 1.07, RatioKind::upper);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(m).radius);
    state.counters["nodes"] = static_cast<double>(m.size());
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SolveDimension(benchmark::State& state) {
    const auto& ifs = level(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_dimension(ifs.graph, RatioKind::upper).s_star);
}
BENCHMARK(BM_SolveDimension)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Refine(benchmark::State& state) {
    const auto& ifs = level(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(julia::refine(ifs).graph.edge_count());
}
BENCHMARK(BM_Refine)->Arg(3)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_SampleJulia(benchmark::State& state) {
    const julia::QuadraticMap f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(boxcount::sample_julia(f, static_cast<std::size_t>(state.range(0)), 1000, 1).points.data());
    }
}
BENCHMARK(BM_SampleJulia)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BoxCount(benchmark::State& state) {
    static const auto cloud = boxcount::sample_julia(julia::QuadraticMap{}, 1000000, 1000, 1);
    const double delta = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(boxcount::box_count(cloud.points, delta));
}
BENCHMARK(BM_BoxCount)->Arg(4)->Arg(9)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
