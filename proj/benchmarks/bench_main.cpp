// Micro benchmarks for the hot paths: eigenvalue counting, cube
// classification, the decay certifier and time evolution.

#include <benchmark/benchmark.h>

#include "anderson/anderson.hpp"

namespace {

using namespace anderson;

Potential disorder(const Cube& c, double lambda, std::uint64_t r = 0) {
    return sample_potential(c, Distribution::scaled_uniform(lambda), 1, r);
}

void BM_CountDense(benchmark::State& state) {
    const Cube c = Cube::centered(2, state.range(0));
    const HamMatrix h = build_h(c, BoundaryKind::Simple, disorder(c, 4));
    for (auto _ : state) benchmark::DoNotOptimize(counting(h, 3.0).count);
    state.SetLabel(std::to_string(c.size()) + " sites");
}
BENCHMARK(BM_CountDense)->Arg(5)->Arg(10)->Arg(15);

void BM_CountInertia(benchmark::State& state) {
    const Cube c = Cube::centered(2, state.range(0));
    const HamMatrix h = build_h(c, BoundaryKind::Simple, disorder(c, 4), 0);
    for (auto _ : state) benchmark::DoNotOptimize(counting(h, 3.0).count);
    state.SetLabel(std::to_string(c.size()) + " sites");
}
BENCHMARK(BM_CountInertia)->Arg(5)->Arg(10)->Arg(15)->Arg(30);

void BM_ClassifyCube(benchmark::State& state) {
    const Cube c = Cube::centered(static_cast<std::size_t>(state.range(0)), state.range(1));
    const Potential v = disorder(c, 30);
    for (auto _ : state) benchmark::DoNotOptimize(classify_cube(c, v, 12.0, 0.8).good);
}
BENCHMARK(BM_ClassifyCube)->Args({1, 8})->Args({1, 23})->Args({2, 6});

void BM_Certify(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    const Coord L = state.range(1), l = state.range(2);
    const Cube big = Cube::centered(d, L);
    const Potential v = disorder(big, 30);
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_and_confirm(big, v, 12.0, 1.0, l, MsaPath::Weak, 1.5).issued);
}
BENCHMARK(BM_Certify)->Args({1, 23, 8})->Args({1, 42, 12})->Args({2, 15, 6})->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
    const Cube c = Cube::centered(1, state.range(0));
    const HamMatrix h = build_h(c, BoundaryKind::Simple, disorder(c, 50));
    const EvolutionPlan plan = make_plan(h, delta_state(h, Site{0}));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(plan, t).data());
        t += 0.1;
    }
}
BENCHMARK(BM_Evolve)->Arg(10)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
