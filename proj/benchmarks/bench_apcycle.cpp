#include <benchmark/benchmark.h>

#include <memory>

#include "apcycle/decomposition.hpp"
#include "apcycle/engine.hpp"
#include "apcycle/homotopy.hpp"
#include "apcycle/network.hpp"
#include "apcycle/polytope.hpp"

using namespace apcycle;

static void BM_Triangulation(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::size_t cells = 0;
        for_each_cell(N, [&](const Cell&) { ++cells; });
        benchmark::DoNotOptimize(cells);
    }
}
BENCHMARK(BM_Triangulation)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

// One cell per size on a homogeneous ring. Gaussian coefficients would push
// the start point out of double range past N of about 100.
static void BM_SolveCell(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    CycleNetwork net = CycleNetwork::homogeneous(N, 1.0);
    for (int i = 0; i < N; ++i) net.frequencies[i] = 0.01 * ((i * 7) % 11 - 5);
    const LaurentSystem base = complexify(net);
    SignVector lambda{IntVector(N, -1)};
    for (int i = 0; i < N / 2; ++i) lambda.lambdas[i] = 1;
    if (N % 2 != 0) lambda.lambdas[N / 2] = 0;
    const PrimitiveSubnetwork sub = subnetwork(cell_from_normal(normals_for(lambda, N).front(), N), N);
    for (auto _ : state) benchmark::DoNotOptimize(solve_cell(base, sub));
    state.SetComplexityN(N);
}
BENCHMARK(BM_SolveCell)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oN);

static void BM_TrackAllPaths(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const auto sys = std::make_shared<const UnmixedSystem>(
        make_unmixed(random_base_system(N, 3), MixingMatrix::random(N - 1, 4)));
    const std::vector<Cell> cells = triangulation(N);
    TrackOptions opts;
    opts.twist_angle = 0.5;
    for (auto _ : state) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const CellSolution start = solve_cell(sys->base, subnetwork(cells[c], N, c));
            benchmark::DoNotOptimize(track(build(sys, cells[c]), start, opts, c));
        }
    }
    state.counters["paths"] = static_cast<double>(cells.size());
}
BENCHMARK(BM_TrackAllPaths)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_SolveAll(benchmark::State& state) {
    SolveOptions opts;
    opts.seed = 1;
    opts.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(solve_all(RandomSpec{static_cast<int>(state.range(0))}, opts));
}
BENCHMARK(BM_SolveAll)->Args({6, 1})->Args({6, 4})->Args({7, 1})->Args({7, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
