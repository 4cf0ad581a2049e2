#include <benchmark/benchmark.h>

#include "jdopt/harvest.hpp"
#include "jdopt/ipo.hpp"
#include "jdopt/sim.hpp"
#include "jdopt/verify.hpp"

using namespace jdopt;

namespace {
const ModelParams kBase(-0.05, 0.25, 0.75, 1.5, 0.1);
}

static void BM_SolveRoots(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_roots(kBase));
}
BENCHMARK(BM_SolveRoots);

static void BM_SolveIpoThreshold(benchmark::State& state) {
    const IpoParams params(kBase, 1.25, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_ipo_threshold(params));
}
BENCHMARK(BM_SolveIpoThreshold);

static void BM_SolveMinMaxFloor(benchmark::State& state) {
    const IpoParams params(kBase, 1.25);
    for (auto _ : state) benchmark::DoNotOptimize(solve_min_max_a(params));
}
BENCHMARK(BM_SolveMinMaxFloor);

static void BM_SolveHarvestThreshold(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_harvest_threshold(kBase));
}
BENCHMARK(BM_SolveHarvestThreshold);

static void BM_ApplyGenerator(benchmark::State& state) {
    const IpoSolution sol = solve_ipo_threshold(IpoParams(kBase, 1.25, 1.0));
    const PiecewiseValueFunction v = PiecewiseValueFunction::from_ipo(sol);
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_generator(v, kBase, x));
        x += 0.01;
        if (x > sol.b) x = 1.0;
    }
}
BENCHMARK(BM_ApplyGenerator);

static void BM_CheckIpoConditions(benchmark::State& state) {
    const IpoSolution sol = solve_ipo_threshold(IpoParams(kBase, 1.25, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(check_ipo_conditions(sol));
}
BENCHMARK(BM_CheckIpoConditions);

static void BM_SimulateIpo(benchmark::State& state) {
    const IpoSolution sol = solve_ipo_threshold(IpoParams(kBase, 1.25, 1.0));
    SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 300.0;
    cfg.n_paths = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_ipo(kBase, 1.0, sol.b, 1.25, 2.0, cfg, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateIpo)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SimulateHarvest(benchmark::State& state) {
    const HarvestSolution sol = solve_harvest_threshold(kBase);
    SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.horizon = 300.0;
    cfg.n_paths = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_harvest(kBase, sol.b, 1.0, cfg, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateHarvest)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
