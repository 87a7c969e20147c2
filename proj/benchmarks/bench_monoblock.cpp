#include "monoblock/monoblock.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace monoblock;

namespace {

MeshSpec square(int n, int nt) {
    MeshSpec s;
    s.nx = s.ny = n;
    s.nt = nt;
    s.T = 0.5;
    return s;
}

void BM_TridiagSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TriDiag t;
    t.sub.assign(n - 1, -1.0);
    t.sup.assign(n - 1, -1.0);
    t.diag.assign(n, 2.5);
    std::vector<double> rhs(n), x(n);
    for (auto& v : rhs) v = u(rng);
    TridiagWorkspace ws;
    for (auto _ : state) {
        ws.solve(t, rhs, x);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_TridiagSolve)->RangeMultiplier(4)->Range(16, 4096);

void BM_LevelStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sweep sweep = state.range(1) == 0 ? Sweep::Jacobi : Sweep::GaussSeidel;
    const ModelInstance mi = instantiate("gas-liquid", {}, square(n, 1));
    const Mesh mesh(square(n, 1));
    const Bracket b = build_bracket(mi.problem, mesh, mi.bracket);
    TimeStepPolicy pol;
    pol.audit = false;
    const LevelSetup setup = prepare_level(mi.problem, mesh, 1, pol);
    const FieldPair prev{sample_initial(mi.problem, 0, mesh), sample_initial(mi.problem, 1, mesh)};
    for (auto _ : state) {
        LevelIteration it(mi.problem, mesh, setup, sweep, pol, b.upper[1], b.lower[1], prev, prev);
        it.step();
        benchmark::DoNotOptimize(it.residual());
    }
    state.SetLabel(to_string(sweep));
}
BENCHMARK(BM_LevelStep)->ArgsProduct({{16, 32, 64}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_March(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ModelInstance mi = instantiate("volterra-lotka", {}, square(n, 4));
    const Mesh mesh(square(n, 4));
    const Bracket b = build_bracket(mi.problem, mesh, mi.bracket);
    TimeStepPolicy pol;
    pol.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        const MarchResult r = march(mi.problem, mesh, Sweep::GaussSeidel, pol, b);
        benchmark::DoNotOptimize(r.solution.back()[0].values().data());
    }
}
BENCHMARK(BM_March)->ArgsProduct({{9, 17, 33}, {1, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
