#include <benchmark/benchmark.h>

#include "rspin/validate.hpp"

using namespace rspin;

namespace {

Series dense_series(const Frame* fr, Support sup, int seed) {
    Series::Builder b(fr, sup);
    unsigned s = static_cast<unsigned>(seed);
    for (int e0 = 0; e0 <= 3; ++e0)
        for (int e1 = 0; e1 <= 3; ++e1)
            for (int e2 = 0; e2 <= 3; ++e2) {
                s = s * 1664525u + 1013904223u;
                Monomial m;
                m.e[0] = static_cast<uint16_t>(e0);
                m.e[1] = static_cast<uint16_t>(e1);
                m.e[2] = static_cast<uint16_t>(e2);
                b.add(m, MuScalar(3, Rational(static_cast<long>(s % 17) - 8, 1 + s % 5)));
            }
    return b.build();
}

}  // namespace

static void BM_SeriesMul(benchmark::State& state) {
    Frame fr = Frame::make_T(3, 4);
    Support sup = Support::plain(static_cast<int>(state.range(0)));
    Series a = dense_series(&fr, sup, 1), b = dense_series(&fr, sup, 2);
    for (auto _ : state) {
        Series c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesMul)->Arg(4)->Arg(6);

static void BM_MonicRoot(benchmark::State& state) {
    int r = static_cast<int>(state.range(0));
    EngineConfig cfg;
    cfg.r = r;
    cfg.nmax = r + 2;
    cfg.budget = 4;
    GDState st = GDState::solve(cfg);
    LaxSymbol L = st.lax();
    for (auto _ : state) {
        LaxSymbol K = L.monic_root(r);
        benchmark::DoNotOptimize(K);
    }
}
BENCHMARK(BM_MonicRoot)->Arg(2)->Arg(4);

static void BM_HierarchySolve(benchmark::State& state) {
    int r = static_cast<int>(state.range(0));
    EngineConfig cfg;
    cfg.r = r;
    cfg.nmax = r + 2;
    cfg.budget = 4;
    for (auto _ : state) {
        GDState st = GDState::solve(cfg);
        benchmark::DoNotOptimize(st.phi0().term_count());
    }
}
BENCHMARK(BM_HierarchySolve)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_PrimarySweepSolve(benchmark::State& state) {
    int r = static_cast<int>(state.range(0));
    for (auto _ : state) {
        EngineConfig cfg = plan_primary_config(r, 10, 12, 10);
        cfg.desc_budget = 0;
        GDState st = GDState::solve(cfg);
        benchmark::DoNotOptimize(st.phi0().term_count());
    }
}
BENCHMARK(BM_PrimarySweepSolve)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_RecursionEngine(benchmark::State& state) {
    int r = 3;
    CrossBounds bounds{3, 2};
    EngineConfig cfg = plan_config(r, bounds);
    GDState st = GDState::solve(cfg);
    CorrelatorKey key(Sector::Open, r, {{1, 1}, {1, 0}, {2, 0}},
                      gate_boundary_count(r, {{1, 1}, {1, 0}, {2, 0}}));
    for (auto _ : state) {
        MemoStore memo;  // cold cache each round
        Evaluator ev(st, &memo);
        benchmark::DoNotOptimize(ev.recursion_engine(key));
    }
}
BENCHMARK(BM_RecursionEngine);

static void BM_WavePhaseExtraction(benchmark::State& state) {
    int r = 4;
    EngineConfig cfg = plan_ext_config(r, 6);
    GDState st = GDState::solve(cfg);
    CorrelatorKey key(Sector::Extended, r, {{3, 0}, {3, 0}, {3, 0}, {2, 0}, {2, 0}});
    for (auto _ : state) benchmark::DoNotOptimize(ext_from_phi0(st, key));
}
BENCHMARK(BM_WavePhaseExtraction);

BENCHMARK_MAIN();
