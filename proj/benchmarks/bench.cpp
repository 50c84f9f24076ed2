#include <benchmark/benchmark.h>

#include "cocyclelab/cohomology.hpp"

using namespace cocyclelab;

static ModulePtr z8_mod2() {
    return GModule::trivial(make_cyclic(8), CoefficientGroup::finite_abelian({2}));
}

static void BM_CoboundaryAssembly(benchmark::State& state) {
    ModulePtr m = z8_mod2();
    for (auto _ : state) {
        IntMat d = coboundary_matrix(m, (int)state.range(0));
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_CoboundaryAssembly)->Arg(2)->Arg(3);

static void BM_SmithNormalForm(benchmark::State& state) {
    ModulePtr m = z8_mod2();
    IntMat d = coboundary_matrix(m, (int)state.range(0));
    for (auto _ : state) {
        SnfResult f = smith_normal_form(d, SnfOptions{false, true});
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_SmithNormalForm)->Arg(2)->Arg(3);

static void BM_CohomologyH3(benchmark::State& state) {
    ModulePtr m = z8_mod2();
    for (auto _ : state) {
        CohomologyGroup h = cohomology(m, 3);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_CohomologyH3);

static void BM_CoboundaryEval(benchmark::State& state) {
    ModulePtr m = z8_mod2();
    Cochain c(m, 2);
    for (std::size_t i = 0; i < c.table_size(); i += 3) c.set(i, Value{Rat(1)});
    for (auto _ : state) {
        Cochain d = coboundary(c);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_CoboundaryEval);

BENCHMARK_MAIN();
