#include <benchmark/benchmark.h>

#include <umbilic/cubic_family.hpp>
#include <umbilic/detect.hpp>
#include <umbilic/grid.hpp>
#include <umbilic/unfolding.hpp>

using namespace umbilic;

namespace {

GridField family_field(double s, int n) {
    const double h = 1.0 / (n - 1);
    return sample(cubic_family::family_polynomial(), {-0.5, -0.5, 0.5, 0.5}, h, s);
}

void BM_sample(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto f = family_field(1.0 / 144.0, n);
        benchmark::DoNotOptimize(f.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_sample)->Arg(129)->Arg(513);

void BM_blur(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridField base = family_field(1.0 / 720.0, n);
    const double ds = 1.0 / 144.0 - 1.0 / 720.0;
    for (auto _ : state) {
        auto out = blur(base, ds);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_blur)->Arg(129)->Arg(513);

void BM_detect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridField field = family_field(1.0 / 144.0, n);
    for (auto _ : state) {
        auto pts = detect(field);
        benchmark::DoNotOptimize(pts.data());
    }
}
BENCHMARK(BM_detect)->Arg(129)->Arg(513);

void BM_heat_flow_symbolic(benchmark::State& state) {
    const Polynomial p = Polynomial::parse("x^3 - 6*x*y^2 + y^2", 2);
    for (auto _ : state) {
        auto q = p.heat_flow_symbolic();
        benchmark::DoNotOptimize(&q);
    }
}
BENCHMARK(BM_heat_flow_symbolic);

void BM_unfolding_roots(benchmark::State& state) {
    const unfolding::UnfoldingParams params{0.5, 0.03, 0.01, 0.0};
    for (auto _ : state) {
        auto pts = unfolding::critical_points_g(params);
        benchmark::DoNotOptimize(pts.data());
    }
}
BENCHMARK(BM_unfolding_roots);

}  // namespace

BENCHMARK_MAIN();
