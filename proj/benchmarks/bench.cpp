// Microbenchmarks for the hot paths: symbol evaluation, quadrature-backed
// optimization, operator application, and time marching.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "aniso/operators.hpp"
#include "aniso/optimize.hpp"
#include "aniso/schemes.hpp"
#include "aniso/solver.hpp"
#include "aniso/spectral.hpp"
#include "aniso/stability.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

void BM_ModifiedWavenumber(benchmark::State& state) {
    const auto& s = aniso::find_scheme(state.range(0) == 0 ? "E6" : "Lele");
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aniso::modified_wavenumber(s, z));
        z = (z < 3.0) ? z + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_ModifiedWavenumber)->Arg(0)->Arg(1);

void BM_PrefactoredAverage(benchmark::State& state) {
    const auto& p = aniso::builtin_prefactored(6);
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aniso::prefactored_average(p, z));
        z = (z < 3.0) ? z + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_PrefactoredAverage);

void BM_IcfObjectiveEval(benchmark::State& state) {
    const aniso::IcfObjective obj(aniso::find_scheme("E4"), kPi / 2.0,
                                  aniso::IcfMode::Phase,
                                  static_cast<int>(state.range(0)));
    double beta = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(obj(beta));
        beta = (beta < 2.0) ? beta + 1e-3 : 0.0;
    }
}
BENCHMARK(BM_IcfObjectiveEval)->Arg(512)->Arg(2048);

void BM_IcfOptimize(benchmark::State& state) {
    const auto& s = aniso::find_scheme("E4");
    for (auto _ : state)
        benchmark::DoNotOptimize(
            aniso::icf_optimize(s, kPi / 2.0, aniso::IcfMode::Phase));
}
BENCHMARK(BM_IcfOptimize)->Unit(benchmark::kMillisecond);

void BM_DerivativeApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto& s = aniso::find_scheme(state.range(1) == 0 ? "E6" : "Lele");
    aniso::PeriodicDerivative1D d(s, n, 0.01);
    std::vector<double> in(n), out(n);
    for (int i = 0; i < n; ++i) in[i] = std::sin(2.0 * kPi * 3.0 * i / n);
    for (auto _ : state) {
        d.apply(in.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DerivativeApply)->Args({256, 0})->Args({256, 1})->Args({2048, 0})->Args({2048, 1});

void BM_SpectralApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    aniso::SpectralDerivative1D d(n, 0.01);
    std::vector<double> in(n), out(n);
    for (int i = 0; i < n; ++i) in[i] = std::sin(2.0 * kPi * 3.0 * i / n);
    for (auto _ : state) {
        d.apply(in.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SpectralApply)->Arg(256);

void BM_AdvectionMarch(benchmark::State& state) {
    aniso::SimulationConfig cfg;
    cfg.scheme = aniso::find_scheme("E4");
    cfg.marcher = aniso::Marcher::RK4;
    cfg.n = static_cast<int>(state.range(0));
    cfg.h = 1.0;
    cfg.k = 0.05;
    cfg.c = 1.0;
    cfg.angle = kPi / 6.0;
    cfg.steps = 20;
    cfg.record_stride = cfg.steps;
    const aniso::InitialCondition init = aniso::PlaneWaveInit{kPi / 4.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(aniso::run_advection2d(cfg, init));
    state.SetItemsProcessed(state.iterations() * cfg.steps *
                            static_cast<int64_t>(cfg.n) * cfg.n);
}
BENCHMARK(BM_AdvectionMarch)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PolarDiagram(benchmark::State& state) {
    const auto sp = aniso::scheme_provider(aniso::find_scheme("E4"));
    for (auto _ : state)
        benchmark::DoNotOptimize(aniso::anisotropy_polar(*sp, 4.0, 72));
}
BENCHMARK(BM_PolarDiagram);

void BM_PeakWavenumber(benchmark::State& state) {
    const auto& s = aniso::find_scheme("Lele");
    for (auto _ : state)
        benchmark::DoNotOptimize(aniso::max_abs_wavenumber(s));
}
BENCHMARK(BM_PeakWavenumber);

void BM_AzimuthalMean(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(aniso::koh_mean_alpha(0.6, 0.5, 64));
}
BENCHMARK(BM_AzimuthalMean);

} // namespace

BENCHMARK_MAIN();
