#include <benchmark/benchmark.h>

#include "gbfam/distributions.hpp"
#include "gbfam/fit.hpp"
#include "gbfam/sde.hpp"
#include "gbfam/specfun.hpp"

using namespace gbfam;

namespace {

const GBParams kRow{1.5457, 398.816, 27.4217, 0.6648, 2.7871};

void BM_RegIncBeta(benchmark::State& state) {
    double y = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::reg_inc_beta(y, 0.6648, 2.7871));
        y = y < 0.9 ? y + 0.01 : 0.1;
    }
}
BENCHMARK(BM_RegIncBeta);

void BM_Appell(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::appell_f1(0.6648, 1.0, 3.45, 1.6648, 0.3, -2.0));
    }
}
BENCHMARK(BM_Appell);

void BM_Cdf(benchmark::State& state) {
    const Distribution d(state.range(0) ? DistSpec::mgb(kRow) : DistSpec::gb(kRow));
    double x = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.cdf(x));
        x = x < 390.0 ? x + 1.0 : 1.0;
    }
}
BENCHMARK(BM_Cdf)->Arg(0)->Arg(1);

void BM_Quantile(benchmark::State& state) {
    const Distribution d(DistSpec::gb(kRow));
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(d.quantile(u));
        u = u < 0.98 ? u + 0.01 : 0.01;
    }
}
BENCHMARK(BM_Quantile);

// One path of 10^5 steps.
void BM_EulerMaruyama(benchmark::State& state) {
    SdeSpec s;
    s.gamma = 2.0;
    s.theta = 0.5;
    s.beta1 = 1.0;
    s.beta2 = 1.0;
    IntegrationConfig cfg;
    cfg.paths = 1;
    cfg.samples_per_path = 100;
    cfg.burn_in = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(s, cfg).samples.data());
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_EulerMaruyama)->Unit(benchmark::kMillisecond);

void BM_NegLogLikelihood(benchmark::State& state) {
    const auto s = DistSpec::gb(kRow);
    const auto v = sample(s, static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(neg_log_likelihood(v, s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NegLogLikelihood)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
