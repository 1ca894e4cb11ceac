#include <benchmark/benchmark.h>

#include <random>

#include <lorenz/core.hpp>
#include <lorenz/submaj.hpp>

using namespace lorenz;

namespace {

core::vpair make_pair_data(std::size_t n, unsigned seed, bool normalize) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    core::vpair a;
    a.p.resize(n);
    a.q.resize(n);
    for (auto& v : a.p) v = u(rng);
    for (auto& v : a.q) v = u(rng);
    if (normalize) {
        double tp = core::total(a.p), tq = core::total(a.q);
        for (auto& v : a.p) v /= tp;
        for (auto& v : a.q) v /= tq;
    }
    return a;
}

void bm_elbows(benchmark::State& state) {
    core::vpair a = make_pair_data(static_cast<std::size_t>(state.range(0)), 1, false);
    for (auto _ : state) benchmark::DoNotOptimize(core::elbows(a));
}
BENCHMARK(bm_elbows)->Arg(8)->Arg(64)->Arg(512);

void bm_beta_at(benchmark::State& state) {
    core::vpair a = make_pair_data(static_cast<std::size_t>(state.range(0)), 2, false);
    double x = 0.4 * core::total(a.p);
    for (auto _ : state) benchmark::DoNotOptimize(core::beta_at(a, x));
}
BENCHMARK(bm_beta_at)->Arg(8)->Arg(64)->Arg(512);

void bm_tensor_power(benchmark::State& state) {
    core::vpair a = make_pair_data(2, 3, true);
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(core::tensor_power(a, n));
}
BENCHMARK(bm_tensor_power)->Arg(16)->Arg(64);

void bm_submajorizes_geometric(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    core::vpair a = make_pair_data(n, 4, true);
    core::vpair b = make_pair_data(n, 5, true);
    for (auto& v : b.p) v *= 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(submaj::submajorizes(a, b, submaj::method::geometric));
}
BENCHMARK(bm_submajorizes_geometric)->Arg(6)->Arg(32)->Arg(128);

void bm_submajorizes_lp(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    core::vpair a = make_pair_data(n, 4, true);
    core::vpair b = make_pair_data(n, 5, true);
    for (auto& v : b.p) v *= 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(submaj::submajorizes(a, b, submaj::method::lp));
}
BENCHMARK(bm_submajorizes_lp)->Arg(6)->Arg(16)->Arg(32);

void bm_witness_from_curves(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    core::vpair a = make_pair_data(n, 6, true);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    core::vpair b;
    b.p.assign(n, 0.0);
    b.q.assign(n, 0.0);
    // stochastic image of a plus q headroom keeps the instance feasible
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col(n);
        double t = 0.0;
        for (auto& v : col) t += (v = u(rng));
        for (std::size_t i = 0; i < n; ++i) {
            b.p[i] += col[i] / t * a.p[j];
            b.q[i] += col[i] / t * a.q[j];
        }
    }
    for (auto& v : b.q) v *= 1.25;
    for (auto _ : state) benchmark::DoNotOptimize(submaj::witness_from_curves(a, b));
}
BENCHMARK(bm_witness_from_curves)->Arg(6)->Arg(16)->Arg(32);

void bm_optimal_errors(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    core::vpair a = make_pair_data(n, 8, true);
    core::vpair b = make_pair_data(n, 9, true);
    for (auto _ : state) benchmark::DoNotOptimize(submaj::optimal_errors(a, b));
}
BENCHMARK(bm_optimal_errors)->Arg(6)->Arg(32)->Arg(128);

} // namespace

BENCHMARK_MAIN();
