// Parallel kernels against their serial references.

#include <map>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pgt/decoding.hpp"
#include "pgt/designs.hpp"
#include "pgt/disjunct.hpp"
#include "pgt/harness.hpp"

using namespace pgt;

namespace {

const ContactMatrix& decode_matrix(std::size_t n) {
    static std::map<std::size_t, ContactMatrix> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, build_probabilistic(derive_prob_params(n, 4, 0.9, kDefaultAlpha, kDefaultDelta, 2048),
                                                  Seed{7}))
                 .first;
    return it->second;
}

Outcome decode_outcome(const ContactMatrix& mc) {
    const SparseSignal x(mc.n(), {1, 17, 300, 901});
    return sample_outcome(mc, x, Stochastic{0.9}, Seed{3});
}

void BM_DecodeSerial(benchmark::State& state) {
    const auto& mc = decode_matrix(static_cast<std::size_t>(state.range(0)));
    const Outcome y = decode_outcome(mc);
    for (auto _ : state) benchmark::DoNotOptimize(distance_decode_serial(mc, y, 10));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DecodeParallel(benchmark::State& state) {
    const auto& mc = decode_matrix(static_cast<std::size_t>(state.range(0)));
    const Outcome y = decode_outcome(mc);
    for (auto _ : state) benchmark::DoNotOptimize(distance_decode(mc, y, 10));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

const ContactMatrix& verify_matrix() {
    static const ContactMatrix mc =
        build_probabilistic(derive_prob_params(60, 2, 1.0, kDefaultAlpha, kDefaultDelta, 400), Seed{11});
    return mc;
}

void BM_VerifySerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_disjunct_serial(verify_matrix(), 2, 1));
}

void BM_VerifyParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_disjunct(verify_matrix(), 2, 1));
}

void BM_BuildBernoulli(benchmark::State& state) {
    const auto pp = derive_prob_params(static_cast<std::size_t>(state.range(0)), 2, 0.8);
    std::uint64_t s = 0;
    for (auto _ : state) benchmark::DoNotOptimize(build_probabilistic(pp, Seed{s++}));
}

void BM_Sweep(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    SweepSpec spec;
    spec.n_grid = {200};
    spec.k_grid = {2};
    spec.p_grid = {0.8};
    spec.trials = 200;
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
    omp_set_num_threads(omp_get_num_procs());
}

}  // namespace

BENCHMARK(BM_DecodeSerial)->Arg(4000)->Arg(16000);
BENCHMARK(BM_DecodeParallel)->Arg(4000)->Arg(16000);
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildBernoulli)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
