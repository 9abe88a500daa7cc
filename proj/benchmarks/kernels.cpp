#include "../tests/support.hpp"

#include "qc/atlas.hpp"
#include "qc/biquard.hpp"
#include "qc/exterior.hpp"
#include "qc/qcframe.hpp"

#include <benchmark/benchmark.h>

using namespace qc;

static void BM_JetMultiply(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    qctest::Random rng(1);
    const auto a = rng.jet(7, order), b = rng.jet(7, order);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(2)->Arg(3)->Arg(4);

static void BM_ExteriorDerivative(benchmark::State& state) {
    qctest::Random rng(2);
    const auto a = rng.form(7, static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(a));
}
BENCHMARK(BM_ExteriorDerivative)->Arg(1)->Arg(2)->Arg(3);

static void BM_BuildFrame(benchmark::State& state) {
    const auto chart = sphere_3sasakian(1);
    const std::vector<Rational> pt{Rational(1, 2), Rational(-1, 3), Rational(2), Rational(1, 5),
                                   Rational(0), Rational(3, 4), Rational(-1)};
    for (auto _ : state) benchmark::DoNotOptimize(build_frame<Rational>(chart, pt, 3));
}
BENCHMARK(BM_BuildFrame)->Unit(benchmark::kMillisecond);

static void BM_IdentitySuite(benchmark::State& state) {
    const auto chart = heisenberg(1);
    const std::vector<Rational> pt{Rational(1), Rational(2), Rational(-1), Rational(1, 2),
                                   Rational(3), Rational(0), Rational(-2)};
    const auto fr = build_frame<Rational>(chart, pt, 3);
    for (auto _ : state) benchmark::DoNotOptimize(identity_suite(fr, {}));
}
BENCHMARK(BM_IdentitySuite)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
