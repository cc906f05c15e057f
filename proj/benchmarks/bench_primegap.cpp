#include <benchmark/benchmark.h>

#include "pgl/equidist.hpp"
#include "pgl/sums.hpp"
#include "pgl/tuples.hpp"
#include "pgl/variational.hpp"
#include "pgl/weights.hpp"

using namespace pgl;

namespace {

const PrimeTable& shared_table()
{
    static PrimeTable t(2000000);
    return t;
}

const Factorizer& shared_fac()
{
    static Factorizer f(shared_table(), 500000);
    return f;
}

WeightSpec maynard_spec(std::int64_t D)
{
    WeightSpec spec;
    spec.kind = WeightKind::Maynard;
    spec.tuple = Tuple({0, 2});
    spec.D = D;
    spec.presift = build_presift(spec.tuple, 3.0, shared_table());
    spec.F = SimplexPolynomial::one_minus_sum_pow(2, 1);
    return spec;
}

void BM_PrimeTableBuild(benchmark::State& state)
{
    const auto limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        PrimeTable t(limit);
        benchmark::DoNotOptimize(t.primes().size());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_PrimeTableBuild)->Arg(1 << 20)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_PrimeTableBuildParallel(benchmark::State& state)
{
    for (auto _ : state) {
        PrimeTable t(100000000, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(t.primes().size());
    }
}
BENCHMARK(BM_PrimeTableBuildParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PiQueries(benchmark::State& state)
{
    const PrimeTable& t = shared_table();
    std::uint64_t x = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.pi(x));
        x = x * 1664525u % 2000000u + 2;
    }
}
BENCHMARK(BM_PiQueries);

void BM_SelbergTwinWeightSum(benchmark::State& state)
{
    WeightSpec spec;
    spec.kind = WeightKind::SelbergTwin;
    spec.tuple = Tuple({0, 2});
    spec.D = 100;
    LambdaTable lam = build_lambda_table(spec, shared_fac());
    for (auto _ : state) {
        SumReport rep = sum_T1({1, 100000}, spec, lam, shared_fac(), 1);
        benchmark::DoNotOptimize(rep.t1);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 100000);
}
BENCHMARK(BM_SelbergTwinWeightSum)->Unit(benchmark::kMillisecond);

void BM_MaynardLambdaTable(benchmark::State& state)
{
    WeightSpec spec = maynard_spec(state.range(0));
    for (auto _ : state) {
        LambdaTable lam = lambda_from_eta(eta_from_F(spec, shared_fac()), shared_fac());
        benchmark::DoNotOptimize(lam.entries.size());
    }
}
BENCHMARK(BM_MaynardLambdaTable)->Arg(50)->Arg(200);

void BM_MaynardT1Exact(benchmark::State& state)
{
    WeightSpec spec = maynard_spec(50);
    LambdaTable lam = lambda_from_eta(eta_from_F(spec, shared_fac()), shared_fac());
    for (auto _ : state) {
        SumReport rep = sum_T1({100000, 200000}, spec, lam, shared_fac(), 1);
        benchmark::DoNotOptimize(rep.t1_exact);
    }
}
BENCHMARK(BM_MaynardT1Exact)->Unit(benchmark::kMillisecond);

void BM_ExpansionOracle(benchmark::State& state)
{
    WeightSpec spec = maynard_spec(50);
    LambdaTable lam = lambda_from_eta(eta_from_F(spec, shared_fac()), shared_fac());
    for (auto _ : state) {
        Rational r = expansion_oracle_T1({100000, 200000}, lam, spec);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_ExpansionOracle)->Unit(benchmark::kMillisecond);

void BM_ErrorSumE1(benchmark::State& state)
{
    for (auto _ : state) {
        EquidistReport rep = error_sum_El(1000000, state.range(0), 1, shared_fac(), 1);
        benchmark::DoNotOptimize(rep.E_total);
    }
}
BENCHMARK(BM_ErrorSumE1)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Mk105Certificate(benchmark::State& state)
{
    for (auto _ : state) {
        MkCertificate cert = mk_lower_bound(105, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(cert.bound);
    }
}
BENCHMARK(BM_Mk105Certificate)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
