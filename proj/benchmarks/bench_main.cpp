#include <benchmark/benchmark.h>

#include <random>

#include "contractio/theorems.hpp"

using namespace contractio;

namespace {

QPoly poly(std::initializer_list<long> low_to_high)
{
    std::vector<Rational> c;
    for (long x : low_to_high) c.emplace_back(x);
    return QPoly(std::move(c));
}

model::ContractionGroup mixed_group()
{
    return model::ContractionGroup{{model::make_shift({finite::CatalogKind::Symmetric, 4}),
                                    model::make_companion(3, poly({3, 0, 1})), model::make_heisenberg(5, 1, 2),
                                    model::make_linear(2, RatMatrix({{Rational(2), Rational(1, 3)}, {Rational(0), Rational(4)}}))}};
}

}  // namespace

static void BM_NewtonPolygon(benchmark::State& state)
{
    QPoly f = poly({18, -27, 3, 9, 1});
    for (auto _ : state) benchmark::DoNotOptimize(padic::newton_polygon(f, 3));
}
BENCHMARK(BM_NewtonPolygon);

static void BM_HenselLift(benchmark::State& state)
{
    long k = state.range(0);
    // f = (X + 1)(X^2 + 1) mod 3.
    QPoly f = poly({7, -2, 4, 1});
    QPoly g0 = poly({1, 1});
    QPoly h0 = poly({1, 0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(padic::hensel_lift(f, g0, h0, 3, k));
}
BENCHMARK(BM_HenselLift)->Arg(8)->Arg(32)->Arg(128);

static void BM_FactorOverQp(benchmark::State& state)
{
    QPoly f = poly({9, 9, 6, 3, 1});  // (X^2 + 3)(X^2 + 3X + 3)
    padic::PAdicContext ctx(3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(padic::factor_over_qp(f, ctx));
}
BENCHMARK(BM_FactorOverQp)->Arg(32)->Arg(128);

static void BM_ContractivityOracle(benchmark::State& state)
{
    RatMatrix a({{Rational(0), Rational(0), Rational(-8)}, {Rational(1), Rational(0), Rational(6)}, {Rational(0), Rational(1), Rational(2, 3)}});
    for (auto _ : state) benchmark::DoNotOptimize(model::contractivity_oracle(a, 2));
}
BENCHMARK(BM_ContractivityOracle);

static void BM_FiniteComposition(benchmark::State& state)
{
    finite::FiniteGroup g = finite::make_catalog_group({finite::CatalogKind::Symmetric, static_cast<int>(state.range(0))});
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(finite::composition_series_finite(g, ++seed));
}
BENCHMARK(BM_FiniteComposition)->Arg(4)->Arg(5);

static void BM_GroupAnalysis(benchmark::State& state)
{
    auto g = mixed_group();
    for (auto _ : state) benchmark::DoNotOptimize(series::GroupAnalysis(g));
}
BENCHMARK(BM_GroupAnalysis);

static void BM_CompositionSeries(benchmark::State& state)
{
    auto g = mixed_group();
    series::GroupAnalysis ga(g);
    auto mode = state.range(0) ? series::Mode::AlphaNormal : series::Mode::Alpha;
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(series::composition_series(ga, mode, ++seed));
}
BENCHMARK(BM_CompositionSeries)->Arg(0)->Arg(1);

static void BM_VerifyStructure(benchmark::State& state)
{
    auto g = mixed_group();
    for (auto _ : state) benchmark::DoNotOptimize(theorems::verify_structure(g, state.range(0), 7));
}
BENCHMARK(BM_VerifyStructure)->Arg(10)->Arg(100);

static void BM_ElementPower(benchmark::State& state)
{
    auto g = mixed_group();
    std::mt19937_64 rng(1);
    auto x = model::random_element(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(model::power(g, x, state.range(0)));
}
BENCHMARK(BM_ElementPower)->Arg(50)->Arg(1 << 20);

BENCHMARK_MAIN();
