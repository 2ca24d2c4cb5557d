#include <benchmark/benchmark.h>

#include "bethelab/block.hpp"
#include "bethelab/disk.hpp"
#include "bethelab/green.hpp"
#include "bethelab/strip.hpp"
#include "bethelab/sum_rules.hpp"
#include "bethelab/tree_matrix.hpp"

using namespace bethe;

namespace {

TreePotential deep_potential(int radius) {
    std::vector<double> env;
    for (int n = 0; n <= radius; ++n) env.push_back(1.5 * std::pow(0.7, n));
    return TreePotential::seeded_random(1, env);
}

void BM_RecursionBoundary(benchmark::State& state) {
    const TreePotential pot = deep_potential(static_cast<int>(state.range(0)));
    double lambda = -2.5;
    for (auto _ : state) {
        lambda = lambda < 2.5 ? lambda + 0.01 : -2.5;
        benchmark::DoNotOptimize(m_root(pot, SpectralPoint::on_band(lambda)).value);
    }
}
BENCHMARK(BM_RecursionBoundary)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_ResolventOracle(benchmark::State& state) {
    const TreePotential pot = deep_potential(3);
    const int depth = 3 + static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(tree_resolvent_root(pot, depth, Complex(0, 1)));
}
BENCHMARK(BM_ResolventOracle)->Arg(10)->Arg(40);

void BM_BandQuadratureLogDensity(benchmark::State& state) {
    const TreePotential pot = deep_potential(4);
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        const double val = band_quadrature(
            [&](double l) { return std::log(m_root(pot, SpectralPoint::on_band(l)).value.imag()); },
            tol);
        benchmark::DoNotOptimize(val);
    }
}
BENCHMARK(BM_BandQuadratureLogDensity)->Arg(6)->Arg(8)->Arg(10);

void BM_ZeroPoleSearch(benchmark::State& state) {
    const TreePotential pot = TreePotential::seeded_random(5, {2.5, 1.5});
    for (auto _ : state) benchmark::DoNotOptimize(find_zeros_poles(pot, 1e-10));
}
BENCHMARK(BM_ZeroPoleSearch);

void BM_ContourProjector(benchmark::State& state) {
    const BlockOperator blk = random_separated_block(4, 3, 0.5);
    const ContourSpec contour{2.0, -6.0, 3.0, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(M_contour(blk, contour));
}
BENCHMARK(BM_ContourProjector)->Arg(128)->Arg(512)->Arg(2048);

void BM_StripAssembly(benchmark::State& state) {
    const StripPotential q = [](double x, double y) { return std::exp(-x) * std::cos(y); };
    const int g = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(strip_matrix(q, 2, {40.0, g}));
}
BENCHMARK(BM_StripAssembly)->Arg(100)->Arg(400);

} // namespace

BENCHMARK_MAIN();
