// Compares the OpenMP grid-max kernel against the serial reference on the
// heaviest real workload: the special-Lagrangian residual scan.
#include <benchmark/benchmark.h>

#include "mcf/kernels.hpp"
#include "mcf/lagrangian.hpp"
#include "mcf/variety.hpp"

namespace {

double residual_cell(int N, int r, int grid, int i, int j) {
    using namespace mcf;
    const variety::SurfaceParams params{N};
    const lagrangian::ChartPoint pt{-kPi + (i + 0.5) * kTwoPi / grid, j * kTwoPi / grid,
                                    lagrangian::Pole::None};
    const variety::SurfacePoint p = lagrangian::immersion_eval(params, r, pt);
    const auto [da, db] = lagrangian::immersion_tangents(params, r, pt);
    return std::abs(std::imag(variety::volume_form(params, p, da, db) / p.z));
}

void bench_grid_max_parallel(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const double m = mcf::kern::grid_max(
            grid, grid, [&](int i, int j) { return residual_cell(5, 3, grid, i, j); });
        benchmark::DoNotOptimize(m);
    }
}

void bench_grid_max_serial(benchmark::State& state) {
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const double m = mcf::kern::grid_max_serial(
            grid, grid, [&](int i, int j) { return residual_cell(5, 3, grid, i, j); });
        benchmark::DoNotOptimize(m);
    }
}

} // namespace

BENCHMARK(bench_grid_max_parallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bench_grid_max_serial)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
