// Reference (serial, per-pair q) vs parallel (OpenMP rows, cached weights)
// backends on the two hot loops: a Gagliardo seminorm and a Riesz matvec.
#include "fraclab/riesz.hpp"
#include "fraclab/seminorms.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using fraclab::kernels::Backend;

fraclab::GridPtr disk(int res) {
    const fraclab::Geometry geo(fraclab::GroupSpec::euclidean(2), fraclab::NormKind::euclidean);
    return fraclab::build_grid(geo, fraclab::DomainSpec::quasi_ball(1.0, res));
}

fraclab::GridPtr heisenberg_ball(int res) {
    const fraclab::Geometry geo(fraclab::GroupSpec::heisenberg(1), fraclab::NormKind::koranyi);
    return fraclab::build_grid(geo, fraclab::DomainSpec::quasi_ball(1.0, res));
}

void seminorm(benchmark::State& state, fraclab::GridPtr grid, Backend backend) {
    const auto u = fraclab::GridFunction::sample(grid, [](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return std::exp(-4.0 * r2);
    });
    const fraclab::SeminormParams params(0.4, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fraclab::gagliardo_seminorm(u, params, backend));
    }
    state.counters["cells"] = static_cast<double>(grid->size());
}

void riesz_matvec(benchmark::State& state, fraclab::GridPtr grid, Backend backend) {
    const fraclab::RieszParams rp(0.9, 1.5, grid->geometry().homogeneous_dimension());
    const fraclab::RieszOperator op(grid, rp, backend);
    std::vector<double> v(grid->size(), 1.0);
    std::vector<double> out(grid->size());
    for (auto _ : state) {
        op.apply(v, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["cells"] = static_cast<double>(grid->size());
}

void BM_Seminorm_Disk(benchmark::State& state) {
    seminorm(state, disk(static_cast<int>(state.range(0))), static_cast<Backend>(state.range(1)));
}
void BM_Seminorm_Heisenberg(benchmark::State& state) {
    seminorm(state, heisenberg_ball(static_cast<int>(state.range(0))), static_cast<Backend>(state.range(1)));
}
void BM_RieszMatvec_Disk(benchmark::State& state) {
    riesz_matvec(state, disk(static_cast<int>(state.range(0))), static_cast<Backend>(state.range(1)));
}

}  // namespace

// Second argument: 0 = reference, 1 = parallel.
BENCHMARK(BM_Seminorm_Disk)->ArgsProduct({{40, 80}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Seminorm_Heisenberg)->ArgsProduct({{10, 14}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RieszMatvec_Disk)->ArgsProduct({{40, 80}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
