#include "ssmdrift/ifs.hpp"
#include "ssmdrift/odeint.hpp"
#include "ssmdrift/planner.hpp"
#include "ssmdrift/rtbp.hpp"
#include "ssmdrift/ssm_fit.hpp"
#include "ssmdrift/synth.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

using namespace ssmdrift;

static void BM_ApplySM(benchmark::State &state)
{
    const SSMModel m = make_reference_model();
    double phi = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_sm(m, 3.0, phi));
        phi += 0.001;
    }
}
BENCHMARK(BM_ApplySM);

static void BM_FitSSM(benchmark::State &state)
{
    const std::vector<double> tori{1, 2, 3, 4, 5, 6, 7};
    const ScatteringGrid grid = generate_grid(make_reference_model(), tori, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_ssm(grid, 4, 5));
    }
}
BENCHMARK(BM_FitSSM)->Arg(128)->Arg(1024);

static void BM_BuildCellGraph(benchmark::State &state)
{
    const SSMModel m1 = make_reference_model(2024, 1), m2 = make_reference_model(2024, 2);
    const TimeModel tm(InnerModel::default_table());
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_cell_graph(m1, m2, tm, CellGrid{k, k, 7.0}));
    }
}
BENCHMARK(BM_BuildCellGraph)->Arg(30)->Arg(100);

static void BM_IntegrateNearL1(benchmark::State &state)
{
    const rtbp::MassRatio mu(rtbp::kSunEarthMu);
    rtbp::State6 s = rtbp::l1_state(mu);
    s.x += 0.01;
    s.z = 0.005;
    for (auto _ : state) {
        benchmark::DoNotOptimize(odeint::integrate(s, mu, std::numbers::pi));
    }
}
BENCHMARK(BM_IntegrateNearL1);
BENCHMARK_MAIN();
