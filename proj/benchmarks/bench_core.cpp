// Microbenchmarks for the hot kernels: neighbor search, one simulation step,
// the Poisson-binomial convolution and one full filter sweep.

#include <benchmark/benchmark.h>

#include "betis/filter.hpp"
#include "betis/harness.hpp"
#include "betis/mobility.hpp"
#include "betis/observe.hpp"
#include "betis/poisson_binomial.hpp"
#include "betis/simulator.hpp"

namespace {

using namespace betis;

void BM_PoissonBinomial(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng rng(1);
    std::vector<double> probs(m);
    for (double& p : probs) p = rng.uniform01();
    for (auto _ : state) benchmark::DoNotOptimize(poisson_binomial(probs));
}
BENCHMARK(BM_PoissonBinomial)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_ComputeContacts(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double d_inf = 0.007 * std::sqrt(10000.0 / n);
    const auto locs = init_locations(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(compute_contacts(locs, d_inf, n / 2, 1));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ComputeContacts)->Arg(2000)->Arg(10000);

void BM_StepPopulation(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double d_inf = 0.007 * std::sqrt(10000.0 / n);
    const EpidemicParams params;
    const auto locs = init_locations(n, 5);
    const auto contacts = compute_contacts(locs, d_inf, n / 2, 1);
    const PopulationState pop =
        sample_initial_states(n, n / 2, Prior::initial_outbreak(params.alpha), 5);
    for (auto _ : state) benchmark::DoNotOptimize(step_population(pop, contacts, params, 5));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_StepPopulation)->Arg(2000)->Arg(10000);

void BM_FilterStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ScenarioConfig cfg = parse_config("horizon = 2\nearly_stop = false\nseeds = 9\n",
                                      Preset::Desk);
    cfg.n = n;
    cfg.finalize();
    const SimulationResult sim = simulate_scenario(cfg, 9, 1);
    const NonUserContactModel f = resolve_contact_model(cfg, &sim.empirical_f);
    FilterState fs = init_filter(cfg.n_users(), cfg.prior, f, cfg.params);
    measurement_update_all(fs, sim.log.frame(1), cfg.params, f);
    for (auto _ : state) {
        FilterState work = fs;
        time_update(work, sim.log.frame(1).user_neighbors, cfg.params, f);
        benchmark::DoNotOptimize(work);
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_users());
}
BENCHMARK(BM_FilterStep)->Arg(2000)->Arg(10000);

void BM_EndToEndDeskRun(benchmark::State& state) {
    ScenarioConfig cfg = parse_config(
        "n = 2000\nhorizon = 150\nearly_stop = false\nseeds = 11\n", Preset::Desk);
    for (auto _ : state) benchmark::DoNotOptimize(run_one(cfg, 11, 1, {}));
}
BENCHMARK(BM_EndToEndDeskRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
