// Acceptance suite: one test per release criterion, each printing a single
// PASS/FAIL line. Heavy scenario runs are cached and shared across criteria.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <vector>

#include "betis/harness.hpp"
#include "betis/io.hpp"
#include "betis/observe.hpp"
#include "betis/poisson_binomial.hpp"

using namespace betis;
namespace fs = std::filesystem;

namespace {

constexpr int kThreads = 2;

void report(int criterion, bool pass, const std::string& what) {
    std::cout << "[CRITERION " << criterion << "] " << (pass ? "PASS" : "FAIL") << " - " << what
              << std::endl;
    EXPECT_TRUE(pass) << "criterion " << criterion << ": " << what;
}

ScenarioConfig sweep_config(double c0, bool degraded_reports) {
    ScenarioConfig cfg = parse_config(
        "n = 2000\n"
        "horizon = 150\n"
        "early_stop = false\n"
        "seeds = 42, 43, 44, 45, 46\n",
        Preset::Desk);
    cfg.c0 = c0;
    cfg.n_test = cfg.n_users() / 50;  // 2% of users
    if (degraded_reports) {
        cfg.params.p_fa = 0.2;
        cfg.params.p_tp = 0.75;
    }
    cfg.finalize();
    return cfg;
}

// Five-seed desk runs, computed once per (c0, degraded) pair.
const std::vector<RunRecord>& cached_runs(double c0, bool degraded_reports) {
    static std::map<std::pair<int, bool>, std::vector<RunRecord>> cache;
    const auto key = std::make_pair(static_cast<int>(c0 * 10 + 0.5), degraded_reports);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const ScenarioConfig cfg = sweep_config(c0, degraded_reports);
        std::vector<RunRecord> records;
        for (std::uint64_t seed : cfg.seeds) records.push_back(run_one(cfg, seed, kThreads, {}));
        it = cache.emplace(key, std::move(records)).first;
    }
    return it->second;
}

// Fraction of qualifying steps (per-step 5-seed means) where the estimate is
// at least the truth. Window: steps whose mean qualifying count >= 10; the
// asymptomatic window falls back to the symptomatic one when empty, which is
// the non-vacuous reading at desk scale.
struct OverestimationStats {
    double fraction_I = 0.0;
    double fraction_Ia = 0.0;
    int window_I = 0;
    int window_Ia = 0;
};

OverestimationStats overestimation_stats(const std::vector<RunRecord>& records) {
    const std::size_t horizon = records.front().steps.size();
    std::vector<double> mean_true_I(horizon), mean_est_I(horizon);
    std::vector<double> mean_true_Ia(horizon), mean_est_Ia(horizon);
    for (const RunRecord& record : records) {
        EXPECT_EQ(record.steps.size(), horizon);
        for (std::size_t k = 0; k < horizon; ++k) {
            mean_true_I[k] += record.steps[k].true_I;
            mean_est_I[k] += record.steps[k].est_I;
            mean_true_Ia[k] += record.steps[k].true_Ia;
            mean_est_Ia[k] += record.steps[k].est_Ia;
        }
    }
    const double n_seeds = static_cast<double>(records.size());
    for (std::size_t k = 0; k < horizon; ++k) {
        mean_true_I[k] /= n_seeds;
        mean_est_I[k] /= n_seeds;
        mean_true_Ia[k] /= n_seeds;
        mean_est_Ia[k] /= n_seeds;
    }

    OverestimationStats stats;
    int over_I = 0;
    for (std::size_t k = 0; k < horizon; ++k) {
        if (mean_true_I[k] < 10.0) continue;
        ++stats.window_I;
        if (mean_est_I[k] >= mean_true_I[k]) ++over_I;
    }
    stats.fraction_I = stats.window_I ? static_cast<double>(over_I) / stats.window_I : 0.0;

    std::vector<std::size_t> ia_window;
    for (std::size_t k = 0; k < horizon; ++k)
        if (mean_true_Ia[k] >= 10.0) ia_window.push_back(k);
    if (ia_window.empty())
        for (std::size_t k = 0; k < horizon; ++k)
            if (mean_true_I[k] >= 10.0) ia_window.push_back(k);
    int over_Ia = 0;
    for (std::size_t k : ia_window)
        if (mean_est_Ia[k] >= mean_true_Ia[k]) ++over_Ia;
    stats.window_Ia = static_cast<int>(ia_window.size());
    stats.fraction_Ia = ia_window.empty() ? 0.0 : static_cast<double>(over_Ia) / ia_window.size();
    return stats;
}

// Criterion-5 statistic: window-averaged tp_I / user_true_I, then averaged
// over seeds. Window: steps with at least 20 truly infectious users.
double mean_tp_fraction(const std::vector<RunRecord>& records) {
    double total = 0.0;
    int seeds_with_window = 0;
    for (const RunRecord& record : records) {
        double sum = 0.0;
        int window = 0;
        for (const StepMetrics& m : record.steps) {
            if (m.user_true_I < 20) continue;
            ++window;
            sum += static_cast<double>(m.tp_I) / m.user_true_I;
        }
        if (window > 0) {
            total += sum / window;
            ++seeds_with_window;
        }
    }
    EXPECT_GT(seeds_with_window, 0);
    return seeds_with_window ? total / seeds_with_window : 0.0;
}

double mean_abs_estimation_error(const std::vector<RunRecord>& records) {
    double total = 0.0;
    for (const RunRecord& record : records) {
        double err = 0.0;
        for (const StepMetrics& m : record.steps) err += std::abs(m.est_I - m.true_I);
        total += err / record.steps.size();
    }
    return total / records.size();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(testing::TempDir()) / ("betis_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

// Kernel oracle equivalence: exact Poisson-binomial vs 2^M enumeration, the
// non-user hazard chain vs its closed form, and simulator single-step
// frequencies vs the analytic transition rows.
TEST(Acceptance, Criterion1_KernelOracles) {
    bool pass = true;

    // poisson_binomial vs exhaustive enumeration, 100 random cases, M <= 12
    Rng rng(20250808);
    double worst_pb = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform01() * 12);
        std::vector<double> probs(m);
        for (double& p : probs) p = rng.uniform01();
        const auto fast = poisson_binomial(probs);
        std::vector<double> slow(m + 1, 0.0);
        for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
            double w = 1.0;
            int successes = 0;
            for (int j = 0; j < m; ++j) {
                if (mask & (1ULL << j)) {
                    w *= probs[j];
                    ++successes;
                } else {
                    w *= 1.0 - probs[j];
                }
            }
            slow[successes] += w;
        }
        for (std::size_t i = 0; i < fast.size(); ++i)
            worst_pb = std::max(worst_pb, std::abs(fast[i] - slow[i]));
    }
    pass = pass && worst_pb <= 1e-12;

    // hazard chain vs closed form 1 - sum f(m) (1 - beta p)^m, 1000 cases
    double worst_eps = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double p_inf = rng.uniform01();
        const double beta = rng.uniform01();
        NonUserContactModel f;
        f.pmf.resize(1 + static_cast<int>(rng.uniform01() * 14));
        double sum = 0.0;
        for (double& p : f.pmf) {
            p = rng.uniform01();
            sum += p;
        }
        for (double& p : f.pmf) p /= sum;
        double survival = 0.0;
        for (std::size_t m = 0; m < f.pmf.size(); ++m)
            survival += f.pmf[m] * std::pow(1.0 - beta * p_inf, static_cast<double>(m));
        worst_eps = std::max(worst_eps,
                             std::abs(nonuser_hazard(p_inf, f, beta) - (1.0 - survival)));
    }
    pass = pass && worst_eps <= 1e-12;

    // simulator single-step frequencies vs the analytic rows, 1e5 samples
    const int n_samples = 100000;
    EpidemicParams params;
    bool freq_ok = true;
    for (Compartment start : kAllCompartments) {
        for (int m : {0, 2}) {
            const int n = n_samples + m;
            PopulationState pop;
            pop.states.assign(n, start);
            pop.n_users = 0;
            pop.time = 1;
            ContactSnapshot snap;
            snap.time = 1;
            snap.n_users = 0;
            snap.full_neighbors.resize(n);
            for (int s = 0; s < m; ++s) pop.states[n_samples + s] = Compartment::I;
            for (int i = 0; i < n_samples; ++i)
                for (int s = 0; s < m; ++s)
                    snap.full_neighbors[i].push_back(n_samples + s);
            const PopulationState next =
                step_population(pop, snap, params, 97 + m + index_of(start), kThreads);
            std::array<int, kNumCompartments> counts{};
            for (int i = 0; i < n_samples; ++i) ++counts[index_of(next.states[i])];
            const auto row = transition_distribution(start, m, 0.0, params);
            for (Compartment c : kAllCompartments) {
                const double p = row[index_of(c)];
                const double se = std::sqrt(p * (1.0 - p) / n_samples);
                const double freq = static_cast<double>(counts[index_of(c)]) / n_samples;
                if (std::abs(freq - p) > 3.0 * se + 1e-12) freq_ok = false;
            }
        }
    }
    pass = pass && freq_ok;

    report(1, pass,
           "kernel oracles: poisson-binomial max err " + std::to_string(worst_pb) +
               ", hazard max err " + std::to_string(worst_eps) +
               (freq_ok ? ", step frequencies within 3 SE" : ", step frequencies OUT of 3 SE"));
}

// Every belief after every measurement and time update over a full fig2 desk
// run stays normalized within 1e-9 with no negative entries.
TEST(Acceptance, Criterion2_NormalizationSuite) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioConfig cfg = sweep_config(0.6, false);
    const SimulationResult sim = simulate_scenario(cfg, 42, kThreads);
    const NonUserContactModel f = resolve_contact_model(cfg, &sim.empirical_f);

    std::uint64_t beliefs_checked = 0;
    double worst_sum_error = 0.0;
    double worst_entry = 0.0;
    FilterOptions options;
    options.threads = kThreads;
    options.observer = [&](const FilterState& fs, FilterPhase) {
        for (const Belief& b : fs.beliefs) {
            ++beliefs_checked;
            worst_sum_error = std::max(worst_sum_error, std::abs(b.sum() - 1.0));
            for (double v : b.p) worst_entry = std::min(worst_entry, v);
        }
    };
    run_filter(sim.log, cfg.params, cfg.prior, f, options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool pass = beliefs_checked > 300000 && worst_sum_error <= 1e-9 &&
                      worst_entry >= -1e-15 && seconds < 120.0;
    report(2, pass,
           "normalization over fig2 run: " + std::to_string(beliefs_checked) +
               " beliefs, worst |sum-1| " + std::to_string(worst_sum_error) + ", min entry " +
               std::to_string(worst_entry) + ", " + std::to_string(seconds) + " s");
}

// Mean I-sojourn over 1e5 episodes within 2% of 1/delta at delta = 0.25.
TEST(Acceptance, Criterion3_GeometricSojourn) {
    const double mean = sojourn_sampler_check(0.25, 100000, 424242);
    const bool pass = std::abs(mean - 4.0) <= 0.02 * 4.0;
    report(3, pass, "sojourn mean " + std::to_string(mean) + " vs 4.0 (2% tolerance)");
}

// Estimates sit at or above the truth for at least 85% of epidemic-window
// steps (per-step 5-seed means), for both infection kinds, across the
// user-fraction sweep.
TEST(Acceptance, Criterion4_OverestimationSweep) {
    bool pass = true;
    std::string detail;
    for (double c0 : {0.2, 0.6, 1.0}) {
        const OverestimationStats stats = overestimation_stats(cached_runs(c0, false));
        pass = pass && stats.window_I > 0 && stats.fraction_I >= 0.85 &&
               stats.fraction_Ia >= 0.85;
        detail += "c0=" + std::to_string(c0).substr(0, 3) + ": I " +
                  std::to_string(stats.fraction_I).substr(0, 5) + " Ia " +
                  std::to_string(stats.fraction_Ia).substr(0, 5) + " (window " +
                  std::to_string(stats.window_I) + ") ";
    }
    report(4, pass, "overestimation fractions " + detail);
}

// Symptomatic identification: window-mean TP fraction >= 0.85 and no user's
// MAP estimate is ever the asymptomatic compartment.
TEST(Acceptance, Criterion5_SymptomaticIdentification) {
    const auto& records = cached_runs(0.6, false);
    const double tp_fraction = mean_tp_fraction(records);
    int map_ia_total = 0;
    for (const RunRecord& record : records)
        for (const StepMetrics& m : record.steps) map_ia_total += m.tp_Ia + m.fp_Ia;
    const bool pass = tp_fraction >= 0.85 && map_ia_total == 0;
    report(5, pass,
           "mean TP fraction " + std::to_string(tp_fraction) + ", MAP-asymptomatic count " +
               std::to_string(map_ia_total));
}

// Belief-guided testing of 2% of users finds at least 3x the positives of
// uniform-random selection from the same symptomless pool (paired, windowed).
TEST(Acceptance, Criterion6_TestAllocation) {
    const auto& records = cached_runs(0.6, false);
    double guided = 0.0;
    double random_expected = 0.0;
    for (const RunRecord& record : records)
        for (const StepMetrics& m : record.steps) {
            if (m.user_true_I < 20) continue;  // epidemic window
            guided += m.positives;
            random_expected += m.random_expected_positives;
        }
    const bool pass = random_expected > 0.0 && guided >= 3.0 * random_expected;
    report(6, pass,
           "windowed positives: guided " + std::to_string(guided) + " vs random-expected " +
               std::to_string(random_expected));
}

// Degrading the report statistics must strictly lower the TP fraction and
// strictly raise the prevalence estimation error.
TEST(Acceptance, Criterion7_DegradationOrdering) {
    const auto& baseline = cached_runs(0.6, false);
    const auto& degraded = cached_runs(0.6, true);
    const double tp_base = mean_tp_fraction(baseline);
    const double tp_degraded = mean_tp_fraction(degraded);
    const double err_base = mean_abs_estimation_error(baseline);
    const double err_degraded = mean_abs_estimation_error(degraded);
    const bool pass = tp_degraded < tp_base && err_degraded > err_base;
    report(7, pass,
           "TP fraction " + std::to_string(tp_base) + " -> " + std::to_string(tp_degraded) +
               ", mean |est-true| " + std::to_string(err_base) + " -> " +
               std::to_string(err_degraded));
}

// The CLI reproduces byte-identical metrics for a fixed seed at any thread
// count.
TEST(Acceptance, Criterion8_Determinism) {
#ifndef BETIS_CLI_PATH
    report(8, false, "CLI path not configured");
#else
    const std::string cli = BETIS_CLI_PATH;
    const fs::path out_a = fresh_dir("det_a");
    const fs::path out_b = fresh_dir("det_b");
    const fs::path out_c = fresh_dir("det_c");
    const fs::path out_d = fresh_dir("det_d");
    auto run_cli = [&](const fs::path& out, int threads) {
        const std::string cmd = cli + " run --seed 42 --threads " + std::to_string(threads) +
                                " --out " + out.string() + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    bool pass = run_cli(out_a, 1) && run_cli(out_b, 1) && run_cli(out_c, 2) && run_cli(out_d, 5);
    if (pass) {
        const std::string reference = read_text_file(out_a / "run_seed42" / "metrics.csv");
        pass = reference == read_text_file(out_b / "run_seed42" / "metrics.csv") &&
               reference == read_text_file(out_c / "run_seed42" / "metrics.csv") &&
               reference == read_text_file(out_d / "run_seed42" / "metrics.csv");
    }
    report(8, pass, "run --seed 42: byte-identical metrics.csv across reruns and threads 1/2/5");
#endif
}

// Perfect-information reduction: with full app coverage, perfect reports and
// no look-alike disease, MAP identification of I is exact at every step.
TEST(Acceptance, Criterion9_PerfectInformationReduction) {
    ScenarioConfig cfg = parse_config(
        "n = 200\n"
        "c0 = 1\n"
        "horizon = 60\n"
        "early_stop = false\n"
        "p_fa = 0\n"
        "p_tp = 1\n"
        "vartheta = 0\n"
        "alpha = 0\n"
        "seeds = 1, 2, 3, 4, 5, 6\n",
        Preset::Desk);
    bool pass = true;
    int total_true = 0;
    for (std::uint64_t seed : cfg.seeds) {
        const RunRecord record = run_one(cfg, seed, kThreads, {});
        for (const StepMetrics& m : record.steps) {
            if (m.tp_I != m.user_true_I || m.fp_I != 0) pass = false;
            total_true += m.user_true_I;
        }
    }
    pass = pass && total_true > 0;
    report(9, pass,
           "MAP true-positive count equals the true I count at every step (" +
               std::to_string(total_true) + " infectious user-steps observed)");
}
