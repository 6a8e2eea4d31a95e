#pragma once
// End-to-end orchestration: simulate ground truth, build the observation
// stream, run the filter over it, score the results and write the run
// directory. Also the replay path, which rebuilds everything the filter
// needs from exported files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "betis/config.hpp"
#include "betis/filter.hpp"
#include "betis/metrics.hpp"
#include "betis/simulator.hpp"

namespace betis {

struct StepMetrics {
    int k = 0;
    int true_I = 0;   // population count in I
    int true_Ia = 0;  // population count in I_a
    double est_I = 0.0;
    double est_Ia = 0.0;
    int user_true_I = 0;  // users only, the reference for tp
    int user_true_Ia = 0;
    int tp_I = 0, fp_I = 0;
    int tp_Ia = 0, fp_Ia = 0;
    int n_tested = 0;
    int positives = 0;
    double random_expected_positives = 0.0;  // paired uniform-selection baseline
};

struct RunRecord {
    std::string config_hash;
    std::uint64_t seed = 0;
    int n = 0;
    int n_users = 0;
    int horizon_run = 0;  // frames actually produced (early stop may truncate)
    std::vector<StepMetrics> steps;
    NonUserContactModel f_used;
    std::uint64_t degenerate_evidence_count = 0;
    double wall_seconds = 0.0;
};

// Ground-truth side of one run. truth[k-1][i] is the state of individual i at
// step k; the log holds everything the app can see; the empirical contact
// model is measured from the full snapshots.
struct SimulationResult {
    ObservationLog log;
    std::vector<std::vector<Compartment>> truth;
    NonUserContactModel empirical_f;
    std::string full_contacts_csv;  // filled only when cfg.dump_contacts
};

SimulationResult simulate_scenario(const ScenarioConfig& cfg, std::uint64_t seed, int threads);

// Picks the contact model per cfg.f_source; empirical requires the measured
// model from the simulation (replay passes a file-loaded one instead).
NonUserContactModel resolve_contact_model(const ScenarioConfig& cfg,
                                          const NonUserContactModel* empirical);

// Scores filter states against the truth. Truth-dependent columns are zero
// when truth is null (replay without a truth file).
std::vector<StepMetrics> score_run(const ScenarioConfig& cfg, const ObservationLog& log,
                                   std::span<const FilterState> states,
                                   const std::vector<std::vector<Compartment>>* truth);

// One seed end to end. Writes the run directory when out_dir is nonempty;
// filter states are exposed through states_out when the caller needs them.
RunRecord run_one(const ScenarioConfig& cfg, std::uint64_t seed, int threads,
                  const std::filesystem::path& out_dir,
                  std::vector<FilterState>* states_out = nullptr);

// All configured seeds; writes <cfg.out_dir>/run_seed<seed>/ directories.
std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg, int threads);

// Simulation only: writes the observation stream files (plus truth.csv) that
// the filter replay consumes.
void simulate_to_files(const ScenarioConfig& cfg, std::uint64_t seed, int threads,
                       const std::filesystem::path& out_dir);

// Replay: runs the filter from exported files alone and writes metrics.csv,
// beliefs.csv and summary.json to out_dir. Reads truth.csv when present.
RunRecord replay_filter_from_files(const ScenarioConfig& cfg,
                                   const std::filesystem::path& in_dir, int threads,
                                   const std::filesystem::path& out_dir);

std::string metrics_to_csv(std::span<const StepMetrics> steps);
std::string summary_to_json(const ScenarioConfig& cfg, const RunRecord& record);

// <out>/run_seed<seed>
std::filesystem::path run_directory(const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace betis
