#include "betis/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "betis/io.hpp"
#include "betis/observe.hpp"

namespace betis {

namespace {

using nlohmann::json;

// Incremental histogram of per-user non-user contact counts.
class ContactHistogram {
public:
    void add(const ContactSnapshot& snap) {
        for (int i = 0; i < snap.n_users; ++i) {
            const int m = snap.nonuser_contact_count(i);
            if (m >= static_cast<int>(counts_.size())) counts_.resize(m + 1, 0);
            ++counts_[m];
            ++total_;
        }
    }

    NonUserContactModel finalize() const {
        if (total_ == 0) throw std::runtime_error("no user contact samples collected");
        NonUserContactModel f;
        f.pmf.resize(counts_.empty() ? 1 : counts_.size(), 0.0);
        for (std::size_t m = 0; m < counts_.size(); ++m)
            f.pmf[m] = static_cast<double>(counts_[m]) / static_cast<double>(total_);
        return f;
    }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

}  // namespace

SimulationResult simulate_scenario(const ScenarioConfig& cfg, std::uint64_t seed, int threads) {
    const int n = cfg.n;
    const int n_users = cfg.n_users();

    SimulationResult result;
    result.log.n_users = n_users;

    std::ostringstream contact_dump;
    if (cfg.dump_contacts) contact_dump << "k,i,j\n";

    ContactHistogram histogram;
    PopulationState pop = sample_initial_states(n, n_users, cfg.prior, seed);
    std::vector<Location> locs = init_locations(n, seed);

    for (int k = 1; k <= cfg.horizon; ++k) {
        const ContactSnapshot contacts = compute_contacts(locs, cfg.params.d_inf, n_users, k, threads);
        observe_step(pop, contacts, cfg.params, seed, result.log);
        result.truth.push_back(pop.states);
        histogram.add(contacts);
        if (cfg.dump_contacts) {
            for (std::size_t i = 0; i < contacts.size(); ++i)
                for (std::int32_t j : contacts.full_neighbors[i])
                    if (static_cast<std::int32_t>(i) < j)
                        contact_dump << k << ',' << i << ',' << j << '\n';
        }
        if (cfg.early_stop && pop.epidemic_extinct()) break;
        if (k < cfg.horizon) {
            pop = step_population(pop, contacts, cfg.params, seed, threads);
            locs = move_step(locs, cfg.params.p_move, seed, k);
        }
    }

    result.empirical_f = histogram.finalize();
    if (cfg.dump_contacts) result.full_contacts_csv = contact_dump.str();
    return result;
}

NonUserContactModel resolve_contact_model(const ScenarioConfig& cfg,
                                          const NonUserContactModel* empirical) {
    switch (cfg.f_source) {
        case FSource::Empirical:
            if (!empirical)
                throw std::runtime_error(
                    "f_source = empirical requires a measured contact model "
                    "(replay needs f_model.json or f_source = poisson/file)");
            return *empirical;
        case FSource::Poisson:
            return NonUserContactModel::poisson(cfg.effective_f_lambda());
        case FSource::File:
            return contact_model_from_json(read_text_file(cfg.f_file));
    }
    throw std::logic_error("unreachable f_source");
}

std::vector<StepMetrics> score_run(const ScenarioConfig& cfg, const ObservationLog& log,
                                   std::span<const FilterState> states,
                                   const std::vector<std::vector<Compartment>>* truth) {
    if (truth && truth->size() != states.size())
        throw std::invalid_argument("truth and filter states cover different horizons");

    std::vector<StepMetrics> steps;
    steps.reserve(states.size());
    for (std::size_t idx = 0; idx < states.size(); ++idx) {
        const FilterState& fs = states[idx];
        const int k = static_cast<int>(idx) + 1;
        StepMetrics m;
        m.k = k;
        m.est_I = prevalence_estimate(fs.beliefs, cfg.n, Compartment::I);
        m.est_Ia = prevalence_estimate(fs.beliefs, cfg.n, Compartment::Ia);

        const std::vector<ReportSymbol>& reports = log.frame(k).reports;
        const std::vector<int> selected = select_for_testing(fs.beliefs, reports, cfg.n_test);
        m.n_tested = static_cast<int>(selected.size());

        if (truth) {
            const std::vector<Compartment>& all = (*truth)[idx];
            if (all.size() < fs.beliefs.size())
                throw std::invalid_argument("truth covers fewer individuals than there are users");
            std::span<const Compartment> users(all.data(), fs.beliefs.size());
            for (Compartment c : all) {
                if (c == Compartment::I) ++m.true_I;
                if (c == Compartment::Ia) ++m.true_Ia;
            }
            for (Compartment c : users) {
                if (c == Compartment::I) ++m.user_true_I;
                if (c == Compartment::Ia) ++m.user_true_Ia;
            }
            std::vector<Compartment> estimates(fs.beliefs.size());
            for (std::size_t i = 0; i < fs.beliefs.size(); ++i)
                estimates[i] = map_estimate(fs.beliefs[i]);
            const IdentificationCounts ci =
                classification_counts(estimates, users, Compartment::I);
            const IdentificationCounts cia =
                classification_counts(estimates, users, Compartment::Ia);
            m.tp_I = ci.tp;
            m.fp_I = ci.fp;
            m.tp_Ia = cia.tp;
            m.fp_Ia = cia.fp;
            m.positives = evaluate_tests(selected, users, cfg.test_count_exposed);
            m.random_expected_positives = random_selection_expected_positives(
                reports, users, cfg.n_test, cfg.test_count_exposed);
        }
        steps.push_back(m);
    }
    return steps;
}

std::string metrics_to_csv(std::span<const StepMetrics> steps) {
    std::ostringstream out;
    out << "k,true_I,est_I,true_Ia,est_Ia,tp_I,fp_I,tp_Ia,fp_Ia,n_tested,positives\n";
    for (const StepMetrics& m : steps)
        out << m.k << ',' << m.true_I << ',' << format_double(m.est_I) << ',' << m.true_Ia << ','
            << format_double(m.est_Ia) << ',' << m.tp_I << ',' << m.fp_I << ',' << m.tp_Ia << ','
            << m.fp_Ia << ',' << m.n_tested << ',' << m.positives << '\n';
    return out.str();
}

std::string summary_to_json(const ScenarioConfig& cfg, const RunRecord& record) {
    json j;
    j["name"] = cfg.name;
    j["config_hash"] = record.config_hash;
    j["seed"] = record.seed;
    j["n"] = record.n;
    j["n_users"] = record.n_users;
    j["horizon_run"] = record.horizon_run;
    j["degenerate_evidence_count"] = record.degenerate_evidence_count;
    j["wall_seconds"] = record.wall_seconds;

    int peak_true_I = 0;
    double peak_est_I = 0.0;
    double abs_err_I = 0.0;
    double abs_err_Ia = 0.0;
    std::int64_t total_positives = 0;
    double total_random_expected = 0.0;
    for (const StepMetrics& m : record.steps) {
        peak_true_I = std::max(peak_true_I, m.true_I);
        peak_est_I = std::max(peak_est_I, m.est_I);
        abs_err_I += std::abs(m.est_I - m.true_I);
        abs_err_Ia += std::abs(m.est_Ia - m.true_Ia);
        total_positives += m.positives;
        total_random_expected += m.random_expected_positives;
    }
    const double denom = record.steps.empty() ? 1.0 : static_cast<double>(record.steps.size());
    j["peak_true_I"] = peak_true_I;
    j["peak_est_I"] = peak_est_I;
    j["mean_abs_err_I"] = abs_err_I / denom;
    j["mean_abs_err_Ia"] = abs_err_Ia / denom;
    j["total_test_positives"] = total_positives;
    j["total_random_expected_positives"] = total_random_expected;
    return j.dump(2) + "\n";
}

std::filesystem::path run_directory(const std::filesystem::path& out_dir, std::uint64_t seed) {
    return out_dir / ("run_seed" + std::to_string(seed));
}

RunRecord run_one(const ScenarioConfig& cfg, std::uint64_t seed, int threads,
                  const std::filesystem::path& out_dir, std::vector<FilterState>* states_out) {
    const auto start = std::chrono::steady_clock::now();

    SimulationResult sim = simulate_scenario(cfg, seed, threads);
    const NonUserContactModel f = resolve_contact_model(cfg, &sim.empirical_f);

    FilterOptions options;
    options.threads = threads;
    const std::vector<FilterState> states = run_filter(sim.log, cfg.params, cfg.prior, f, options);

    RunRecord record;
    record.config_hash = cfg.hash();
    record.seed = seed;
    record.n = cfg.n;
    record.n_users = cfg.n_users();
    record.horizon_run = sim.log.horizon();
    record.steps = score_run(cfg, sim.log, states, &sim.truth);
    record.f_used = f;
    record.degenerate_evidence_count =
        states.empty() ? 0 : states.back().degenerate_evidence_count;
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(out_dir / "metrics.csv", metrics_to_csv(record.steps));
        write_text_file(out_dir / "observations.ndjson", observations_to_ndjson(sim.log));
        write_text_file(out_dir / "contacts_users.csv", user_contacts_to_csv(sim.log));
        write_text_file(out_dir / "f_model.json", contact_model_to_json(f));
        write_text_file(out_dir / "truth.csv", truth_to_csv(sim.truth));
        write_text_file(out_dir / "summary.json", summary_to_json(cfg, record));
        if (cfg.dump_beliefs) write_text_file(out_dir / "beliefs.csv", beliefs_to_csv(states));
        if (cfg.dump_contacts)
            write_text_file(out_dir / "contacts_full.csv", sim.full_contacts_csv);
    }
    if (states_out) *states_out = states;
    return record;
}

std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg, int threads) {
    std::vector<RunRecord> records;
    records.reserve(cfg.seeds.size());
    for (std::uint64_t seed : cfg.seeds)
        records.push_back(run_one(cfg, seed, threads, run_directory(cfg.out_dir, seed)));
    return records;
}

void simulate_to_files(const ScenarioConfig& cfg, std::uint64_t seed, int threads,
                       const std::filesystem::path& out_dir) {
    SimulationResult sim = simulate_scenario(cfg, seed, threads);
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir / "observations.ndjson", observations_to_ndjson(sim.log));
    write_text_file(out_dir / "contacts_users.csv", user_contacts_to_csv(sim.log));
    write_text_file(out_dir / "f_model.json", contact_model_to_json(sim.empirical_f));
    write_text_file(out_dir / "truth.csv", truth_to_csv(sim.truth));
    if (cfg.dump_contacts) write_text_file(out_dir / "contacts_full.csv", sim.full_contacts_csv);
}

RunRecord replay_filter_from_files(const ScenarioConfig& cfg,
                                   const std::filesystem::path& in_dir, int threads,
                                   const std::filesystem::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();

    const ObservationLog log = read_observation_stream(
        in_dir / "observations.ndjson", in_dir / "contacts_users.csv", cfg.n_users());

    NonUserContactModel f;
    if (cfg.f_source == FSource::Empirical) {
        const auto f_path = in_dir / "f_model.json";
        if (!std::filesystem::exists(f_path))
            throw std::runtime_error("replay with f_source = empirical needs " + f_path.string());
        f = contact_model_from_json(read_text_file(f_path));
    } else {
        f = resolve_contact_model(cfg, nullptr);
    }

    FilterOptions options;
    options.threads = threads;
    const std::vector<FilterState> states = run_filter(log, cfg.params, cfg.prior, f, options);

    std::optional<std::vector<std::vector<Compartment>>> truth;
    if (std::filesystem::exists(in_dir / "truth.csv"))
        truth = truth_from_csv(read_text_file(in_dir / "truth.csv"));

    RunRecord record;
    record.config_hash = cfg.hash();
    record.n = cfg.n;
    record.n_users = log.n_users;
    record.horizon_run = log.horizon();
    record.steps = score_run(cfg, log, states, truth ? &*truth : nullptr);
    record.f_used = f;
    record.degenerate_evidence_count =
        states.empty() ? 0 : states.back().degenerate_evidence_count;
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(out_dir / "metrics.csv", metrics_to_csv(record.steps));
        write_text_file(out_dir / "beliefs.csv", beliefs_to_csv(states));
        write_text_file(out_dir / "summary.json", summary_to_json(cfg, record));
    }
    return record;
}

}  // namespace betis
