// Command-line front end: simulate ground truth, replay the filter over
// exported observation streams, run the pipeline end to end, or execute one
// of the named experiment suites.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "betis/config.hpp"
#include "betis/harness.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string preset = "desk";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool dump_beliefs = false;
    bool dump_contacts = false;
};

void add_common_flags(CLI::App& cmd, CommonArgs& args) {
    cmd.add_option("--config", args.config_path, "scenario config file (key = value lines)");
    cmd.add_option("--out", args.out_dir, "output directory");
    cmd.add_option("--seed", args.seed, "single master seed (overrides the config seed list)");
    cmd.add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd.add_option("--preset", args.preset, "population preset: desk (N=2,000) or paper (N=10,000)")
        ->check(CLI::IsMember({"desk", "paper"}));
}

betis::ScenarioConfig build_config(const CommonArgs& args) {
    const betis::Preset preset =
        args.preset == "paper" ? betis::Preset::Paper : betis::Preset::Desk;
    betis::ScenarioConfig cfg = args.config_path.empty()
                                    ? betis::ScenarioConfig::preset_defaults(preset)
                                    : betis::load_config(args.config_path, preset);
    if (args.seed) cfg.seeds = {*args.seed};
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.dump_beliefs) cfg.dump_beliefs = true;
    if (args.dump_contacts) cfg.dump_contacts = true;
    return cfg;
}

void print_record(const betis::RunRecord& record, const std::filesystem::path& dir) {
    std::cout << "seed " << record.seed << ": " << record.horizon_run << " steps, peak true I ";
    int peak = 0;
    for (const auto& m : record.steps) peak = std::max(peak, m.true_I);
    std::cout << peak << ", " << record.wall_seconds << " s";
    if (!dir.empty()) std::cout << " -> " << dir.string();
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BETIS: stochastic epidemic simulator and Bayesian infection-state filter"};
    app.require_subcommand(1);

    CommonArgs run_args, sim_args, filter_args, suite_args;
    std::string filter_in_dir;
    std::string suite_name;

    CLI::App* run_cmd = app.add_subcommand("run", "simulate, filter and score end to end");
    add_common_flags(*run_cmd, run_args);
    run_cmd->add_flag("--dump-beliefs", run_args.dump_beliefs, "also write beliefs.csv");
    run_cmd->add_flag("--dump-contacts", run_args.dump_contacts, "also write contacts_full.csv");

    CLI::App* sim_cmd = app.add_subcommand("simulate", "write ground truth and observation stream only");
    add_common_flags(*sim_cmd, sim_args);
    sim_cmd->add_flag("--dump-contacts", sim_args.dump_contacts, "also write contacts_full.csv");

    CLI::App* filter_cmd =
        app.add_subcommand("filter", "replay the filter over an exported observation stream");
    add_common_flags(*filter_cmd, filter_args);
    filter_cmd->add_option("--in", filter_in_dir, "directory with observations.ndjson and contacts_users.csv")
        ->required();

    CLI::App* suite_cmd = app.add_subcommand("suite", "run a named experiment family");
    suite_cmd->add_option("name", suite_name,
                          "fig1 | fig2 | fig3 | fig1_limits | fig2_limits | fig3_limits")
        ->required();
    add_common_flags(*suite_cmd, suite_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const betis::ScenarioConfig cfg = build_config(run_args);
            for (std::uint64_t seed : cfg.seeds) {
                const auto dir = betis::run_directory(cfg.out_dir, seed);
                const betis::RunRecord record = betis::run_one(cfg, seed, run_args.threads, dir);
                print_record(record, dir);
            }
        } else if (sim_cmd->parsed()) {
            const betis::ScenarioConfig cfg = build_config(sim_args);
            for (std::uint64_t seed : cfg.seeds) {
                const auto dir = betis::run_directory(cfg.out_dir, seed);
                betis::simulate_to_files(cfg, seed, sim_args.threads, dir);
                std::cout << "seed " << seed << ": observation stream -> " << dir.string() << '\n';
            }
        } else if (filter_cmd->parsed()) {
            betis::ScenarioConfig cfg = build_config(filter_args);
            const std::filesystem::path in_dir = filter_in_dir;
            const std::filesystem::path out =
                filter_args.out_dir.empty() ? in_dir / "replay" : std::filesystem::path(filter_args.out_dir);
            const betis::RunRecord record =
                betis::replay_filter_from_files(cfg, in_dir, filter_args.threads, out);
            print_record(record, out);
        } else if (suite_cmd->parsed()) {
            betis::ScenarioConfig base = build_config(suite_args);
            const std::filesystem::path suite_root =
                suite_args.out_dir.empty() ? std::filesystem::path(base.out_dir) / suite_name
                                           : std::filesystem::path(suite_args.out_dir);
            for (auto& [label, cfg] : betis::scenario_suite(suite_name, base)) {
                std::cout << "[" << suite_name << "] " << label << '\n';
                betis::ScenarioConfig scenario = cfg;
                scenario.out_dir = (suite_root / label).string();
                for (std::uint64_t seed : scenario.seeds) {
                    const auto dir = betis::run_directory(scenario.out_dir, seed);
                    const betis::RunRecord record =
                        betis::run_one(scenario, seed, suite_args.threads, dir);
                    print_record(record, dir);
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
