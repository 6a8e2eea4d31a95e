#pragma once
// Scenario configuration: a flat key = value document with defaults for the
// standard outbreak setting, plus the named experiment suites.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "betis/params.hpp"
#include "betis/prior.hpp"

namespace betis {

enum class Preset { Desk, Paper };

enum class FSource { Empirical, Poisson, File };

// Contact radius calibrated for N = 10,000 on the unit square; other
// population sizes rescale it to keep the expected contact count constant.
inline constexpr double kReferenceContactRadius = 0.007;
inline constexpr int kReferencePopulation = 10000;

struct ScenarioConfig {
    std::string name = "scenario";
    int n = 2000;
    double c0 = 0.6;
    int horizon = 150;
    EpidemicParams params;
    bool d_inf_explicit = false;  // when false, d_inf is rescaled from the reference
    Prior prior;
    bool prior_explicit = false;
    FSource f_source = FSource::Empirical;
    double f_lambda = -1.0;  // < 0: computed as (n - n_users) * pi * d_inf^2
    std::string f_file;
    int n_test = 0;
    bool test_count_exposed = false;
    std::vector<std::uint64_t> seeds = {42, 43, 44, 45, 46};
    std::string out_dir = "out";
    bool early_stop = true;
    bool dump_beliefs = false;
    bool dump_contacts = false;

    // N_u = floor(n * c0); non-integral products round down with a warning.
    int n_users() const;

    // Poisson lambda actually used when f_source = poisson.
    double effective_f_lambda() const;

    // Fills derived fields (d_inf rescale, alpha-derived prior) and checks
    // ranges. Throws std::invalid_argument naming the offending field.
    void finalize();

    // Stable canonical serialization; also the basis of the config hash.
    std::string canonical_text() const;
    std::string hash() const;

    static ScenarioConfig preset_defaults(Preset preset);
};

// Parses a key = value document ('#' starts a comment). Unknown keys and
// out-of-range values are rejected with the field name in the message.
ScenarioConfig parse_config(const std::string& text, Preset preset);

// Reads and parses a config file; a missing path is an error, an empty file
// yields the preset defaults.
ScenarioConfig load_config(const std::string& path, Preset preset);

// Named experiment families as (label, config) batches derived from a base
// config: fig1 sweeps the user fraction, fig2 pins c0 = 0.6, fig3 sweeps the
// test budget; *_limits variants degrade the report statistics to
// p_fa = 0.2, p_tp = 0.75.
std::vector<std::pair<std::string, ScenarioConfig>> scenario_suite(const std::string& suite_name,
                                                                   ScenarioConfig base);

}  // namespace betis
