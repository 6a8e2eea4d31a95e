#include "betis/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace betis {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config field '" + key + "': expected a number, got '" +
                                    value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return static_cast<int>(v);
    } catch (...) {
        throw std::invalid_argument("config field '" + key + "': expected an integer, got '" +
                                    value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config field '" + key + "': expected a boolean, got '" + value +
                                "'");
}

std::vector<std::uint64_t> parse_seeds(const std::string& value) {
    std::vector<std::uint64_t> seeds;
    std::string token;
    std::istringstream in(value);
    while (std::getline(in, token, ',')) {
        std::istringstream parts(token);
        std::string piece;
        while (parts >> piece) {
            try {
                seeds.push_back(std::stoull(piece));
            } catch (...) {
                throw std::invalid_argument("config field 'seeds': expected unsigned integers, got '" +
                                            piece + "'");
            }
        }
    }
    if (seeds.empty()) throw std::invalid_argument("config field 'seeds': list is empty");
    return seeds;
}

}  // namespace

int ScenarioConfig::n_users() const {
    const double product = static_cast<double>(n) * c0;
    const double rounded = std::round(product);
    if (std::abs(product - rounded) > 1e-9) {
        std::cerr << "warning: n * c0 = " << product << " is not integral; rounding down\n";
        return static_cast<int>(std::floor(product));
    }
    return static_cast<int>(rounded);
}

double ScenarioConfig::effective_f_lambda() const {
    if (f_lambda >= 0.0) return f_lambda;
    return static_cast<double>(n - n_users()) * std::numbers::pi * params.d_inf * params.d_inf;
}

void ScenarioConfig::finalize() {
    if (n < 1) throw std::invalid_argument("config field 'n': must be >= 1");
    if (!(c0 >= 0.0 && c0 <= 1.0)) throw std::invalid_argument("config field 'c0': must be in [0,1]");
    if (horizon < 1) throw std::invalid_argument("config field 'horizon': must be >= 1");
    if (n_test < 0) throw std::invalid_argument("config field 'n_test': must be >= 0");
    if (seeds.empty()) throw std::invalid_argument("config field 'seeds': must be nonempty");
    if (!d_inf_explicit)
        params.d_inf = kReferenceContactRadius *
                       std::sqrt(static_cast<double>(kReferencePopulation) / n);
    if (!prior_explicit) prior = Prior::initial_outbreak(params.alpha);
    params.validate();  // messages already name the field
    prior.validate();
    if (n_users() < 1)
        throw std::invalid_argument("config field 'c0': scenario needs at least one app user");
    if (f_source == FSource::File && f_file.empty())
        throw std::invalid_argument("config field 'f_file': required when f_source = file");
}

ScenarioConfig ScenarioConfig::preset_defaults(Preset preset) {
    ScenarioConfig cfg;
    cfg.n = preset == Preset::Paper ? kReferencePopulation : 2000;
    cfg.finalize();
    return cfg;
}

ScenarioConfig parse_config(const std::string& text, Preset preset) {
    ScenarioConfig cfg;
    cfg.n = preset == Preset::Paper ? kReferencePopulation : 2000;

    std::array<double, kNumCompartments> prior_entries{};
    bool any_prior_key = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw std::invalid_argument("config field '" + key + "': missing value");

        if (key == "name") cfg.name = value;
        else if (key == "n") cfg.n = parse_int(key, value);
        else if (key == "c0") cfg.c0 = parse_double(key, value);
        else if (key == "horizon") cfg.horizon = parse_int(key, value);
        else if (key == "beta") cfg.params.beta = parse_double(key, value);
        else if (key == "delta") cfg.params.delta = parse_double(key, value);
        else if (key == "gamma") cfg.params.gamma = parse_double(key, value);
        else if (key == "alpha") cfg.params.alpha = parse_double(key, value);
        else if (key == "vartheta") cfg.params.vartheta = parse_double(key, value);
        else if (key == "p_fa") cfg.params.p_fa = parse_double(key, value);
        else if (key == "p_tp") cfg.params.p_tp = parse_double(key, value);
        else if (key == "d_inf") {
            cfg.params.d_inf = parse_double(key, value);
            cfg.d_inf_explicit = true;
        } else if (key == "p_move") cfg.params.p_move = parse_double(key, value);
        else if (key == "prior_s") { prior_entries[index_of(Compartment::S)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "prior_s_fa") { prior_entries[index_of(Compartment::Sfa)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "prior_e") { prior_entries[index_of(Compartment::E)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "prior_i") { prior_entries[index_of(Compartment::I)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "prior_i_a") { prior_entries[index_of(Compartment::Ia)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "prior_r") { prior_entries[index_of(Compartment::R)] = parse_double(key, value); any_prior_key = true; }
        else if (key == "f_source") {
            if (value == "empirical") cfg.f_source = FSource::Empirical;
            else if (value == "poisson") cfg.f_source = FSource::Poisson;
            else if (value == "file") cfg.f_source = FSource::File;
            else
                throw std::invalid_argument(
                    "config field 'f_source': expected empirical|poisson|file, got '" + value + "'");
        } else if (key == "f_lambda") cfg.f_lambda = parse_double(key, value);
        else if (key == "f_file") cfg.f_file = value;
        else if (key == "n_test") cfg.n_test = parse_int(key, value);
        else if (key == "test_count_exposed") cfg.test_count_exposed = parse_bool(key, value);
        else if (key == "seeds") cfg.seeds = parse_seeds(value);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "early_stop") cfg.early_stop = parse_bool(key, value);
        else if (key == "dump_beliefs") cfg.dump_beliefs = parse_bool(key, value);
        else if (key == "dump_contacts") cfg.dump_contacts = parse_bool(key, value);
        else throw std::invalid_argument("unknown config field '" + key + "'");
    }

    if (any_prior_key) {
        cfg.prior.probabilities = prior_entries;
        cfg.prior_explicit = true;
    }
    cfg.finalize();
    return cfg;
}

ScenarioConfig load_config(const std::string& path, Preset preset) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), preset);
}

std::string ScenarioConfig::canonical_text() const {
    std::ostringstream out;
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "name = " << name << "\n";
    out << "n = " << n << "\n";
    out << "c0 = " << num(c0) << "\n";
    out << "horizon = " << horizon << "\n";
    out << "beta = " << num(params.beta) << "\n";
    out << "delta = " << num(params.delta) << "\n";
    out << "gamma = " << num(params.gamma) << "\n";
    out << "alpha = " << num(params.alpha) << "\n";
    out << "vartheta = " << num(params.vartheta) << "\n";
    out << "p_fa = " << num(params.p_fa) << "\n";
    out << "p_tp = " << num(params.p_tp) << "\n";
    out << "d_inf = " << num(params.d_inf) << "\n";
    out << "p_move = " << num(params.p_move) << "\n";
    out << "prior_s = " << num(prior[Compartment::S]) << "\n";
    out << "prior_s_fa = " << num(prior[Compartment::Sfa]) << "\n";
    out << "prior_e = " << num(prior[Compartment::E]) << "\n";
    out << "prior_i = " << num(prior[Compartment::I]) << "\n";
    out << "prior_i_a = " << num(prior[Compartment::Ia]) << "\n";
    out << "prior_r = " << num(prior[Compartment::R]) << "\n";
    out << "f_source = "
        << (f_source == FSource::Empirical ? "empirical"
                                           : f_source == FSource::Poisson ? "poisson" : "file")
        << "\n";
    if (f_source == FSource::Poisson) out << "f_lambda = " << num(effective_f_lambda()) << "\n";
    if (f_source == FSource::File) out << "f_file = " << f_file << "\n";
    out << "n_test = " << n_test << "\n";
    out << "test_count_exposed = " << (test_count_exposed ? "true" : "false") << "\n";
    out << "early_stop = " << (early_stop ? "true" : "false") << "\n";
    return out.str();
}

std::string ScenarioConfig::hash() const {
    // FNV-1a over the canonical text
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canonical_text()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::pair<std::string, ScenarioConfig>> scenario_suite(const std::string& suite_name,
                                                                   ScenarioConfig base) {
    const bool limits = suite_name.size() > 7 &&
                        suite_name.substr(suite_name.size() - 7) == "_limits";
    const std::string family = limits ? suite_name.substr(0, suite_name.size() - 7) : suite_name;
    if (family != "fig1" && family != "fig2" && family != "fig3")
        throw std::invalid_argument(
            "unknown suite '" + suite_name +
            "' (expected fig1, fig2, fig3, fig1_limits, fig2_limits or fig3_limits)");

    if (limits) {
        base.params.p_fa = 0.2;
        base.params.p_tp = 0.75;
    }

    std::vector<std::pair<std::string, ScenarioConfig>> batch;
    auto label_for = [](double c0) {
        std::ostringstream out;
        out << "c0_" << c0;
        return out.str();
    };
    if (family == "fig1") {
        for (double c0 : {0.2, 0.4, 0.6, 0.8, 1.0}) {
            ScenarioConfig cfg = base;
            cfg.c0 = c0;
            cfg.name = suite_name + "_" + label_for(c0);
            cfg.finalize();
            batch.emplace_back(label_for(c0), std::move(cfg));
        }
    } else if (family == "fig2") {
        ScenarioConfig cfg = base;
        cfg.c0 = 0.6;
        cfg.name = suite_name;
        cfg.finalize();
        batch.emplace_back(label_for(0.6), std::move(cfg));
    } else {
        for (int n_test : {25, 50, 100}) {
            ScenarioConfig cfg = base;
            cfg.c0 = 0.6;
            cfg.n_test = n_test;
            cfg.name = suite_name + "_n_test_" + std::to_string(n_test);
            cfg.finalize();
            batch.emplace_back("n_test_" + std::to_string(n_test), std::move(cfg));
        }
    }
    return batch;
}

}  // namespace betis
