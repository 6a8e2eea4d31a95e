#include "betis/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace betis {

namespace {
using nlohmann::json;
}

std::string format_double(double v) {
    char buf[40];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string observations_to_ndjson(const ObservationLog& log) {
    std::ostringstream out;
    for (const ObservationFrame& frame : log.frames)
        for (int i = 0; i < log.n_users; ++i)
            out << "{\"k\":" << frame.time << ",\"i\":" << i << ",\"report\":\""
                << to_string(frame.reports[i]) << "\"}\n";
    return out.str();
}

std::string user_contacts_to_csv(const ObservationLog& log) {
    std::ostringstream out;
    out << "k,i,j\n";
    for (const ObservationFrame& frame : log.frames)
        for (int i = 0; i < log.n_users; ++i)
            for (std::int32_t j : frame.user_neighbors[i])
                if (i < j) out << frame.time << ',' << i << ',' << j << '\n';
    return out.str();
}

ObservationLog read_observation_stream(const std::filesystem::path& ndjson_path,
                                       const std::filesystem::path& contacts_csv_path,
                                       int n_users) {
    struct Record {
        int k;
        int i;
        ReportSymbol report;
    };
    std::vector<Record> records;
    int max_k = 0;
    int max_i = -1;
    {
        std::ifstream in(ndjson_path);
        if (!in) throw std::runtime_error("cannot open: " + ndjson_path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            Record rec;
            rec.k = j.at("k").get<int>();
            rec.i = j.at("i").get<int>();
            const auto symbol = report_symbol_from_string(j.at("report").get<std::string>());
            if (!symbol)
                throw std::runtime_error("bad report symbol in " + ndjson_path.string() + ": " + line);
            rec.report = *symbol;
            if (rec.k < 1 || rec.i < 0)
                throw std::runtime_error("bad record in " + ndjson_path.string() + ": " + line);
            max_k = std::max(max_k, rec.k);
            max_i = std::max(max_i, rec.i);
            records.push_back(rec);
        }
    }
    if (records.empty()) throw std::runtime_error("empty observation stream: " + ndjson_path.string());
    if (n_users < 0) n_users = max_i + 1;
    if (max_i >= n_users)
        throw std::runtime_error("observation stream references user ids beyond n_users");

    ObservationLog log;
    log.n_users = n_users;
    for (int k = 1; k <= max_k; ++k) {
        ObservationFrame frame;
        frame.time = k;
        frame.reports.assign(n_users, ReportSymbol::RepS);
        frame.user_neighbors.assign(n_users, {});
        log.frames.push_back(std::move(frame));
    }
    std::vector<std::vector<bool>> seen(max_k, std::vector<bool>(n_users, false));
    for (const Record& rec : records) {
        log.frames[rec.k - 1].reports[rec.i] = rec.report;
        seen[rec.k - 1][rec.i] = true;
    }
    for (int k = 0; k < max_k; ++k)
        for (int i = 0; i < n_users; ++i)
            if (!seen[k][i])
                throw std::runtime_error("observation stream is missing a report for user " +
                                         std::to_string(i) + " at k=" + std::to_string(k + 1));

    {
        std::ifstream in(contacts_csv_path);
        if (!in) throw std::runtime_error("cannot open: " + contacts_csv_path.string());
        std::string line;
        if (!std::getline(in, line) || line.rfind("k,i,j", 0) != 0)
            throw std::runtime_error("bad contacts csv header in " + contacts_csv_path.string());
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            int k, i, j;
            if (std::sscanf(line.c_str(), "%d,%d,%d", &k, &i, &j) != 3)
                throw std::runtime_error("bad contacts csv row: " + line);
            if (k < 1 || k > max_k || i < 0 || j < 0 || i >= n_users || j >= n_users || i == j)
                throw std::runtime_error("contacts csv row out of range: " + line);
            log.frames[k - 1].user_neighbors[i].push_back(j);
            log.frames[k - 1].user_neighbors[j].push_back(i);
        }
    }
    for (ObservationFrame& frame : log.frames)
        for (auto& neighbors : frame.user_neighbors) std::sort(neighbors.begin(), neighbors.end());
    return log;
}

std::string contact_model_to_json(const NonUserContactModel& f) {
    json j;
    j["pmf"] = f.pmf;
    return j.dump() + "\n";
}

NonUserContactModel contact_model_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    NonUserContactModel f;
    f.pmf = j.at("pmf").get<std::vector<double>>();
    f.validate();
    return f;
}

std::string truth_to_csv(const std::vector<std::vector<Compartment>>& states_per_step) {
    std::ostringstream out;
    out << "k,i,state\n";
    for (std::size_t step = 0; step < states_per_step.size(); ++step)
        for (std::size_t i = 0; i < states_per_step[step].size(); ++i)
            out << (step + 1) << ',' << i << ',' << to_string(states_per_step[step][i]) << '\n';
    return out.str();
}

std::vector<std::vector<Compartment>> truth_from_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("k,i,state", 0) != 0)
        throw std::runtime_error("bad truth csv header");
    std::vector<std::vector<Compartment>> steps;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("bad truth csv row: " + line);
        const int k = std::stoi(line.substr(0, c1));
        const int i = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
        const auto state = compartment_from_string(line.substr(c2 + 1));
        if (!state || k < 1 || i < 0) throw std::runtime_error("bad truth csv row: " + line);
        if (static_cast<int>(steps.size()) < k) steps.resize(k);
        if (static_cast<int>(steps[k - 1].size()) <= i) steps[k - 1].resize(i + 1, Compartment::S);
        steps[k - 1][i] = *state;
    }
    return steps;
}

std::string beliefs_to_csv(std::span<const FilterState> states) {
    std::ostringstream out;
    out << "k,i,P_S,P_Sfa,P_E,P_I,P_Ia,P_R\n";
    for (const FilterState& fs : states)
        for (int i = 0; i < fs.n_users(); ++i) {
            out << fs.time << ',' << i;
            for (Compartment c : kAllCompartments) out << ',' << format_double(fs.beliefs[i][c]);
            out << '\n';
        }
    return out.str();
}

}  // namespace betis
