#pragma once
// App-visible measurement stream: self-report symbols and the user-restricted
// neighborhoods. This header is the whole world as far as the filter is
// concerned; nothing here references true states or non-users.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "betis/compartment.hpp"

namespace betis {

enum class ReportSymbol : std::uint8_t {
    RepS = 0,    // no symptoms
    RepSfa = 1,  // symptoms classified as another disease
    RepI = 2,    // symptoms classified as COVID
};

inline constexpr int kNumReportSymbols = 3;

constexpr std::string_view to_string(ReportSymbol r) {
    switch (r) {
        case ReportSymbol::RepS: return "S";
        case ReportSymbol::RepSfa: return "S_fa";
        case ReportSymbol::RepI: return "I";
    }
    return "?";
}

std::optional<ReportSymbol> report_symbol_from_string(std::string_view s);

// Pr[report = r | state = c]. Symptomless states (S, E, I_a, R) always report
// healthy; S_fa reports COVID with probability p_fa, I with probability p_tp.
double report_likelihood(ReportSymbol r, Compartment c, double p_fa, double p_tp);

// One frame per time step: a report for every user plus the user-restricted
// neighbor sets N_u,i[k].
struct ObservationFrame {
    int time = 0;
    std::vector<ReportSymbol> reports;
    std::vector<std::vector<std::int32_t>> user_neighbors;
};

// Append-only measurement set M[k]: frames for k = 1..size().
struct ObservationLog {
    int n_users = 0;
    std::vector<ObservationFrame> frames;

    int horizon() const { return static_cast<int>(frames.size()); }
    int next_time() const { return horizon() + 1; }

    const ObservationFrame& frame(int k) const {
        if (k < 1 || k > horizon()) throw std::out_of_range("observation frame out of range");
        return frames[k - 1];
    }

    void append(ObservationFrame frame) {
        if (frame.time != next_time())
            throw std::invalid_argument("observation frames must be appended in time order");
        if (static_cast<int>(frame.reports.size()) != n_users ||
            static_cast<int>(frame.user_neighbors.size()) != n_users)
            throw std::invalid_argument("observation frame size does not match n_users");
        frames.push_back(std::move(frame));
    }
};

}  // namespace betis
