#pragma once
// Health-state alphabet of the epidemic model.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace betis {

// The six compartments, in their fixed total order. The order is load-bearing:
// it defines iteration order, categorical sampling order and argmax tie-breaking.
enum class Compartment : std::uint8_t {
    S = 0,    // susceptible, healthy
    Sfa = 1,  // ill with a non-COVID disease showing similar symptoms
    E = 2,    // exposed: infected, not yet contagious
    I = 3,    // infectious, symptomatic
    Ia = 4,   // infectious, asymptomatic
    R = 5,    // removed (recovered / isolated / deceased), immune
};

inline constexpr int kNumCompartments = 6;

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments = {
    Compartment::S,   Compartment::Sfa, Compartment::E,
    Compartment::I,   Compartment::Ia,  Compartment::R,
};

constexpr int index_of(Compartment c) { return static_cast<int>(c); }

constexpr bool is_infectious(Compartment c) {
    return c == Compartment::I || c == Compartment::Ia;
}

constexpr std::string_view to_string(Compartment c) {
    switch (c) {
        case Compartment::S: return "S";
        case Compartment::Sfa: return "S_fa";
        case Compartment::E: return "E";
        case Compartment::I: return "I";
        case Compartment::Ia: return "I_a";
        case Compartment::R: return "R";
    }
    return "?";
}

std::optional<Compartment> compartment_from_string(std::string_view s);

}  // namespace betis
