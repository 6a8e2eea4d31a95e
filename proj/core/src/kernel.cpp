#include "betis/kernel.hpp"

#include <cmath>

namespace betis {

std::optional<Compartment> compartment_from_string(std::string_view s) {
    for (Compartment c : kAllCompartments)
        if (to_string(c) == s) return c;
    return std::nullopt;
}

double infection_probability(int m, double beta) {
    if (m <= 0) return 0.0;
    return 1.0 - std::pow(1.0 - beta, static_cast<double>(m));
}

CompartmentDistribution transition_distribution_q(Compartment c, double q,
                                                  const EpidemicParams& params) {
    CompartmentDistribution row{};
    switch (c) {
        case Compartment::S:
            row[index_of(Compartment::E)] = q;
            row[index_of(Compartment::Sfa)] = (1.0 - q) * params.vartheta;
            row[index_of(Compartment::S)] = (1.0 - q) * (1.0 - params.vartheta);
            break;
        case Compartment::Sfa:
            row[index_of(Compartment::E)] = q;
            row[index_of(Compartment::S)] = (1.0 - q) * params.delta;
            row[index_of(Compartment::Sfa)] = (1.0 - q) * (1.0 - params.delta);
            break;
        case Compartment::E:
            row[index_of(Compartment::Ia)] = params.gamma * params.alpha;
            row[index_of(Compartment::I)] = params.gamma * (1.0 - params.alpha);
            row[index_of(Compartment::E)] = 1.0 - params.gamma;
            break;
        case Compartment::I:
            row[index_of(Compartment::R)] = params.delta;
            row[index_of(Compartment::I)] = 1.0 - params.delta;
            break;
        case Compartment::Ia:
            row[index_of(Compartment::R)] = params.delta;
            row[index_of(Compartment::Ia)] = 1.0 - params.delta;
            break;
        case Compartment::R:
            row[index_of(Compartment::R)] = 1.0;
            break;
    }
    return row;
}

CompartmentDistribution transition_distribution(Compartment c, int m, double eps,
                                                const EpidemicParams& params) {
    double q = 0.0;
    if (c == Compartment::S || c == Compartment::Sfa) {
        const double survival = std::pow(1.0 - params.beta, static_cast<double>(m));
        q = 1.0 - survival * (1.0 - eps);
    }
    return transition_distribution_q(c, q, params);
}

}  // namespace betis
