#include "betis/observe.hpp"
#include "betis/report.hpp"

#include <stdexcept>

namespace betis {

std::optional<ReportSymbol> report_symbol_from_string(std::string_view s) {
    if (s == "S") return ReportSymbol::RepS;
    if (s == "S_fa") return ReportSymbol::RepSfa;
    if (s == "I") return ReportSymbol::RepI;
    return std::nullopt;
}

double report_likelihood(ReportSymbol r, Compartment c, double p_fa, double p_tp) {
    switch (c) {
        case Compartment::S:
        case Compartment::E:
        case Compartment::Ia:
        case Compartment::R:
            return r == ReportSymbol::RepS ? 1.0 : 0.0;
        case Compartment::Sfa:
            if (r == ReportSymbol::RepI) return p_fa;
            if (r == ReportSymbol::RepSfa) return 1.0 - p_fa;
            return 0.0;
        case Compartment::I:
            if (r == ReportSymbol::RepI) return p_tp;
            if (r == ReportSymbol::RepSfa) return 1.0 - p_tp;
            return 0.0;
    }
    return 0.0;
}

ReportSymbol generate_report(Compartment c, double p_fa, double p_tp, Rng& rng) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (ReportSymbol r : {ReportSymbol::RepS, ReportSymbol::RepSfa, ReportSymbol::RepI}) {
        cumulative += report_likelihood(r, c, p_fa, p_tp);
        if (u < cumulative) return r;
    }
    return ReportSymbol::RepI;
}

void observe_step(const PopulationState& pop, const ContactSnapshot& contacts,
                  const EpidemicParams& params, std::uint64_t master_seed,
                  ObservationLog& log) {
    if (pop.time != contacts.time)
        throw std::invalid_argument("population and contacts disagree on the time step");
    if (pop.n_users != log.n_users || pop.n_users != contacts.n_users)
        throw std::invalid_argument("population, contacts and log disagree on n_users");

    ObservationFrame frame;
    frame.time = pop.time;
    frame.reports.resize(pop.n_users);
    frame.user_neighbors.resize(pop.n_users);
    for (int i = 0; i < pop.n_users; ++i) {
        Rng rng = make_rng(master_seed, Stream::Report, pop.time, i);
        frame.reports[i] = generate_report(pop.states[i], params.p_fa, params.p_tp, rng);
        frame.user_neighbors[i] = contacts.user_neighbors[i];
    }
    log.append(std::move(frame));
}

}  // namespace betis
