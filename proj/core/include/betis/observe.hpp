#pragma once
// Generator side of the measurement stream: turns true user states into noisy
// self-reports and records the observable slice of each contact snapshot.

#include <cstdint>

#include "betis/report.hpp"
#include "betis/simulator.hpp"

namespace betis {

// Samples a report from report_likelihood(., c).
ReportSymbol generate_report(Compartment c, double p_fa, double p_tp, Rng& rng);

// Appends one frame to the log: a report for every user (stream (Report, k, i))
// and the user-restricted neighborhoods. Non-user states and full
// neighborhoods never reach the log.
void observe_step(const PopulationState& pop, const ContactSnapshot& contacts,
                  const EpidemicParams& params, std::uint64_t master_seed,
                  ObservationLog& log);

}  // namespace betis
