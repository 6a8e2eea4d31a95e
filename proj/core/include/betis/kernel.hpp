#pragma once
// One-step transition kernel of the hidden Markov epidemic model.
//
// The same rows drive both sides of the system: the ground-truth simulator
// evaluates them with the exact infectious-neighbor count and eps = 0, the
// filter with the count of infectious *user* neighbors and eps set to the
// current non-user infection hazard.

#include <array>

#include "betis/compartment.hpp"
#include "betis/params.hpp"

namespace betis {

using CompartmentDistribution = std::array<double, kNumCompartments>;

// Probability that a susceptible individual with m infectious neighbors
// is infected within one step: 1 - (1-beta)^m.
double infection_probability(int m, double beta);

// Row of the transition matrix for state c, given m infectious (user-)
// neighbors and the residual hazard eps of infection by unobserved non-users.
// The combined infection probability is q = 1 - (1-beta)^m * (1-eps).
//
// Rows:
//   S    -> {E: q,        S_fa: (1-q)*vartheta, S: (1-q)*(1-vartheta)}
//   S_fa -> {E: q,        S: (1-q)*delta,       S_fa: (1-q)*(1-delta)}
//   E    -> {I_a: gamma*alpha, I: gamma*(1-alpha), E: 1-gamma}
//   I    -> {R: delta,    I: 1-delta}
//   I_a  -> {R: delta,    I_a: 1-delta}
//   R    -> {R: 1}
//
// Infection preempts the vartheta / delta branches: those apply only to the
// (1-q) non-infected survivors, which keeps every row normalized.
CompartmentDistribution transition_distribution(Compartment c, int m, double eps,
                                                const EpidemicParams& params);

// Same rows, with the neighbor term already collapsed into
// q = 1 - survival * (1-eps) where survival = E[(1-beta)^m]. The rows are
// affine in q, so averaging the kernel over a distribution of m equals the
// kernel evaluated at the averaged q. The filter's time update relies on this.
CompartmentDistribution transition_distribution_q(Compartment c, double q,
                                                  const EpidemicParams& params);

}  // namespace betis
