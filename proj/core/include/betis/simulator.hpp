#pragma once
// Ground-truth Markov dynamics over the whole population. The simulator sees
// everything: full neighborhoods, users and non-users alike. It always runs
// the exact kernel (eps = 0).

#include <cstdint>
#include <vector>

#include "betis/compartment.hpp"
#include "betis/kernel.hpp"
#include "betis/mobility.hpp"
#include "betis/prior.hpp"

namespace betis {

struct PopulationState {
    std::vector<Compartment> states;  // one per individual
    int n_users = 0;                  // individuals [0, n_users) are app users
    int time = 1;                     // discrete step index k >= 1

    int size() const { return static_cast<int>(states.size()); }

    int count(Compartment c) const {
        int n = 0;
        for (Compartment s : states)
            if (s == c) ++n;
        return n;
    }

    int count_users(Compartment c) const {
        int n = 0;
        for (int i = 0; i < n_users; ++i)
            if (states[i] == c) ++n;
        return n;
    }

    bool epidemic_extinct() const {
        for (Compartment s : states)
            if (s == Compartment::E || is_infectious(s)) return false;
        return true;
    }
};

// Each individual's initial compartment drawn independently from the prior,
// stream (InitState, 0, i).
PopulationState sample_initial_states(int n, int n_users, const Prior& prior,
                                      std::uint64_t master_seed);

// Synchronous one-step update: every individual samples its next compartment
// from transition_distribution with the exact infectious count of its full
// neighborhood, all against the state frozen at pop.time. Per-individual
// draws come from stream (Transition, k, i).
PopulationState step_population(const PopulationState& pop, const ContactSnapshot& contacts,
                                const EpidemicParams& params, std::uint64_t master_seed,
                                int threads = 1);

// Samples `episodes` I -> R holding times and returns their mean, for
// comparison against 1/delta. Rejects delta = 0.
double sojourn_sampler_check(double delta, int episodes, std::uint64_t master_seed);

// Categorical draw from a compartment distribution, scanning in the fixed
// compartment order.
Compartment sample_compartment(const CompartmentDistribution& dist, Rng& rng);

}  // namespace betis
