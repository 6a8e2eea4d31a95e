#include "betis/simulator.hpp"

#include <stdexcept>

#include "betis/parallel.hpp"

namespace betis {

Compartment sample_compartment(const CompartmentDistribution& dist, Rng& rng) {
    const double u = rng.uniform01();
    double cumulative = 0.0;
    for (Compartment c : kAllCompartments) {
        cumulative += dist[index_of(c)];
        if (u < cumulative) return c;
    }
    // u landed in the rounding slack at the top of the cumulative sum
    return Compartment::R;
}

PopulationState sample_initial_states(int n, int n_users, const Prior& prior,
                                      std::uint64_t master_seed) {
    prior.validate();
    if (n < 1) throw std::invalid_argument("population size must be >= 1");
    if (n_users < 0 || n_users > n) throw std::invalid_argument("n_users must be in [0, n]");
    PopulationState pop;
    pop.states.resize(n);
    pop.n_users = n_users;
    pop.time = 1;
    CompartmentDistribution dist{};
    for (Compartment c : kAllCompartments) dist[index_of(c)] = prior[c];
    for (int i = 0; i < n; ++i) {
        Rng rng = make_rng(master_seed, Stream::InitState, 0, i);
        pop.states[i] = sample_compartment(dist, rng);
    }
    return pop;
}

PopulationState step_population(const PopulationState& pop, const ContactSnapshot& contacts,
                                const EpidemicParams& params, std::uint64_t master_seed,
                                int threads) {
    if (static_cast<int>(contacts.size()) != pop.size() || contacts.n_users != pop.n_users)
        throw std::invalid_argument("contact snapshot does not match population dimensions");
    if (contacts.time != pop.time)
        throw std::invalid_argument("contact snapshot computed for a different time step");

    PopulationState next;
    next.states.resize(pop.size());
    next.n_users = pop.n_users;
    next.time = pop.time + 1;

    const int k = pop.time;
    parallel_for(pop.states.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            int infectious = 0;
            for (std::int32_t j : contacts.full_neighbors[i])
                if (is_infectious(pop.states[j])) ++infectious;
            const CompartmentDistribution row =
                transition_distribution(pop.states[i], infectious, 0.0, params);
            Rng rng = make_rng(master_seed, Stream::Transition, k, i);
            next.states[i] = sample_compartment(row, rng);
        }
    });
    return next;
}

double sojourn_sampler_check(double delta, int episodes, std::uint64_t master_seed) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("sojourn check requires delta in (0, 1]");
    if (episodes < 1) throw std::invalid_argument("sojourn check requires episodes >= 1");
    std::uint64_t total_steps = 0;
    for (int e = 0; e < episodes; ++e) {
        Rng rng = make_rng(master_seed, Stream::Sojourn, e, 0);
        int steps = 1;
        while (!rng.bernoulli(delta)) ++steps;
        total_steps += steps;
    }
    return static_cast<double>(total_steps) / static_cast<double>(episodes);
}

}  // namespace betis
