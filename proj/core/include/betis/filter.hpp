#pragma once
// Recursive Bayesian filter over the compartment chain, one marginal belief
// per user. Inputs are the observation log, the model parameters, the prior
// and the non-user contact model f(m) - nothing else. The filter deliberately
// has no dependency on the simulator's population state.
//
// Per step k: the measurement update conditions each belief on the user's
// report; the time update pushes each belief through the transition kernel,
// marginalizing the unknown count of infectious user-neighbors with a
// Poisson-binomial distribution and folding unobserved non-users into the
// hazard eps[k].

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "betis/compartment.hpp"
#include "betis/contact_model.hpp"
#include "betis/kernel.hpp"
#include "betis/params.hpp"
#include "betis/prior.hpp"
#include "betis/report.hpp"

namespace betis {

// Marginal posterior over the six compartments for one user.
struct Belief {
    std::array<double, kNumCompartments> p{};

    double operator[](Compartment c) const { return p[index_of(c)]; }
    double& operator[](Compartment c) { return p[index_of(c)]; }

    // Pr[I] + Pr[I_a]: the probability this user is contagious.
    double infectious_mass() const {
        return p[index_of(Compartment::I)] + p[index_of(Compartment::Ia)];
    }

    double sum() const {
        double s = 0.0;
        for (double v : p) s += v;
        return s;
    }

    // Flushes subnormal-range entries to zero, rejects entries below -1e-15,
    // clamps rounding negatives, and rescales to sum 1.
    void normalize();

    static Belief from_prior(const Prior& prior) {
        Belief b;
        b.p = prior.probabilities;
        return b;
    }
};

struct FilterState {
    std::vector<Belief> beliefs;  // one per user
    int time = 1;                 // step index k
    double p_inf = 0.0;           // mean-field prevalence over users
    double eps = 0.0;             // current non-user infection hazard eps[k]
    std::uint64_t degenerate_evidence_count = 0;

    int n_users() const { return static_cast<int>(beliefs.size()); }
};

// Bayes posterior of one belief given a report. Zero evidence (the report is
// impossible under the belief) leaves the belief unchanged and bumps
// *degenerate_count; this cannot happen when generator and filter share the
// report tables, but replayed external logs must be handled.
Belief measurement_update(const Belief& b, ReportSymbol r, double p_fa, double p_tp,
                          std::uint64_t* degenerate_count = nullptr);

// Probability that a user catches the infection from a non-user: contacts m
// distributed per f, each contact infected with the mean-field prevalence,
// each infected contact transmitting with beta.
//   eps = sum_m f(m) sum_l C(m,l) p_inf^l (1-p_inf)^(m-l) (1 - (1-beta)^l)
double nonuser_hazard(double p_inf, const NonUserContactModel& f, double beta);

// Arithmetic mean of the users' infectious masses.
double mean_field_prevalence(const FilterState& fs);

// All beliefs set to the prior at k = 1 (pre-measurement); p_inf and eps
// computed from the prior.
FilterState init_filter(int n_users, const Prior& prior, const NonUserContactModel& f,
                        const EpidemicParams& params);

// Measurement update for every user against frame reports, then p_inf and
// eps refreshed from the updated beliefs (this is eps[k] given M[k]).
void measurement_update_all(FilterState& fs, const ObservationFrame& frame,
                            const EpidemicParams& params, const NonUserContactModel& f,
                            int threads = 1);

// Synchronous time update k -> k+1: every user's belief is propagated against
// the frozen post-measurement beliefs at k, using the neighbor sets N_u,i[k]
// and the current eps; p_inf and eps are refreshed only after all users moved.
void time_update(FilterState& fs, const std::vector<std::vector<std::int32_t>>& user_neighbors,
                 const EpidemicParams& params, const NonUserContactModel& f, int threads = 1);

enum class FilterPhase { Initialized, PostMeasurement, PostTimeUpdate };

struct FilterOptions {
    int threads = 1;
    // Audit hook, called after initialization and after each update pass.
    std::function<void(const FilterState&, FilterPhase)> observer;
};

// init -> for k = 1..K: measurement update, record, time update.
// Returns the K recorded post-measurement states Pr[X_i[k] | M[k]].
std::vector<FilterState> run_filter(const ObservationLog& log, const EpidemicParams& params,
                                    const Prior& prior, const NonUserContactModel& f,
                                    const FilterOptions& options = {});

}  // namespace betis
