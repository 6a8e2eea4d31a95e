#include "betis/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betis/parallel.hpp"
#include "betis/poisson_binomial.hpp"

namespace betis {

void Belief::normalize() {
    double sum = 0.0;
    for (double& v : p) {
        if (v < 0.0) {
            if (v < -1e-15) throw std::logic_error("belief entry below -1e-15");
            v = 0.0;
        }
        if (v < 1e-300) v = 0.0;  // flush denormal-range mass
        sum += v;
    }
    if (sum <= 0.0) throw std::logic_error("belief lost all probability mass");
    for (double& v : p) v /= sum;
}

Belief measurement_update(const Belief& b, ReportSymbol r, double p_fa, double p_tp,
                          std::uint64_t* degenerate_count) {
    Belief posterior;
    double evidence = 0.0;
    for (Compartment c : kAllCompartments) {
        const double mass = report_likelihood(r, c, p_fa, p_tp) * b[c];
        posterior[c] = mass;
        evidence += mass;
    }
    if (evidence <= 0.0) {
        if (degenerate_count) ++*degenerate_count;
        return b;  // keep the prior belief for this step
    }
    posterior.normalize();
    return posterior;
}

double nonuser_hazard(double p_inf, const NonUserContactModel& f, double beta) {
    if (p_inf <= 0.0) return 0.0;
    p_inf = std::min(p_inf, 1.0);  // mean of belief masses can round an ulp past 1
    double eps = 0.0;
    for (std::size_t m = 1; m < f.pmf.size(); ++m) {
        if (f.pmf[m] == 0.0) continue;
        // binomial(m, p_inf) over the number l of infected contacts
        double binom = std::pow(1.0 - p_inf, static_cast<double>(m));  // l = 0 term
        double eps_m = 0.0;
        for (std::size_t l = 1; l <= m; ++l) {
            if (p_inf < 1.0) {
                binom *= (static_cast<double>(m - l + 1) / static_cast<double>(l)) *
                         (p_inf / (1.0 - p_inf));
            } else {
                binom = (l == m) ? 1.0 : 0.0;
            }
            eps_m += binom * (1.0 - std::pow(1.0 - beta, static_cast<double>(l)));
        }
        eps += f.pmf[m] * eps_m;
    }
    return eps;
}

double mean_field_prevalence(const FilterState& fs) {
    if (fs.beliefs.empty()) return 0.0;
    double sum = 0.0;
    for (const Belief& b : fs.beliefs) sum += b.infectious_mass();
    return sum / static_cast<double>(fs.beliefs.size());
}

namespace {

void refresh_aggregates(FilterState& fs, const NonUserContactModel& f,
                        const EpidemicParams& params) {
    fs.p_inf = mean_field_prevalence(fs);
    fs.eps = nonuser_hazard(fs.p_inf, f, params.beta);
}

}  // namespace

FilterState init_filter(int n_users, const Prior& prior, const NonUserContactModel& f,
                        const EpidemicParams& params) {
    if (n_users < 1) throw std::invalid_argument("filter requires n_users >= 1");
    prior.validate();
    f.validate();
    FilterState fs;
    fs.beliefs.assign(n_users, Belief::from_prior(prior));
    fs.time = 1;
    refresh_aggregates(fs, f, params);
    return fs;
}

void measurement_update_all(FilterState& fs, const ObservationFrame& frame,
                            const EpidemicParams& params, const NonUserContactModel& f,
                            int threads) {
    if (frame.time != fs.time)
        throw std::invalid_argument("observation frame does not match the filter time");
    if (static_cast<int>(frame.reports.size()) != fs.n_users())
        throw std::invalid_argument("observation frame does not match n_users");

    std::vector<std::uint64_t> degenerate(fs.beliefs.size(), 0);
    parallel_for(fs.beliefs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            fs.beliefs[i] = measurement_update(fs.beliefs[i], frame.reports[i], params.p_fa,
                                               params.p_tp, &degenerate[i]);
    });
    for (std::uint64_t d : degenerate) fs.degenerate_evidence_count += d;

    refresh_aggregates(fs, f, params);
}

void time_update(FilterState& fs, const std::vector<std::vector<std::int32_t>>& user_neighbors,
                 const EpidemicParams& params, const NonUserContactModel& f, int threads) {
    const int n_users = fs.n_users();
    if (static_cast<int>(user_neighbors.size()) != n_users)
        throw std::invalid_argument("neighbor sets do not match n_users");
    // validate up front: a throw inside a worker thread would not propagate
    for (const auto& neighbors : user_neighbors)
        for (std::int32_t j : neighbors)
            if (j < 0 || j >= n_users)
                throw std::out_of_range("neighbor index outside the user range");

    const std::vector<Belief> frozen = fs.beliefs;  // synchronous semantics
    const double eps = fs.eps;

    parallel_for(frozen.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> neighbor_probs;
        for (std::size_t i = begin; i < end; ++i) {
            neighbor_probs.clear();
            for (std::int32_t j : user_neighbors[i])
                neighbor_probs.push_back(std::min(1.0, frozen[j].infectious_mass()));
            const std::vector<double> pmf = poisson_binomial(neighbor_probs);

            // The S and S_fa rows are affine in the infection probability q, so
            // the mixture over m collapses to the kernel at the pmf-averaged
            // survival E[(1-beta)^m].
            double survival = 0.0;
            for (std::size_t m = 0; m < pmf.size(); ++m)
                survival += pmf[m] * std::pow(1.0 - params.beta, static_cast<double>(m));
            const double q = 1.0 - survival * (1.0 - eps);

            Belief next;
            for (Compartment c : kAllCompartments) {
                const double mass = frozen[i][c];
                if (mass == 0.0) continue;
                const CompartmentDistribution row = transition_distribution_q(c, q, params);
                for (Compartment c2 : kAllCompartments) next[c2] += mass * row[index_of(c2)];
            }
            next.normalize();
            fs.beliefs[i] = next;
        }
    });

    fs.time += 1;
    refresh_aggregates(fs, f, params);
}

std::vector<FilterState> run_filter(const ObservationLog& log, const EpidemicParams& params,
                                    const Prior& prior, const NonUserContactModel& f,
                                    const FilterOptions& options) {
    params.validate();
    FilterState fs = init_filter(log.n_users, prior, f, params);
    if (options.observer) options.observer(fs, FilterPhase::Initialized);

    std::vector<FilterState> recorded;
    recorded.reserve(log.horizon());
    for (int k = 1; k <= log.horizon(); ++k) {
        const ObservationFrame& frame = log.frame(k);
        measurement_update_all(fs, frame, params, f, options.threads);
        if (options.observer) options.observer(fs, FilterPhase::PostMeasurement);
        recorded.push_back(fs);
        if (k < log.horizon()) {
            time_update(fs, frame.user_neighbors, params, f, options.threads);
            if (options.observer) options.observer(fs, FilterPhase::PostTimeUpdate);
        }
    }
    return recorded;
}

}  // namespace betis
