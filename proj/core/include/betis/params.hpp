#pragma once
// Epidemic model parameters: transition probabilities, report statistics,
// contact geometry and movement.

#include <stdexcept>
#include <string>

namespace betis {

struct EpidemicParams {
    double beta = 0.5;      // per-contact per-step infection probability
    double delta = 0.25;    // removal probability per step (also S_fa recovery)
    double gamma = 0.5;     // incubation exit probability per step
    double alpha = 0.1;     // asymptomatic branch probability on leaving E
    double vartheta = 0.05; // per-step probability that S contracts a look-alike disease
    double p_fa = 0.1;      // false-alarm probability of a symptom report
    double p_tp = 0.9;      // true-positive probability of a symptom report
    double d_inf = 0.007;   // contact radius in unit-square coordinates
    double p_move = 0.1;    // per-step relocation probability

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

inline void EpidemicParams::validate() const {
    auto check_prob = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(name) + " must be in [0,1], got " +
                                        std::to_string(v));
    };
    check_prob(beta, "beta");
    check_prob(delta, "delta");
    check_prob(gamma, "gamma");
    check_prob(alpha, "alpha");
    check_prob(vartheta, "vartheta");
    check_prob(p_fa, "p_fa");
    check_prob(p_tp, "p_tp");
    check_prob(p_move, "p_move");
    if (!(d_inf > 0.0))
        throw std::invalid_argument("d_inf must be > 0, got " + std::to_string(d_inf));
}

}  // namespace betis
