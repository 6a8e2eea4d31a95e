#pragma once
// Initial distribution of an individual's compartment at k = 1.

#include <array>
#include <cmath>
#include <stdexcept>

#include "betis/compartment.hpp"

namespace betis {

struct Prior {
    std::array<double, kNumCompartments> probabilities{};

    double operator[](Compartment c) const { return probabilities[index_of(c)]; }

    void validate() const {
        double sum = 0.0;
        for (double p : probabilities) {
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("prior entries must be probabilities");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("prior must sum to 1");
    }

    static Prior point_mass(Compartment c) {
        Prior prior;
        prior.probabilities[index_of(c)] = 1.0;
        return prior;
    }

    // Outbreak-onset prior: I with probability 0.01, I_a with 0.01*alpha,
    // otherwise S.
    static Prior initial_outbreak(double alpha) {
        Prior prior;
        prior.probabilities[index_of(Compartment::S)] = 0.99 - 0.01 * alpha;
        prior.probabilities[index_of(Compartment::I)] = 0.01;
        prior.probabilities[index_of(Compartment::Ia)] = 0.01 * alpha;
        return prior;
    }
};

}  // namespace betis
