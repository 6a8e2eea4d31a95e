#pragma once
// Distribution f(m) of a user's contacts with non-users. Measured from
// ground-truth snapshots, taken as Poisson, or loaded from a file; the filter
// only sees the finite pmf.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace betis {

struct NonUserContactModel {
    // pmf[m] = f(m), m = 0..m_max. Entries >= 0 and sum to 1 within 1e-12.
    std::vector<double> pmf;

    void validate() const {
        if (pmf.empty()) throw std::invalid_argument("contact model pmf is empty");
        double sum = 0.0;
        for (double p : pmf) {
            if (!(p >= 0.0)) throw std::invalid_argument("contact model pmf has a negative entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("contact model pmf does not sum to 1");
    }

    static NonUserContactModel degenerate_zero() { return {{1.0}}; }

    // Poisson(lambda) truncated at the 1 - 1e-9 quantile and renormalized.
    static NonUserContactModel poisson(double lambda);
};

}  // namespace betis
