#include "betis/poisson_binomial.hpp"

#include <stdexcept>

namespace betis {

std::vector<double> poisson_binomial(std::span<const double> success_probs) {
    std::vector<double> pmf(success_probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    std::size_t count = 0;
    for (double p : success_probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("poisson_binomial success probabilities must be in [0,1]");
        // in-place convolution with Bernoulli(p), scanning down to avoid reuse
        for (std::size_t m = count + 1; m-- > 0;) {
            pmf[m + 1] += pmf[m] * p;
            pmf[m] *= 1.0 - p;
        }
        ++count;
    }
    return pmf;
}

}  // namespace betis
