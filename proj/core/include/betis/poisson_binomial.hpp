#pragma once
// Exact pmf of a sum of independent, heterogeneous Bernoulli variables.

#include <span>
#include <vector>

namespace betis {

// Sequential convolution of Bernoulli(p_j) distributions, O(M^2).
// Returns pmf of size M+1; the empty product is the point mass at 0.
// Contact degrees at realistic densities are small, so the transform-based
// algorithms for large M are not needed here.
std::vector<double> poisson_binomial(std::span<const double> success_probs);

}  // namespace betis
