#include "betis/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace betis {

double prevalence_estimate(std::span<const Belief> beliefs, int n_total, Compartment target) {
    if (beliefs.empty()) throw std::invalid_argument("prevalence_estimate requires beliefs");
    double sum = 0.0;
    for (const Belief& b : beliefs) sum += b[target];
    return sum * static_cast<double>(n_total) / static_cast<double>(beliefs.size());
}

Compartment map_estimate(const Belief& b) {
    Compartment best = Compartment::S;
    double best_mass = b[Compartment::S];
    for (Compartment c : kAllCompartments) {
        if (b[c] > best_mass) {
            best = c;
            best_mass = b[c];
        }
    }
    return best;
}

IdentificationCounts classification_counts(std::span<const Compartment> estimates,
                                           std::span<const Compartment> truths,
                                           Compartment target) {
    if (estimates.size() != truths.size())
        throw std::invalid_argument("classification_counts requires equal-length arrays");
    IdentificationCounts counts;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (estimates[i] != target) continue;
        if (truths[i] == target)
            ++counts.tp;
        else
            ++counts.fp;
    }
    return counts;
}

std::vector<int> select_for_testing(std::span<const Belief> beliefs,
                                    std::span<const ReportSymbol> current_reports, int n_test) {
    if (beliefs.size() != current_reports.size())
        throw std::invalid_argument("select_for_testing requires one report per belief");
    if (n_test < 0) throw std::invalid_argument("n_test must be >= 0");

    std::vector<int> eligible;
    for (std::size_t i = 0; i < beliefs.size(); ++i)
        if (current_reports[i] == ReportSymbol::RepS) eligible.push_back(static_cast<int>(i));

    std::sort(eligible.begin(), eligible.end(), [&](int a, int b) {
        const double ma = beliefs[a][Compartment::Ia];
        const double mb = beliefs[b][Compartment::Ia];
        if (ma != mb) return ma > mb;
        return a < b;
    });
    if (static_cast<int>(eligible.size()) > n_test) eligible.resize(n_test);
    return eligible;
}

int evaluate_tests(std::span<const int> selected, std::span<const Compartment> truths,
                   bool count_exposed) {
    int positives = 0;
    for (int id : selected) {
        if (id < 0 || id >= static_cast<int>(truths.size()))
            throw std::out_of_range("selected user id outside the population");
        if (truths[id] == Compartment::Ia || (count_exposed && truths[id] == Compartment::E))
            ++positives;
    }
    return positives;
}

double random_selection_expected_positives(std::span<const ReportSymbol> current_reports,
                                           std::span<const Compartment> truths, int n_test,
                                           bool count_exposed) {
    if (current_reports.size() != truths.size())
        throw std::invalid_argument("reports and truths must cover the same users");
    int pool = 0;
    int pool_positives = 0;
    for (std::size_t i = 0; i < current_reports.size(); ++i) {
        if (current_reports[i] != ReportSymbol::RepS) continue;
        ++pool;
        if (truths[i] == Compartment::Ia || (count_exposed && truths[i] == Compartment::E))
            ++pool_positives;
    }
    if (pool == 0) return 0.0;
    const int drawn = std::min(n_test, pool);
    return static_cast<double>(drawn) * static_cast<double>(pool_positives) /
           static_cast<double>(pool);
}

}  // namespace betis
