#pragma once
// Evaluation quantities derived from filter outputs: whole-population
// prevalence estimates, MAP identification with TP/FP counts, and allocation
// of a scarce test budget to likely asymptomatic cases.

#include <cstdint>
#include <span>
#include <vector>

#include "betis/compartment.hpp"
#include "betis/filter.hpp"
#include "betis/report.hpp"

namespace betis {

// Per-step prevalence bookkeeping for the symptomatic and asymptomatic pair.
struct PrevalenceSeries {
    std::vector<int> true_I;      // population count in I
    std::vector<int> true_Ia;     // population count in I_a
    std::vector<double> est_I;    // scaled-belief estimate of true_I
    std::vector<double> est_Ia;   // scaled-belief estimate of true_Ia
};

struct IdentificationCounts {
    int tp = 0;
    int fp = 0;
};

// (n_total / n_users) * sum_i belief_i(target): user beliefs scaled up to the
// whole population.
double prevalence_estimate(std::span<const Belief> beliefs, int n_total, Compartment target);

// Argmax of the belief; ties broken by the fixed compartment order
// (earliest wins).
Compartment map_estimate(const Belief& b);

// tp = #{truth == target and estimate == target},
// fp = #{truth != target and estimate == target}. Arrays cover users only.
IdentificationCounts classification_counts(std::span<const Compartment> estimates,
                                           std::span<const Compartment> truths,
                                           Compartment target);

// The n_test symptomless users (current report RepS) with the largest
// asymptomatic-infection mass, descending; ties go to the smaller id. Returns
// all eligible users when fewer than n_test qualify.
std::vector<int> select_for_testing(std::span<const Belief> beliefs,
                                    std::span<const ReportSymbol> current_reports, int n_test);

// Number of selected users whose true compartment is I_a (the test itself is
// taken as a perfect oracle on the selected set). count_exposed additionally
// counts E as positive.
int evaluate_tests(std::span<const int> selected, std::span<const Compartment> truths,
                   bool count_exposed = false);

// Expected positives when the same budget is spent uniformly at random on the
// same eligible pool: the hypergeometric mean n_sel * K / |pool|. The paired
// baseline for belief-guided selection.
double random_selection_expected_positives(std::span<const ReportSymbol> current_reports,
                                           std::span<const Compartment> truths, int n_test,
                                           bool count_exposed = false);

}  // namespace betis
