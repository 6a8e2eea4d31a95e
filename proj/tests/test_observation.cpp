#include "betis/observe.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace betis;

TEST(ReportLikelihood, TableValues) {
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepS, Compartment::E, 0.1, 0.9), 1.0);
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepI, Compartment::Sfa, 0.1, 0.9), 0.1);
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepI, Compartment::I, 0.1, 0.9), 0.9);
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepI, Compartment::S, 0.1, 0.9), 0.0);
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepSfa, Compartment::I, 0.1, 0.9), 0.1);
    EXPECT_DOUBLE_EQ(report_likelihood(ReportSymbol::RepS, Compartment::R, 0.2, 0.75), 1.0);
}

TEST(ReportLikelihood, RowsSumToOneExactly) {
    for (double p_fa : {0.0, 0.1, 0.2, 1.0})
        for (double p_tp : {0.0, 0.75, 0.9, 1.0})
            for (Compartment c : kAllCompartments) {
                double sum = 0.0;
                for (ReportSymbol r :
                     {ReportSymbol::RepS, ReportSymbol::RepSfa, ReportSymbol::RepI})
                    sum += report_likelihood(r, c, p_fa, p_tp);
                EXPECT_DOUBLE_EQ(sum, 1.0) << to_string(c);
            }
}

TEST(GenerateReport, SymptomlessAlwaysReportHealthy) {
    Rng rng(42);
    for (int i = 0; i < 1000; ++i)
        EXPECT_EQ(generate_report(Compartment::R, 0.1, 0.9, rng), ReportSymbol::RepS);
}

TEST(GenerateReport, FrequenciesMatchTables) {
    const int n = 100000;
    struct Case {
        Compartment c;
        double p_fa, p_tp;
        double expect_rep_i;
    };
    for (const Case& tc : {Case{Compartment::I, 0.1, 0.9, 0.9},
                           Case{Compartment::Sfa, 0.2, 0.9, 0.2}}) {
        Rng rng(7 + index_of(tc.c));
        int rep_i = 0;
        for (int i = 0; i < n; ++i)
            if (generate_report(tc.c, tc.p_fa, tc.p_tp, rng) == ReportSymbol::RepI) ++rep_i;
        const double freq = static_cast<double>(rep_i) / n;
        EXPECT_NEAR(freq, tc.expect_rep_i, 0.01);
    }
    // per-symbol check within 3 standard errors for every compartment
    for (Compartment c : kAllCompartments) {
        std::array<int, kNumReportSymbols> counts{};
        Rng rng(100 + index_of(c));
        for (int i = 0; i < n; ++i)
            ++counts[static_cast<int>(generate_report(c, 0.1, 0.9, rng))];
        for (ReportSymbol r : {ReportSymbol::RepS, ReportSymbol::RepSfa, ReportSymbol::RepI}) {
            const double p = report_likelihood(r, c, 0.1, 0.9);
            const double se = std::sqrt(p * (1.0 - p) / n);
            EXPECT_NEAR(static_cast<double>(counts[static_cast<int>(r)]) / n, p, 3.0 * se + 1e-12)
                << to_string(c) << " reporting " << to_string(r);
        }
    }
}

TEST(ObserveStep, EmptyUserSetYieldsEmptyFrame) {
    PopulationState pop;
    pop.states.assign(4, Compartment::I);
    pop.n_users = 0;
    pop.time = 1;
    ContactSnapshot snap;
    snap.time = 1;
    snap.n_users = 0;
    snap.full_neighbors.resize(4);
    ObservationLog log;
    log.n_users = 0;
    observe_step(pop, snap, EpidemicParams{}, 5, log);
    ASSERT_EQ(log.horizon(), 1);
    EXPECT_TRUE(log.frame(1).reports.empty());
}

TEST(ObserveStep, AllSusceptibleUsersReportHealthy) {
    PopulationState pop;
    pop.states.assign(10, Compartment::S);
    pop.n_users = 10;
    pop.time = 1;
    ContactSnapshot snap;
    snap.time = 1;
    snap.n_users = 10;
    snap.full_neighbors.resize(10);
    snap.user_neighbors.resize(10);
    ObservationLog log;
    log.n_users = 10;
    observe_step(pop, snap, EpidemicParams{}, 5, log);
    for (ReportSymbol r : log.frame(1).reports) EXPECT_EQ(r, ReportSymbol::RepS);
}

TEST(ObserveStep, TimeMismatchIsFatal) {
    PopulationState pop;
    pop.states.assign(2, Compartment::S);
    pop.n_users = 2;
    pop.time = 2;
    ContactSnapshot snap;
    snap.time = 1;
    snap.n_users = 2;
    snap.full_neighbors.resize(2);
    snap.user_neighbors.resize(2);
    ObservationLog log;
    log.n_users = 2;
    EXPECT_THROW(observe_step(pop, snap, EpidemicParams{}, 5, log), std::invalid_argument);
}

TEST(ObserveStep, DeterministicReplay) {
    const EpidemicParams params;
    const int n = 60;
    auto run_once = [&](std::uint64_t seed) {
        PopulationState pop = sample_initial_states(n, 40, Prior::initial_outbreak(0.1), seed);
        std::vector<Location> locs = init_locations(n, seed);
        ObservationLog log;
        log.n_users = 40;
        for (int k = 1; k <= 10; ++k) {
            const ContactSnapshot snap = compute_contacts(locs, 0.05, 40, k);
            observe_step(pop, snap, params, seed, log);
            pop = step_population(pop, snap, params, seed);
            locs = move_step(locs, params.p_move, seed, k);
        }
        return log;
    };
    const ObservationLog a = run_once(31);
    const ObservationLog b = run_once(31);
    ASSERT_EQ(a.horizon(), b.horizon());
    for (int k = 1; k <= a.horizon(); ++k) {
        EXPECT_EQ(a.frame(k).reports, b.frame(k).reports);
        EXPECT_EQ(a.frame(k).user_neighbors, b.frame(k).user_neighbors);
    }
}

// Information barrier: the log never mentions a non-user index.
TEST(ObserveStep, LogNeverReferencesNonUsers) {
    const EpidemicParams params;
    const int n = 120;
    const int n_users = 50;
    PopulationState pop = sample_initial_states(n, n_users, Prior::initial_outbreak(0.1), 3);
    std::vector<Location> locs = init_locations(n, 3);
    ObservationLog log;
    log.n_users = n_users;
    for (int k = 1; k <= 15; ++k) {
        const ContactSnapshot snap = compute_contacts(locs, 0.1, n_users, k);
        observe_step(pop, snap, params, 3, log);
        pop = step_population(pop, snap, params, 3);
        locs = move_step(locs, params.p_move, 3, k);
    }
    for (const ObservationFrame& frame : log.frames)
        for (const auto& neighbors : frame.user_neighbors)
            for (std::int32_t j : neighbors) EXPECT_LT(j, n_users);
}

TEST(ReportSymbol, StringRoundTrip) {
    for (ReportSymbol r : {ReportSymbol::RepS, ReportSymbol::RepSfa, ReportSymbol::RepI}) {
        const auto parsed = report_symbol_from_string(to_string(r));
        ASSERT_TRUE(parsed.has_value());
        EXPECT_EQ(*parsed, r);
    }
    EXPECT_FALSE(report_symbol_from_string("R").has_value());
}
