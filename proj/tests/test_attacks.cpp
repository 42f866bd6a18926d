#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "usdqkd/attacks.hpp"
#include "usdqkd/security_region.hpp"
#include "usdqkd/usd_core.hpp"

using namespace usdqkd;

TEST_CASE("beamsplit report reference values") {
    BeamsplitReport r = beamsplit_report(MeanPhotonNumber(1.0), 0.5);
    CHECK(r.p_exp == doctest::Approx(0.393469340287367).epsilon(1e-12));
    CHECK(r.p_split == doctest::Approx(0.154818121746494).epsilon(1e-12));
    CHECK(r.g_bs == doctest::Approx(0.119325609270437).epsilon(1e-12));

    CHECK(beamsplit_report(MeanPhotonNumber(4.0), 0.05).g_bs ==
          doctest::Approx(0.00202756648372).epsilon(1e-11));
}

TEST_CASE("beamsplit limits") {
    BeamsplitReport lossless = beamsplit_report(MeanPhotonNumber(2.0), 1.0);
    CHECK(lossless.p_split == 0.0);  // nothing reaches the tap arm
    CHECK(lossless.g_bs == doctest::Approx(0.5 * lossless.p_exp).epsilon(1e-14));

    BeamsplitReport opaque = beamsplit_report(MeanPhotonNumber(2.0), 0.0);
    CHECK(opaque.p_exp == 0.0);
    CHECK(opaque.p_split == 0.0);
    CHECK(opaque.g_bs == 0.0);

    CHECK_THROWS_AS(beamsplit_report(MeanPhotonNumber(1.0), -0.1), std::domain_error);
    CHECK_THROWS_AS(beamsplit_report(MeanPhotonNumber(1.0), 1.2), std::domain_error);
}

TEST_CASE("surviving gain identity") {
    for (double mu : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double eta : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            BeamsplitReport r = beamsplit_report(MeanPhotonNumber(mu), eta);
            CHECK(std::fabs(r.g_bs - 0.5 * (r.p_exp - r.p_split)) < 1e-12);
            CHECK(r.p_split <= r.p_exp);
        }
    }
}

TEST_CASE("gain is maximal near mu of order one") {
    // Coarse scan; the optimum of g_bs over mu sits between 0.5 and 3.
    double eta = 0.5;
    double best_mu = 0.0;
    double best = -1.0;
    for (int i = 1; i <= 400; ++i) {
        double mu = 0.025 * i;
        double g = beamsplit_report(MeanPhotonNumber(mu), eta).g_bs;
        if (g > best) {
            best = g;
            best_mu = mu;
        }
    }
    CHECK(best_mu > 0.5);
    CHECK(best_mu < 3.0);
}

TEST_CASE("two-photon split probabilities") {
    TwoPhotonSplit half = two_photon_split(0.5);
    CHECK(half.p_bob0 == 0.25);
    CHECK(half.p_bob1 == 0.5);
    CHECK(half.p_bob2 == 0.25);
    for (double eta : {0.0, 0.1, 0.37, 0.8, 1.0}) {
        TwoPhotonSplit s = two_photon_split(eta);
        CHECK(std::fabs(s.p_bob0 + s.p_bob1 + s.p_bob2 - 1.0) < 1e-14);
        CHECK(s.p_bob2 == doctest::Approx(eta * eta).epsilon(1e-14));
    }
    CHECK_THROWS_AS(two_photon_split(-0.01), std::domain_error);
}

TEST_CASE("leading orders at small mean photon number") {
    double mu = 1e-2;
    BeamsplitReport r = beamsplit_report(MeanPhotonNumber(mu), 0.5);
    CHECK(r.p_split / (mu * mu) == doctest::Approx(0.25).epsilon(0.02));
    double p_d = usd_probability(MeanPhotonNumber(mu), SourceModel::PhaseAveragedFock).value();
    CHECK(p_d / (mu * mu * mu) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("comparison at the insecurity showcase point") {
    AttackComparison c =
        compare_attacks(MeanPhotonNumber(4.0), ChannelParams(0.1), DetectorParams(0.5));
    // The beamsplit part sees the full system transmission eta_L * eta_B.
    BeamsplitReport direct = beamsplit_report(MeanPhotonNumber(4.0), 0.05);
    CHECK(c.beamsplit.p_exp == direct.p_exp);
    CHECK(c.beamsplit.g_bs == direct.g_bs);
    CHECK(c.beamsplit.g_bs > 0.0);
    CHECK(c.usd_verdict.verdict == Verdict::InsecureUnderUSD);
    CHECK(c.usd_p_d.value() == doctest::Approx(0.489001755145113).epsilon(1e-12));
    REQUIRE(c.crossover_eta.has_value());
    CHECK(*c.crossover_eta == doctest::Approx(0.1758490).epsilon(1e-4));
    // The crossover is a genuine verdict flip.
    CHECK(classify(MeanPhotonNumber(4.0), ChannelParams(*c.crossover_eta + 1e-4),
                   DetectorParams(0.5), CriteriaMode::Geometric)
              .verdict == Verdict::SecureAgainstUSD);
    CHECK(classify(MeanPhotonNumber(4.0), ChannelParams(*c.crossover_eta - 1e-4),
                   DetectorParams(0.5), CriteriaMode::Geometric)
              .verdict == Verdict::InsecureUnderUSD);
}

TEST_CASE("comparison at a secure point has no crossover") {
    AttackComparison c =
        compare_attacks(MeanPhotonNumber(1.0), ChannelParams(0.05), DetectorParams(0.5));
    CHECK(c.usd_verdict.verdict == Verdict::SecureAgainstUSD);
    CHECK(!c.crossover_eta.has_value());
}

TEST_CASE("no crossover when even a lossless line stays insecure") {
    // At mu = 15 the discrimination probability is close enough to 1 that the
    // working point sits inside the region for every eta_L when eta_B = 0.1,
    // so the verdict cannot flip and no crossover exists.
    SecurityVerdict lossless = classify(MeanPhotonNumber(15.0), ChannelParams(1.0),
                                        DetectorParams(0.1), CriteriaMode::Geometric);
    REQUIRE(lossless.verdict == Verdict::InsecureUnderUSD);
    AttackComparison c =
        compare_attacks(MeanPhotonNumber(15.0), ChannelParams(0.1), DetectorParams(0.1));
    CHECK(c.usd_verdict.verdict == Verdict::InsecureUnderUSD);
    CHECK(!c.crossover_eta.has_value());
}
