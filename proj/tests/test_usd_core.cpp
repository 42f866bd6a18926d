#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "usdqkd/usd_core.hpp"

using namespace usdqkd;

namespace {

// Reference values computed with 50-digit arithmetic.
constexpr double kC0AtMu1 = 0.608110225400696;
constexpr double kC1AtMu1 = 0.303423283813485;
constexpr double kC2AtMu1 = 0.0758294951850252;
constexpr double kC3AtMu1 = 0.0126369956007935;
constexpr double kPdCoherentAtMu1 = 0.050547982403174;
constexpr double kPdFockAt01 = 7.73457069092157e-5;
constexpr double kPdFockAt05 = 0.0072369934033849;
constexpr double kPdFockAt1 = 0.0410761360263452;
constexpr double kPdFockAt207 = 0.186627814079914;
constexpr double kPdFockAt4 = 0.489001755145113;

}  // namespace

TEST_CASE("coherent quartet at mu = 1") {
    CoefficientQuartet q = coherent_coefficients(MeanPhotonNumber(1.0));
    CHECK(q.c_sq[0] == doctest::Approx(kC0AtMu1).epsilon(1e-13));
    CHECK(q.c_sq[1] == doctest::Approx(kC1AtMu1).epsilon(1e-13));
    CHECK(q.c_sq[2] == doctest::Approx(kC2AtMu1).epsilon(1e-13));
    CHECK(q.c_sq[3] == doctest::Approx(kC3AtMu1).epsilon(1e-13));
}

TEST_CASE("coherent quartet sums to one and stays ordered") {
    for (double mu : {0.0, 1e-6, 0.01, 0.3, 1.0, 2.07, 4.0, 10.0, 50.0}) {
        CoefficientQuartet q = coherent_coefficients(MeanPhotonNumber(mu));
        CHECK(std::fabs(q.sum() - 1.0) < 1e-14);
        for (double c : q.c_sq) {
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
    // |c_3|^2 is the smallest weight until mu/2 crosses the first trig sign
    // change; beyond that the minimum rotates through the quartet.
    for (double mu : {1e-6, 0.01, 0.3, 1.0, 2.07, 4.0}) {
        CoefficientQuartet q = coherent_coefficients(MeanPhotonNumber(mu));
        CHECK(q.min() == q.c_sq[3]);
    }
}

TEST_CASE("coherent quartet at mu = 0 is a point mass") {
    CoefficientQuartet q = coherent_coefficients(MeanPhotonNumber(0.0));
    CHECK(q.c_sq[0] == 1.0);
    CHECK(q.c_sq[1] == 0.0);
    CHECK(q.c_sq[2] == 0.0);
    CHECK(q.c_sq[3] == 0.0);
}

TEST_CASE("number-conditional quartets are exact dyadics") {
    CHECK(fock_conditional_coefficients(0).c_sq == std::array<double, 4>{1.0, 0.0, 0.0, 0.0});
    for (int n = 0; n <= 60; ++n) {
        CoefficientQuartet q = fock_conditional_coefficients(n);
        double sum = q.c_sq[0] + q.c_sq[1] + q.c_sq[2] + q.c_sq[3];
        CHECK(sum == 1.0);  // dyadic deviations cancel exactly
        CHECK(usd_probability_n(n).value() == usd_probability(q).value());
    }
}

TEST_CASE("conditional discrimination probability closed form") {
    CHECK(usd_probability_n(0).value() == 0.0);
    CHECK(usd_probability_n(1).value() == 0.0);
    CHECK(usd_probability_n(2).value() == 0.0);
    CHECK(usd_probability_n(3).value() == 0.5);
    CHECK(usd_probability_n(4).value() == 0.5);
    CHECK(usd_probability_n(5).value() == 0.75);
    CHECK(usd_probability_n(6).value() == 0.75);
    CHECK(usd_probability_n(10).value() == 1.0 - 0.0625);
    CHECK(usd_probability_n(11).value() == 1.0 - 0.03125);
    for (int n = 3; n <= 50; ++n) {
        CHECK(usd_probability_n(n).value() > usd_probability_n(n - 2).value());
    }
}

TEST_CASE("negative photon number is rejected") {
    CHECK_THROWS_AS(fock_conditional_coefficients(-1), std::domain_error);
    CHECK_THROWS_AS(usd_probability_n(-3), std::domain_error);
}

TEST_CASE("phase-averaged discrimination probability reference values") {
    auto pd = [](double mu) {
        return usd_probability(MeanPhotonNumber(mu), SourceModel::PhaseAveragedFock).value();
    };
    CHECK(pd(0.1) == doctest::Approx(kPdFockAt01).epsilon(1e-12));
    CHECK(pd(0.5) == doctest::Approx(kPdFockAt05).epsilon(1e-12));
    CHECK(pd(1.0) == doctest::Approx(kPdFockAt1).epsilon(1e-12));
    CHECK(pd(2.07) == doctest::Approx(kPdFockAt207).epsilon(1e-12));
    CHECK(pd(4.0) == doctest::Approx(kPdFockAt4).epsilon(1e-12));
    CHECK(pd(0.0) == 0.0);
}

TEST_CASE("coherent discrimination probability agrees with its quartet") {
    for (double mu : {0.01, 0.1, 0.5, 1.0, 2.07, 4.0, 8.0}) {
        MeanPhotonNumber m(mu);
        double via_quartet = usd_probability(coherent_coefficients(m)).value();
        double closed = usd_probability(m, SourceModel::CoherentPure).value();
        CHECK(closed == doctest::Approx(via_quartet).epsilon(1e-13));
    }
    CHECK(usd_probability(MeanPhotonNumber(1.0), SourceModel::CoherentPure).value() ==
          doctest::Approx(kPdCoherentAtMu1).epsilon(1e-12));
}

TEST_CASE("coherent bound dominates the phase-averaged mixture") {
    for (double mu : {1e-3, 0.1, 0.5, 1.0, 2.0, 4.0, 10.0}) {
        MeanPhotonNumber m(mu);
        double coherent = usd_probability(m, SourceModel::CoherentPure).value();
        double fock = usd_probability(m, SourceModel::PhaseAveragedFock).value();
        CHECK(coherent > fock);
    }
}

TEST_CASE("phase-averaged probability is monotone in mu") {
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
        double mu = 0.05 * i;
        double p = usd_probability(MeanPhotonNumber(mu), SourceModel::PhaseAveragedFock).value();
        CHECK(p > prev);
        CHECK(p < 1.0);
        prev = p;
    }
}

TEST_CASE("failure probability complements success for both models") {
    for (double mu : {0.0, 0.1, 1.0, 2.07, 4.0, 20.0}) {
        MeanPhotonNumber m(mu);
        for (SourceModel model : {SourceModel::CoherentPure, SourceModel::PhaseAveragedFock}) {
            double p = usd_probability(m, model).value();
            double q = usd_failure_probability(m, model);
            CHECK(std::fabs(p + q - 1.0) < 1e-14);
        }
    }
    // The exponential form survives where 1 - P_D would round to zero slowly.
    double tail = usd_failure_probability(MeanPhotonNumber(700.0), SourceModel::PhaseAveragedFock);
    CHECK(tail > 0.0);
    CHECK(tail < 1e-60);
}

TEST_CASE("Poisson series reproduces the closed form") {
    for (double mu : {0.0, 0.1, 0.5, 1.0, 2.07, 4.0, 10.0, 30.0, 50.0}) {
        MeanPhotonNumber m(mu);
        double series = usd_probability_series(m).value();
        double closed = usd_probability(m, SourceModel::PhaseAveragedFock).value();
        CHECK(std::fabs(series - closed) < 1e-12);
    }
}

TEST_CASE("general symmetric-set solver recovers the coherent quartet") {
    for (double mu : {0.3, 1.0, 2.0}) {
        MeanPhotonNumber m(mu);
        auto gram = coherent_overlap_matrix(m);
        double general = symmetric_usd_from_overlaps(gram).value();
        double closed = usd_probability(m, SourceModel::CoherentPure).value();
        CHECK(general == doctest::Approx(closed).epsilon(1e-12));
    }
}

TEST_CASE("general solver validates its overlap matrix") {
    using Matrix = std::vector<std::vector<std::complex<double>>>;
    CHECK_THROWS_AS(symmetric_usd_from_overlaps(Matrix{{1.0}}), std::invalid_argument);
    Matrix ragged{{1.0, 0.5}, {0.5}};
    CHECK_THROWS_AS(symmetric_usd_from_overlaps(ragged), std::invalid_argument);
    Matrix bad_diagonal{{0.9, 0.5}, {0.5, 1.0}};
    CHECK_THROWS_AS(symmetric_usd_from_overlaps(bad_diagonal), std::invalid_argument);
    Matrix not_hermitian{{1.0, {0.5, 0.1}}, {{0.5, 0.1}, 1.0}};
    CHECK_THROWS_AS(symmetric_usd_from_overlaps(not_hermitian), std::invalid_argument);
    Matrix not_circulant{
        {1.0, 0.5, 0.1},
        {0.5, 1.0, 0.2},
        {0.1, 0.2, 1.0},
    };
    CHECK_THROWS_AS(symmetric_usd_from_overlaps(not_circulant), std::invalid_argument);
    Matrix two_states{{1.0, 0.5}, {0.5, 1.0}};
    // Two symmetric states with real overlap s: P_D = 1 - s.
    CHECK(symmetric_usd_from_overlaps(two_states).value() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MeanPhotonNumber(-1.0), std::domain_error);
    CHECK_THROWS_AS(MeanPhotonNumber(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(DiscriminationProbability(-0.1), std::domain_error);
    CHECK_THROWS_AS(DiscriminationProbability(1.5), std::domain_error);
    CHECK(DiscriminationProbability(1.0).value() == 1.0);
}
