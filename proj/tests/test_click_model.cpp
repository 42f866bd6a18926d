#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "usdqkd/click_model.hpp"
#include "usdqkd/usd_core.hpp"

using namespace usdqkd;

namespace {

const DetectorParams kDet01{0.1};
const DetectorParams kDet05{0.5};
const DetectorParams kDet09{0.9};

}  // namespace

TEST_CASE("working point reference value") {
    ClickPoint w = working_point(MeanPhotonNumber(2.07), ChannelParams(0.1), kDet05);
    CHECK(w.p_single == doctest::Approx(0.0983239772581446).epsilon(1e-13));
    CHECK(w.p_double == doctest::Approx(0.00254356528465592).epsilon(1e-13));
}

TEST_CASE("working point limits") {
    ClickPoint origin = working_point(MeanPhotonNumber(0.0), ChannelParams(1.0), kDet05);
    CHECK(origin.p_single == 0.0);
    CHECK(origin.p_double == 0.0);
    ClickPoint dark = working_point(MeanPhotonNumber(3.0), ChannelParams(0.0), kDet05);
    CHECK(dark.p_single == 0.0);
    CHECK(dark.p_double == 0.0);
    // Double clicks require splitting: y_w = (1 - sqrt(1 - x_w))^2 < x_w.
    ClickPoint w = working_point(MeanPhotonNumber(5.0), ChannelParams(1.0), DetectorParams(1.0));
    CHECK(w.p_double < w.p_single);
}

TEST_CASE("number-state points match the low-N closed forms") {
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        double eta = det.eta_b();
        for (double p : {0.2, 1.0}) {
            DiscriminationProbability pd(p);
            ClickPoint n0 = number_state_point(0, det, pd);
            CHECK(n0.p_single == 0.0);
            CHECK(n0.p_double == 0.0);
            ClickPoint n1 = number_state_point(1, det, pd);
            CHECK(n1.p_single == doctest::Approx(p * eta).epsilon(1e-13));
            CHECK(n1.p_double == 0.0);  // one photon cannot split
            ClickPoint n2 = number_state_point(2, det, pd);
            CHECK(n2.p_single == doctest::Approx(p * eta * (2.0 - eta)).epsilon(1e-13));
            CHECK(n2.p_double == doctest::Approx(p * eta * eta / 2.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("number-state point reference value at N = 2") {
    DiscriminationProbability pd =
        usd_probability(MeanPhotonNumber(2.07), SourceModel::PhaseAveragedFock);
    ClickPoint n2 = number_state_point(2, kDet05, pd);
    CHECK(n2.p_single == doctest::Approx(0.13997086056).epsilon(1e-11));
    CHECK(n2.p_double == doctest::Approx(0.02332847676).epsilon(1e-11));
}

TEST_CASE("double clicks never dominate single clicks") {
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        DiscriminationProbability pd(0.7);
        for (int n = 0; n <= 50; ++n) {
            ClickPoint point = number_state_point(n, det, pd);
            CHECK(point.p_double <= point.p_single);
            CHECK(point.p_single <= pd.value());
        }
    }
}

TEST_CASE("joint click matrix marginals") {
    DiscriminationProbability pd(0.8);
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        double eta = det.eta_b();
        for (int n = 0; n <= 20; ++n) {
            JointClickMatrix joint = joint_click_matrix(n, det, pd);
            CHECK(std::fabs(joint.sum() - pd.value()) < 1e-12);
            CHECK(std::fabs(joint.at(0, 0) - pd.value() * std::pow(1.0 - eta, n)) < 1e-12);
            double column0 = 0.0;
            for (int k = 0; k <= n; ++k) {
                column0 += joint.at(k, 0);
            }
            CHECK(std::fabs(column0 - pd.value() * std::pow(1.0 - eta / 2.0, n)) < 1e-12);
        }
    }
}

TEST_CASE("joint click matrix reproduces the click point") {
    DiscriminationProbability pd(0.6);
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        for (int n = 0; n <= 15; ++n) {
            JointClickMatrix joint = joint_click_matrix(n, det, pd);
            double singles = 0.0;
            double doubles = 0.0;
            for (int k = 0; k <= n; ++k) {
                for (int l = 0; l + k <= n; ++l) {
                    if (k > 0 && l > 0) {
                        doubles += joint.at(k, l);
                    } else if (k + l > 0) {
                        singles += joint.at(k, l);
                    }
                }
            }
            ClickPoint point = number_state_point(n, det, pd);
            CHECK(std::fabs(doubles - point.p_double) < 1e-12);
            // Different-basis singles also count split-but-one-side-lost events;
            // the sum of both click classes matches the any-click probability.
            CHECK(std::fabs(singles + doubles -
                            pd.value() * (1.0 - std::pow(1.0 - det.eta_b(), n))) < 1e-12);
        }
    }
}

TEST_CASE("joint click matrix survives large photon numbers") {
    DiscriminationProbability pd(1.0);
    JointClickMatrix joint = joint_click_matrix(100, kDet05, pd);
    CHECK(std::fabs(joint.sum() - 1.0) < 1e-10);
    for (int k = 0; k <= 100; ++k) {
        for (int l = 0; l + k <= 100; ++l) {
            CHECK(joint.at(k, l) >= 0.0);
        }
    }
}

TEST_CASE("mixture point is the weighted number-state average") {
    DiscriminationProbability pd(0.4);
    ResendDistribution mix({{1, 0.25}, {2, 0.5}, {5, 0.25}});
    ClickPoint mixed = mixture_point(mix, kDet05, pd);
    ClickPoint p1 = number_state_point(1, kDet05, pd);
    ClickPoint p2 = number_state_point(2, kDet05, pd);
    ClickPoint p5 = number_state_point(5, kDet05, pd);
    CHECK(mixed.p_single ==
          doctest::Approx(0.25 * p1.p_single + 0.5 * p2.p_single + 0.25 * p5.p_single)
              .epsilon(1e-14));
    CHECK(mixed.p_double ==
          doctest::Approx(0.25 * p1.p_double + 0.5 * p2.p_double + 0.25 * p5.p_double)
              .epsilon(1e-14));
}

TEST_CASE("interpolation exponent") {
    CHECK(n_curve_exponent(kDet05) == doctest::Approx(0.415037499278844).epsilon(1e-12));
    CHECK(n_curve_exponent(kDet05) == doctest::Approx(std::log(0.75) / std::log(0.5)).epsilon(1e-14));
    CHECK(n_curve_exponent(DetectorParams(1.0)) == 0.0);
    // kappa -> 1/2 as eta_B -> 0.
    CHECK(n_curve_exponent(DetectorParams(1e-8)) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("lower-envelope curve passes through every number-state point") {
    DiscriminationProbability pd(0.3);
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        for (int n = 0; n <= 12; ++n) {
            ClickPoint point = number_state_point(n, det, pd);
            // Near saturation 1 - p_single/p_d cancels almost completely, so
            // the round trip cannot stay at 1e-12; observed worst case 3e-9.
            double survive = std::pow(1.0 - det.eta_b(), n);
            double tol = survive >= 1e-6 ? 1e-12 : 1e-8;
            CHECK(std::fabs(n_curve_y(point.p_single, det, pd) - point.p_double) < tol);
        }
        CHECK(n_curve_y(0.0, det, pd) == 0.0);
        CHECK(n_curve_y(pd.value(), det, pd) == pd.value());
    }
}

TEST_CASE("lower-envelope curve rejects points outside its domain") {
    DiscriminationProbability pd(0.3);
    CHECK_THROWS_AS(n_curve_y(-1e-9, kDet05, pd), std::domain_error);
    CHECK_THROWS_AS(n_curve_y(0.3 + 1e-9, kDet05, pd), std::domain_error);
}

TEST_CASE("lower-envelope curve is convex") {
    for (const DetectorParams& det : {kDet01, kDet05, kDet09}) {
        DiscriminationProbability pd(0.5);
        const int points = 400;
        std::vector<double> y(points + 1);
        for (int i = 0; i <= points; ++i) {
            y[i] = n_curve_y(pd.value() * i / points, det, pd);
        }
        for (int i = 1; i < points; ++i) {
            CHECK(y[i + 1] - 2.0 * y[i] + y[i - 1] >= -1e-12);
        }
    }
}

TEST_CASE("perfect detector collapses the curve to the box edges") {
    DiscriminationProbability pd(0.4);
    DetectorParams perfect(1.0);
    CHECK(n_curve_y(0.2, perfect, pd) == 0.0);
    CHECK(n_curve_y(pd.value(), perfect, pd) == pd.value());
    ClickPoint n3 = number_state_point(3, perfect, pd);
    CHECK(n3.p_single == doctest::Approx(pd.value()).epsilon(1e-14));
}

TEST_CASE("undisturbed transmission curve") {
    CHECK(working_curve_y(0.0) == 0.0);
    CHECK(working_curve_y(1.0) == 1.0);
    CHECK(working_curve_y(0.25) == doctest::Approx(0.0179491924311227).epsilon(1e-12));
    // Consistency with the parametric working point at eta_B = 1.
    for (double mu : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        ClickPoint w = working_point(MeanPhotonNumber(mu), ChannelParams(1.0), DetectorParams(1.0));
        CHECK(std::fabs(working_curve_y(w.p_single) - w.p_double) < 1e-14);
    }
}

TEST_CASE("detector parameter validation") {
    CHECK_THROWS_AS(DetectorParams(0.0), std::domain_error);
    CHECK_THROWS_AS(DetectorParams(1.1), std::domain_error);
    CHECK_THROWS_AS(ChannelParams(-0.2), std::domain_error);
    CHECK_THROWS_AS(number_state_point(-1, kDet05, DiscriminationProbability(0.5)),
                    std::domain_error);
}
