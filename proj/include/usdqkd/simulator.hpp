#pragma once

#include <cstdint>
#include <optional>

#include "usdqkd/types.hpp"

namespace usdqkd {

/// Eve intercepts a fraction of the pulses, discriminates, and resends from
/// the given photon-number distribution on success (vacuum on failure).
struct UsdAttack {
    ResendDistribution resend;
    double attack_fraction;  // in [0,1]; independent Bernoulli per trial
};

/// Empty optional = honest channel, no eavesdropper.
using EveStrategy = std::optional<UsdAttack>;

struct SimConfig {
    MeanPhotonNumber mu;
    ChannelParams channel;
    DetectorParams detector;
    EveStrategy eve;
    std::uint64_t trials;  // >= 1
    std::uint64_t seed;
};

struct PredictedPoint {
    ClickPoint point;
};

/// Analytic expectation for the configured strategy: the attack point for
/// the resend mixture and the honest working point, interpolated linearly
/// by the attack fraction.
PredictedPoint predicted_point(const SimConfig& config);

/// Raw tallies. Addition is associative, so any partition of the trial
/// range aggregates to the same totals.
struct SimCounts {
    std::uint64_t n_same_basis = 0;
    std::uint64_t n_diff_basis = 0;
    std::uint64_t single_clicks_same_basis = 0;
    std::uint64_t double_clicks_same_basis = 0;  // structurally 0 in this model
    std::uint64_t single_clicks_diff_basis = 0;
    std::uint64_t double_clicks_diff_basis = 0;
    std::uint64_t attacked_trials = 0;
    std::uint64_t usd_successes = 0;

    SimCounts& operator+=(const SimCounts& other);
};

struct SimReport {
    SimCounts counts;
    ClickPoint est;        // (single | same basis, double | diff basis) frequencies
    ClickPoint predicted;
    double ci95_single;    // normal-approximation half-widths around est
    double ci95_double;
    double z_single;       // (est - predicted) / SE(predicted)
    double z_double;
};

/// Runs config.trials independent trials. Per trial: draw one of the four
/// signal states and a Poissonian photon number; Eve (if attacking this
/// trial) succeeds with the photon-number-conditional discrimination
/// probability and resends into a lossless line, or sends vacuum; otherwise
/// each photon survives the line with probability eta_L. Bob picks a basis;
/// same-basis photons all reach one detector, different-basis photons split
/// evenly and independently; each is detected with probability eta_B.
///
/// threads = 0 picks a hardware-based worker count. The report is identical
/// for every worker count at fixed seed.
SimReport run_simulation(const SimConfig& config, unsigned threads = 0);

}  // namespace usdqkd
