#pragma once

#include <optional>

#include "usdqkd/security_region.hpp"
#include "usdqkd/types.hpp"

namespace usdqkd {

/// Beamsplitting attack against total transmission eta: Eve swaps in a
/// lossless line, diverts the loss fraction to her own storage, and measures
/// after basis announcement.
struct BeamsplitReport {
    double p_exp;    // 1 - e^(-eta mu), Bob expects a nonempty pulse
    double p_split;  // p_exp (1 - e^(-(1-eta) mu)), Eve also holds a photon
    double g_bs;     // (1/2) e^(-(1-eta) mu) (1 - e^(-eta mu)), surviving key gain
};

/// Requires 0 <= eta <= 1. g_bs = (p_exp - p_split) / 2 identically.
BeamsplitReport beamsplit_report(MeanPhotonNumber mu, double eta);

/// Fate of a two-photon pulse at a beamsplitter of transmission eta:
/// probabilities that 0, 1, or 2 photons reach Bob (the rest go to Eve).
struct TwoPhotonSplit {
    double p_bob0;  // (1-eta)^2
    double p_bob1;  // 2 eta (1-eta)
    double p_bob2;  // eta^2
};

TwoPhotonSplit two_photon_split(double eta);

/// Side-by-side evaluation of the two attacks at one parameter point.
struct AttackComparison {
    BeamsplitReport beamsplit;       // at system transmission eta_L eta_B
    SecurityVerdict usd_verdict;     // Geometric classification
    DiscriminationProbability usd_p_d;
    /// Largest line transmission at which the USD verdict is still
    /// InsecureUnderUSD at fixed (mu, eta_B), located by bisection to 1e-6.
    /// Present only when the given eta_L is itself insecure and the verdict
    /// flips somewhere in (eta_L, 1]; in (0,1) when present.
    std::optional<double> crossover_eta;
};

AttackComparison compare_attacks(MeanPhotonNumber mu, ChannelParams channel,
                                 DetectorParams detector);

}  // namespace usdqkd
