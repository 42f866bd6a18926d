#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace usdqkd {

/// Mean photon number of the source, mu = |alpha|^2. Finite and >= 0.
class MeanPhotonNumber {
  public:
    explicit MeanPhotonNumber(double mu);
    double value() const { return mu_; }

  private:
    double mu_;
};

/// Source preparation for the four-signal-state alphabet.
///
/// CoherentPure: Alice emits pure coherent states with a phase reference,
/// so the discrimination bound uses the coherent-state coefficients.
/// PhaseAveragedFock: the phase is randomized and the eavesdropper sees a
/// Poissonian mixture of photon-number states; the bound averages the
/// per-photon-number optimum over that mixture.
enum class SourceModel {
    CoherentPure,
    PhaseAveragedFock,
};

/// Squared magnitudes |c_j|^2 of the four symmetric-subspace components of
/// a signal state. Entries lie in [0,1] and sum to 1 within 1e-12.
struct CoefficientQuartet {
    std::array<double, 4> c_sq;

    double min() const;
    double sum() const;
};

/// Probability that an optimal unambiguous discrimination measurement
/// succeeds. Always in [0,1].
class DiscriminationProbability {
  public:
    explicit DiscriminationProbability(double p);
    double value() const { return p_; }

  private:
    double p_;
};

/// Line transmission eta_L in [0,1] between Alice and Bob.
class ChannelParams {
  public:
    explicit ChannelParams(double eta_l);
    double eta_l() const { return eta_l_; }

  private:
    double eta_l_;
};

/// Single-photon detection efficiency eta_B of each of Bob's two detectors,
/// in (0,1]. Both detectors are identical; dark counts are not modeled.
class DetectorParams {
  public:
    explicit DetectorParams(double eta_b);
    double eta_b() const { return eta_b_; }

  private:
    double eta_b_;
};

/// A point in Bob's click-statistics plane: probability of at least one
/// click when bases agree (p_single) and probability of a coincidence of
/// both detectors when bases differ (p_double).
struct ClickPoint {
    double p_single;
    double p_double;
};

/// Photon-number distribution Eve resends after a conclusive measurement.
/// Weights are (photon_number, probability) with unique non-negative photon
/// numbers and probabilities summing to 1 within 1e-12.
class ResendDistribution {
  public:
    explicit ResendDistribution(std::vector<std::pair<int, double>> weights);

    static ResendDistribution point_mass(int n);

    const std::vector<std::pair<int, double>>& weights() const { return weights_; }

    /// Largest photon number carrying weight.
    int max_photon_number() const;

  private:
    std::vector<std::pair<int, double>> weights_;  // sorted by photon number
};

}  // namespace usdqkd
