#pragma once

#include <vector>

#include "usdqkd/types.hpp"

namespace usdqkd {

/// Click statistics Bob expects from the undisturbed lossy channel:
///   p_single = 1 - exp(-eta_L eta_B mu)
///   p_double = (1 - exp(-eta_L eta_B mu / 2))^2
ClickPoint working_point(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector);

/// Click statistics when Eve resends an n-photon state into a lossless line
/// after a conclusive discrimination (probability p_d):
///   p_single = p_d [1 - (1 - eta_B)^n]
///   p_double = p_d [1 - 2 (1 - eta_B/2)^n + (1 - eta_B)^n]
ClickPoint number_state_point(int n, DetectorParams detector, DiscriminationProbability p_d);

/// Joint distribution of click counts (k, l) at Bob's two detectors for
/// wrong-basis trials, when Eve resends n photons on conclusive outcomes.
/// Entries carry the overall factor p_d; the inconclusive branch (Eve sends
/// vacuum) is not included, so entries sum to p_d, and summing out l gives
/// the binomial marginal p_d C(n,k) (eta_B/2)^k (1 - eta_B/2)^(n-k).
class JointClickMatrix {
  public:
    JointClickMatrix(int n, std::vector<double> probs);

    int photon_number() const { return n_; }
    double at(int k, int l) const;
    double sum() const;

  private:
    int n_;
    std::vector<double> probs_;  // (n+1) x (n+1), row-major in k
};

JointClickMatrix joint_click_matrix(int n, DetectorParams detector,
                                    DiscriminationProbability p_d);

/// Click statistics for a resend strategy mixing photon numbers:
/// the weight-averaged number_state_point.
ClickPoint mixture_point(const ResendDistribution& resend, DetectorParams detector,
                         DiscriminationProbability p_d);

/// Interpolation exponent kappa = ln(1 - eta_B/2) / ln(1 - eta_B) of the
/// resend family. Lies in (0, 1/2]; kappa -> 1/2 as eta_B -> 0 and
/// kappa -> 0 at eta_B -> 1.
double n_curve_exponent(DetectorParams detector);

/// Lower envelope of click statistics reachable by Eve's resend strategies,
/// parameterized by x = p_single in [0, p_d]:
///   y = [2 - 2 (1 - x/p_d)^kappa - x/p_d] p_d.
/// Passes through every number_state_point exactly and is convex in x; it
/// dips below zero between the vacuum and one-photon points. At eta_B = 1
/// the family degenerates (kappa -> 0): y = 0 for x < p_d and y = p_d at
/// x = p_d.
double n_curve_y(double x, DetectorParams detector, DiscriminationProbability p_d);

/// Undisturbed-channel curve traced by the working point as the line
/// transmission varies: y = (1 - sqrt(1 - x))^2 for x in [0,1].
double working_curve_y(double x);

}  // namespace usdqkd
