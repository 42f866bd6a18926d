#include "usdqkd/click_model.hpp"

#include <cmath>
#include <string>

namespace usdqkd {

namespace {

// C(n,k) p^k (1-p)^(n-k). Multiplicative recurrence keeps every factor of
// the binomial coefficient paired with a probability power, so nothing
// overflows; log-gamma takes over for large n where the recurrence would
// accumulate rounding.
double binomial_pmf(int n, int k, double p) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    if (n <= 30) {
        double term = std::pow(1.0 - p, n - k) * std::pow(p, k);
        for (int i = 1; i <= k; ++i) {
            term *= static_cast<double>(n - k + i) / static_cast<double>(i);
        }
        return term;
    }
    double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace

ClickPoint working_point(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector) {
    double t = channel.eta_l() * detector.eta_b() * mu.value();
    double p_single = -std::expm1(-t);
    double arm = -std::expm1(-0.5 * t);
    return ClickPoint{p_single, arm * arm};
}

ClickPoint number_state_point(int n, DetectorParams detector, DiscriminationProbability p_d) {
    if (n < 0) {
        throw std::domain_error("photon number must be >= 0, got " + std::to_string(n));
    }
    double miss_all = std::pow(1.0 - detector.eta_b(), n);
    double miss_arm = std::pow(1.0 - 0.5 * detector.eta_b(), n);
    double p = p_d.value();
    // Fewer than two photons cannot produce a coincidence; the closed form
    // cancels to zero only up to rounding, so pin it.
    double p_double = n < 2 ? 0.0 : std::max(0.0, p * (1.0 - 2.0 * miss_arm + miss_all));
    return ClickPoint{p * (1.0 - miss_all), p_double};
}

JointClickMatrix::JointClickMatrix(int n, std::vector<double> probs)
    : n_(n), probs_(std::move(probs)) {}

double JointClickMatrix::at(int k, int l) const {
    if (k < 0 || k > n_ || l < 0 || l > n_) {
        throw std::domain_error("click count outside [0, n]");
    }
    return probs_[static_cast<std::size_t>(k) * (n_ + 1) + l];
}

double JointClickMatrix::sum() const {
    double total = 0.0;
    for (double v : probs_) total += v;
    return total;
}

JointClickMatrix joint_click_matrix(int n, DetectorParams detector,
                                    DiscriminationProbability p_d) {
    if (n < 0) {
        throw std::domain_error("photon number must be >= 0, got " + std::to_string(n));
    }
    // Each of the n photons independently: detected at detector 1 with
    // probability eta_B/2, at detector 2 with eta_B/2, lost otherwise.
    // (k, l) detections out of n follow the trinomial law; factor it as
    // binomial(n, k) at eta_B/2 times binomial(n-k, l) at the renormalized
    // arm probability.
    double half = 0.5 * detector.eta_b();
    double renorm = half / (1.0 - half);
    std::vector<double> probs(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
    for (int k = 0; k <= n; ++k) {
        double first = binomial_pmf(n, k, half);
        for (int l = 0; l + k <= n; ++l) {
            double second = binomial_pmf(n - k, l, renorm);
            probs[static_cast<std::size_t>(k) * (n + 1) + l] = p_d.value() * first * second;
        }
    }
    return JointClickMatrix(n, std::move(probs));
}

ClickPoint mixture_point(const ResendDistribution& resend, DetectorParams detector,
                         DiscriminationProbability p_d) {
    double x = 0.0;
    double y = 0.0;
    for (const auto& [n, w] : resend.weights()) {
        ClickPoint point = number_state_point(n, detector, p_d);
        x += w * point.p_single;
        y += w * point.p_double;
    }
    return ClickPoint{x, y};
}

double n_curve_exponent(DetectorParams detector) {
    if (detector.eta_b() == 1.0) {
        return 0.0;
    }
    return std::log1p(-0.5 * detector.eta_b()) / std::log1p(-detector.eta_b());
}

double n_curve_y(double x, DetectorParams detector, DiscriminationProbability p_d) {
    double p = p_d.value();
    if (!(x >= 0.0) || x > p) {
        throw std::domain_error("x must lie in [0, p_d]");
    }
    if (x == p) {
        return p;  // saturation corner, N -> infinity
    }
    if (detector.eta_b() == 1.0) {
        // Degenerate family: every resend with N >= 1 already clicks with
        // certainty, so all interior x are reached only through the N = 0
        // mixture and the reachable lower edge is flat.
        return 0.0;
    }
    double u = x / p;
    double kappa = n_curve_exponent(detector);
    return (2.0 - 2.0 * std::pow(1.0 - u, kappa) - u) * p;
}

double working_curve_y(double x) {
    if (!(x >= 0.0) || x > 1.0) {
        throw std::domain_error("x must lie in [0, 1]");
    }
    double arm = 1.0 - std::sqrt(1.0 - x);
    return arm * arm;
}

}  // namespace usdqkd
