#include "usdqkd/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace usdqkd {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::domain_error(message); }

}  // namespace

MeanPhotonNumber::MeanPhotonNumber(double mu) : mu_(mu) {
    if (!std::isfinite(mu) || mu < 0.0) {
        fail("mean photon number must be finite and >= 0, got " + std::to_string(mu));
    }
}

double CoefficientQuartet::min() const {
    return *std::min_element(c_sq.begin(), c_sq.end());
}

double CoefficientQuartet::sum() const {
    return c_sq[0] + c_sq[1] + c_sq[2] + c_sq[3];
}

DiscriminationProbability::DiscriminationProbability(double p) : p_(p) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        fail("discrimination probability must lie in [0,1], got " + std::to_string(p));
    }
}

ChannelParams::ChannelParams(double eta_l) : eta_l_(eta_l) {
    if (!std::isfinite(eta_l) || eta_l < 0.0 || eta_l > 1.0) {
        fail("line transmission eta_l must lie in [0,1], got " + std::to_string(eta_l));
    }
}

DetectorParams::DetectorParams(double eta_b) : eta_b_(eta_b) {
    if (!std::isfinite(eta_b) || eta_b <= 0.0 || eta_b > 1.0) {
        fail("detector efficiency eta_b must lie in (0,1], got " + std::to_string(eta_b));
    }
}

ResendDistribution::ResendDistribution(std::vector<std::pair<int, double>> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        fail("resend distribution must have at least one weight");
    }
    std::sort(weights_.begin(), weights_.end());
    double total = 0.0;
    int previous = -1;
    for (const auto& [n, w] : weights_) {
        if (n < 0) {
            fail("resend photon number must be >= 0, got " + std::to_string(n));
        }
        if (n == previous) {
            fail("duplicate resend photon number " + std::to_string(n));
        }
        if (!std::isfinite(w) || w < 0.0) {
            fail("resend weight for n=" + std::to_string(n) + " must be finite and >= 0");
        }
        previous = n;
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        fail("resend weights must sum to 1 within 1e-12, got " + std::to_string(total));
    }
}

ResendDistribution ResendDistribution::point_mass(int n) {
    return ResendDistribution({{n, 1.0}});
}

int ResendDistribution::max_photon_number() const {
    return weights_.back().first;
}

}  // namespace usdqkd
