#include "usdqkd/attacks.hpp"

#include <cmath>
#include <string>

#include "usdqkd/usd_core.hpp"

namespace usdqkd {

namespace {

void check_transmission(double eta) {
    if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
        throw std::domain_error("beamsplitter transmission must lie in [0,1], got " +
                                std::to_string(eta));
    }
}

}  // namespace

BeamsplitReport beamsplit_report(MeanPhotonNumber mu, double eta) {
    check_transmission(eta);
    double m = mu.value();
    double p_exp = -std::expm1(-eta * m);
    double p_split = p_exp * -std::expm1(-(1.0 - eta) * m);
    double g_bs = 0.5 * std::exp(-(1.0 - eta) * m) * p_exp;
    return BeamsplitReport{p_exp, p_split, g_bs};
}

TwoPhotonSplit two_photon_split(double eta) {
    check_transmission(eta);
    double r = 1.0 - eta;
    return TwoPhotonSplit{r * r, 2.0 * eta * r, eta * eta};
}

AttackComparison compare_attacks(MeanPhotonNumber mu, ChannelParams channel,
                                 DetectorParams detector) {
    AttackComparison comparison{
        beamsplit_report(mu, channel.eta_l() * detector.eta_b()),
        classify(mu, channel, detector, CriteriaMode::Geometric),
        usd_probability(mu, SourceModel::PhaseAveragedFock),
        std::nullopt,
    };
    if (comparison.usd_verdict.verdict != Verdict::InsecureUnderUSD) {
        return comparison;
    }
    auto insecure_at = [&](double el) {
        return classify(mu, ChannelParams(el), detector, CriteriaMode::Geometric).verdict ==
               Verdict::InsecureUnderUSD;
    };
    if (insecure_at(1.0)) {
        // No flip inside (eta_l, 1]; leave the crossover absent.
        return comparison;
    }
    double lo = channel.eta_l();
    double hi = 1.0;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (insecure_at(mid) ? lo : hi) = mid;
    }
    comparison.crossover_eta = 0.5 * (lo + hi);
    return comparison;
}

}  // namespace usdqkd
