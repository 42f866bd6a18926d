#include "usdqkd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "usdqkd/click_model.hpp"
#include "usdqkd/rng.hpp"
#include "usdqkd/usd_core.hpp"

namespace usdqkd {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Knuth's product method on chunks small enough that e^-mu stays normal;
// the chunk counts add up to a Poisson draw of the full mean.
int sample_poisson(TrialRng& rng, double mu) {
    if (mu <= 0.0) {
        return 0;
    }
    int chunks = mu > 30.0 ? static_cast<int>(mu / 30.0) + 1 : 1;
    double limit = std::exp(-mu / chunks);
    int total = 0;
    for (int c = 0; c < chunks; ++c) {
        int k = 0;
        double product = 1.0;
        do {
            ++k;
            product *= rng.next_double();
        } while (product > limit);
        total += k - 1;
    }
    return total;
}

int binomial_thin(TrialRng& rng, int n, double p) {
    if (p >= 1.0) {
        return n;
    }
    if (p <= 0.0) {
        return 0;
    }
    int kept = 0;
    for (int i = 0; i < n; ++i) {
        kept += rng.next_bool(p) ? 1 : 0;
    }
    return kept;
}

struct ResendSampler {
    std::vector<int> photon_numbers;
    std::vector<double> cumulative;

    explicit ResendSampler(const ResendDistribution& resend) {
        double acc = 0.0;
        for (const auto& [n, w] : resend.weights()) {
            acc += w;
            photon_numbers.push_back(n);
            cumulative.push_back(acc);
        }
        cumulative.back() = 1.0;  // absorb the 1e-12 normalization slack
    }

    int draw(TrialRng& rng) const {
        double u = rng.next_double();
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (u < cumulative[i]) {
                return photon_numbers[i];
            }
        }
        return photon_numbers.back();
    }
};

SimCounts run_range(const SimConfig& config, const ResendSampler* resend,
                    std::uint64_t begin, std::uint64_t end) {
    SimCounts counts;
    double mu = config.mu.value();
    double eta_l = config.channel.eta_l();
    double eta_b = config.detector.eta_b();
    double fraction = config.eve ? config.eve->attack_fraction : 0.0;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        TrialRng rng(config.seed, trial);
        int state = rng.next_quart();
        int photons = sample_poisson(rng, mu);
        int delivered = 0;
        if (fraction > 0.0 && rng.next_bool(fraction)) {
            counts.attacked_trials += 1;
            double p_success = usd_probability_n(photons).value();
            if (p_success > 0.0 && rng.next_bool(p_success)) {
                counts.usd_successes += 1;
                delivered = resend->draw(rng);  // lossless resend line
            }
            // inconclusive outcome: vacuum, delivered stays 0
        } else {
            delivered = binomial_thin(rng, photons, eta_l);
        }
        int alice_basis = state & 1;
        if (rng.next_bit() == alice_basis) {
            counts.n_same_basis += 1;
            // All photons share one polarization, so only one detector can
            // see them; a coincidence cannot occur.
            if (binomial_thin(rng, delivered, eta_b) > 0) {
                counts.single_clicks_same_basis += 1;
            }
        } else {
            counts.n_diff_basis += 1;
            bool fired_1 = false;
            bool fired_2 = false;
            for (int i = 0; i < delivered; ++i) {
                bool to_first = rng.next_bit() == 0;
                if (rng.next_bool(eta_b)) {
                    (to_first ? fired_1 : fired_2) = true;
                }
            }
            if (fired_1 && fired_2) {
                counts.double_clicks_diff_basis += 1;
            } else if (fired_1 || fired_2) {
                counts.single_clicks_diff_basis += 1;
            }
        }
    }
    return counts;
}

double z_score(double est, double predicted, std::uint64_t n) {
    if (n == 0) {
        return 0.0;
    }
    double se = std::sqrt(predicted * (1.0 - predicted) / static_cast<double>(n));
    if (se == 0.0) {
        if (est == predicted) {
            return 0.0;
        }
        return std::copysign(std::numeric_limits<double>::infinity(), est - predicted);
    }
    return (est - predicted) / se;
}

double ci95_half_width(double est, std::uint64_t n) {
    if (n == 0) {
        return 0.0;
    }
    return kZ95 * std::sqrt(est * (1.0 - est) / static_cast<double>(n));
}

}  // namespace

SimCounts& SimCounts::operator+=(const SimCounts& other) {
    n_same_basis += other.n_same_basis;
    n_diff_basis += other.n_diff_basis;
    single_clicks_same_basis += other.single_clicks_same_basis;
    double_clicks_same_basis += other.double_clicks_same_basis;
    single_clicks_diff_basis += other.single_clicks_diff_basis;
    double_clicks_diff_basis += other.double_clicks_diff_basis;
    attacked_trials += other.attacked_trials;
    usd_successes += other.usd_successes;
    return *this;
}

PredictedPoint predicted_point(const SimConfig& config) {
    ClickPoint honest = working_point(config.mu, config.channel, config.detector);
    if (!config.eve) {
        return PredictedPoint{honest};
    }
    double f = config.eve->attack_fraction;
    ClickPoint attack =
        mixture_point(config.eve->resend, config.detector,
                      usd_probability(config.mu, SourceModel::PhaseAveragedFock));
    return PredictedPoint{ClickPoint{
        f * attack.p_single + (1.0 - f) * honest.p_single,
        f * attack.p_double + (1.0 - f) * honest.p_double,
    }};
}

SimReport run_simulation(const SimConfig& config, unsigned threads) {
    if (config.trials == 0) {
        throw std::domain_error("trials must be >= 1");
    }
    if (config.eve) {
        double f = config.eve->attack_fraction;
        if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
            throw std::domain_error("attack fraction must lie in [0,1]");
        }
    }
    std::optional<ResendSampler> sampler;
    if (config.eve) {
        sampler.emplace(config.eve->resend);
    }
    const ResendSampler* resend = sampler ? &*sampler : nullptr;

    unsigned workers = threads != 0 ? threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, 64);
    if (static_cast<std::uint64_t>(workers) > config.trials) {
        workers = static_cast<unsigned>(config.trials);
    }

    std::vector<SimCounts> partial(workers);
    if (workers == 1) {
        partial[0] = run_range(config, resend, 0, config.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::uint64_t chunk = config.trials / workers;
        std::uint64_t remainder = config.trials % workers;
        std::uint64_t begin = 0;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t end = begin + chunk + (w < remainder ? 1 : 0);
            pool.emplace_back([&config, resend, &partial, w, begin, end] {
                partial[w] = run_range(config, resend, begin, end);
            });
            begin = end;
        }
        for (auto& worker : pool) {
            worker.join();
        }
    }

    SimReport report{};
    for (const auto& counts : partial) {
        report.counts += counts;
    }
    const SimCounts& totals = report.counts;
    double est_single =
        totals.n_same_basis == 0
            ? 0.0
            : static_cast<double>(totals.single_clicks_same_basis) /
                  static_cast<double>(totals.n_same_basis);
    double est_double =
        totals.n_diff_basis == 0
            ? 0.0
            : static_cast<double>(totals.double_clicks_diff_basis) /
                  static_cast<double>(totals.n_diff_basis);
    report.est = ClickPoint{est_single, est_double};
    report.predicted = predicted_point(config).point;
    report.ci95_single = ci95_half_width(est_single, totals.n_same_basis);
    report.ci95_double = ci95_half_width(est_double, totals.n_diff_basis);
    report.z_single = z_score(est_single, report.predicted.p_single, totals.n_same_basis);
    report.z_double = z_score(est_double, report.predicted.p_double, totals.n_diff_basis);
    return report;
}

}  // namespace usdqkd
