#include "usdqkd/usd_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace usdqkd {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// cos(pi n / 4) and sin(pi n / 4) over the period n mod 8, exact where the
// value is 0, +-1, or +-1/sqrt(2). Direct trig of pi*n/4 drifts for large n.
constexpr double kCosTable[8] = {1.0, kInvSqrt2, 0.0, -kInvSqrt2,
                                 -1.0, -kInvSqrt2, 0.0, kInvSqrt2};
constexpr double kSinTable[8] = {0.0, kInvSqrt2, 1.0, kInvSqrt2,
                                 0.0, -kInvSqrt2, -1.0, -kInvSqrt2};

// 2^(-(1+n/2)) * {cos,sin}(pi n / 4) as exact dyadic rationals. For odd n
// the 1/sqrt(2) from the trig table combines with the half-integer power of
// two; only the sign survives from the table.
void fock_deviation_terms(int n, double* d_cos, double* d_sin) {
    int r = n & 7;
    if (n % 2 == 0) {
        double amp = std::ldexp(1.0, -(1 + n / 2));
        *d_cos = amp * kCosTable[r];
        *d_sin = amp * kSinTable[r];
    } else {
        double amp = std::ldexp(1.0, -((n + 3) / 2));
        *d_cos = amp * (kCosTable[r] > 0 ? 1.0 : -1.0);
        *d_sin = amp * (kSinTable[r] > 0 ? 1.0 : -1.0);
    }
}

}  // namespace

CoefficientQuartet coherent_coefficients(MeanPhotonNumber mu) {
    double m = mu.value();
    // (1/2)e^(-m/2) cosh(m/2) = (1/4)(1 + e^-m) and the sinh analogue; the
    // rearrangement stays bounded for every m.
    double even = 0.25 * (1.0 + std::exp(-m));
    double odd = 0.25 * (-std::expm1(-m));
    double half = 0.5 * std::exp(-0.5 * m);
    double c = half * std::cos(0.5 * m);
    double s = half * std::sin(0.5 * m);
    return CoefficientQuartet{{clamp01(even + c), clamp01(odd + s),
                               clamp01(even - c), clamp01(odd - s)}};
}

CoefficientQuartet fock_conditional_coefficients(int n) {
    if (n < 0) {
        throw std::domain_error("photon number must be >= 0, got " + std::to_string(n));
    }
    if (n == 0) {
        // Vacuum subspace holds a single state shared by all four signals.
        return CoefficientQuartet{{1.0, 0.0, 0.0, 0.0}};
    }
    double d_cos = 0.0;
    double d_sin = 0.0;
    fock_deviation_terms(n, &d_cos, &d_sin);
    return CoefficientQuartet{{0.25 + d_cos, 0.25 + d_sin, 0.25 - d_cos, 0.25 - d_sin}};
}

DiscriminationProbability usd_probability(const CoefficientQuartet& quartet) {
    return DiscriminationProbability(clamp01(4.0 * quartet.min()));
}

DiscriminationProbability usd_probability_n(int n) {
    if (n < 0) {
        throw std::domain_error("photon number must be >= 0, got " + std::to_string(n));
    }
    if (n <= 2) {
        return DiscriminationProbability(0.0);
    }
    // 4 * (1/4 - 2^-k) = 1 - 2^(2-k); identical bit pattern to the quartet route.
    double p = (n % 2 == 0) ? 1.0 - std::ldexp(1.0, 1 - n / 2)
                            : 1.0 - std::ldexp(1.0, (1 - n) / 2);
    return DiscriminationProbability(p);
}

DiscriminationProbability usd_probability(MeanPhotonNumber mu, SourceModel model) {
    if (model == SourceModel::CoherentPure) {
        return usd_probability(coherent_coefficients(mu));
    }
    double m = mu.value();
    // 1 - e^-m (sqrt(2) sinh(m/sqrt(2)) + 2 cosh(m/sqrt(2)) - 1), expanded
    // into decaying exponentials. expm1 keeps the m^3/12 onset: with
    // s = 1/sqrt(2), (1+s)a + (1-s)b = 1 cancels the linear terms and the
    // quadratic ones cancel likewise.
    double a = 1.0 - kInvSqrt2;
    double b = 1.0 + kInvSqrt2;
    double p = -((1.0 + kInvSqrt2) * std::expm1(-a * m) +
                 (1.0 - kInvSqrt2) * std::expm1(-b * m) - std::expm1(-m));
    return DiscriminationProbability(clamp01(p));
}

double usd_failure_probability(MeanPhotonNumber mu, SourceModel model) {
    double m = mu.value();
    if (model == SourceModel::PhaseAveragedFock) {
        double a = 1.0 - kInvSqrt2;
        double b = 1.0 + kInvSqrt2;
        return (1.0 + kInvSqrt2) * std::exp(-a * m) +
               (1.0 - kInvSqrt2) * std::exp(-b * m) - std::exp(-m);
    }
    // 1 - 4 min_j |c_j|^2, with 4|c_j|^2 = 1 +- e^-m +- 2 e^(-m/2) trig; the
    // largest of the four complements corresponds to the smallest entry.
    double e = std::exp(-m);
    double h = 2.0 * std::exp(-0.5 * m);
    double c = h * std::cos(0.5 * m);
    double s = h * std::sin(0.5 * m);
    double q = std::max(std::max(-e - c, -e + c), std::max(e - s, e + s));
    return clamp01(q);
}

DiscriminationProbability usd_probability_series(MeanPhotonNumber mu, double tol) {
    if (!(tol > 0.0) || tol >= 1.0) {
        throw std::domain_error("series tolerance must lie in (0,1)");
    }
    double m = mu.value();
    if (m == 0.0) {
        return DiscriminationProbability(0.0);
    }
    // Accumulate e^-m m^n / n! * P_D(n).  Past the mean the weights decay
    // geometrically with ratio r = m/(n+1), so the untallied mass is at most
    // weight * r / (1 - r); with P_D <= 1 that also bounds the truncation
    // error.  Stop once the bound drops below tol.
    double log_m = std::log(m);
    double log_fact = 0.0;
    double total = 0.0;
    for (int n = 0;; ++n) {
        if (n > 0) {
            log_fact += std::log(static_cast<double>(n));
        }
        double weight = std::exp(-m + n * log_m - log_fact);
        total += weight * usd_probability_n(n).value();
        if (n > m) {
            double r = m / (n + 1.0);
            if (weight * r / (1.0 - r) < tol) {
                break;
            }
        }
    }
    return DiscriminationProbability(clamp01(total));
}

DiscriminationProbability symmetric_usd_from_overlaps(
    const std::vector<std::vector<std::complex<double>>>& overlaps) {
    std::size_t n = overlaps.size();
    if (n < 2) {
        throw std::invalid_argument("overlap matrix must be at least 2x2");
    }
    for (const auto& row : overlaps) {
        if (row.size() != n) {
            throw std::invalid_argument("overlap matrix must be square");
        }
    }
    const double tol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(overlaps[i][i] - std::complex<double>(1.0, 0.0)) > tol) {
            throw std::invalid_argument("overlap matrix diagonal must be 1");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(overlaps[i][j] - std::conj(overlaps[j][i])) > tol) {
                throw std::invalid_argument("overlap matrix must be Hermitian");
            }
        }
    }
    // Circulant: entry (i,j) depends only on (j - i) mod n.
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(overlaps[i][j] - overlaps[0][(j + n - i) % n]) > tol) {
                throw std::invalid_argument("overlap matrix must be circulant");
            }
        }
    }
    // Inverse DFT of the first row gives the squared coefficient spectrum.
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            double angle = -2.0 * std::numbers::pi * static_cast<double>(j * m) /
                           static_cast<double>(n);
            acc += overlaps[0][m] * std::polar(1.0, angle);
        }
        min_sq = std::min(min_sq, acc.real() / static_cast<double>(n));
    }
    return DiscriminationProbability(clamp01(static_cast<double>(n) * min_sq));
}

std::vector<std::vector<std::complex<double>>> coherent_overlap_matrix(MeanPhotonNumber mu) {
    double m = mu.value();
    // <alpha | i^k alpha> = exp((i^k - 1) mu / 2) for the cyclic images.
    std::vector<std::complex<double>> row(4);
    for (int k = 0; k < 4; ++k) {
        std::complex<double> ik(kCosTable[(2 * k) & 7], kSinTable[(2 * k) & 7]);
        row[k] = std::exp((ik - 1.0) * (m / 2.0));
    }
    std::vector<std::vector<std::complex<double>>> gram(4, std::vector<std::complex<double>>(4));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            gram[i][j] = row[(j + 4 - i) % 4];
        }
    }
    return gram;
}

}  // namespace usdqkd
