#pragma once

#include <complex>
#include <vector>

#include "usdqkd/types.hpp"

namespace usdqkd {

/// Squared symmetric-subspace coefficients of one BB84 coherent signal state
/// with mean photon number mu. In the eigenbasis of the cyclic symmetry
/// operator,
///   |c_0|^2 = (1/4)(1 + e^-mu) + (1/2) e^(-mu/2) cos(mu/2)
///   |c_1|^2 = (1/4)(1 - e^-mu) + (1/2) e^(-mu/2) sin(mu/2)
///   |c_2|^2 = (1/4)(1 + e^-mu) - (1/2) e^(-mu/2) cos(mu/2)
///   |c_3|^2 = (1/4)(1 - e^-mu) - (1/2) e^(-mu/2) sin(mu/2)
/// Rounding can push the smallest entry a few ulp below zero near mu = 0;
/// entries are clamped to [0,1].
CoefficientQuartet coherent_coefficients(MeanPhotonNumber mu);

/// Squared coefficients of the four signal states conditioned on exactly n
/// photons: |c_j|^2 = 1/4 + 2^-(1+n/2) * {cos,sin}(pi n / 4) with the sign
/// pattern (+cos, +sin, -cos, -sin). All entries are exact dyadic rationals,
/// so the returned doubles are exact for every n >= 0.
CoefficientQuartet fock_conditional_coefficients(int n);

/// Optimal unambiguous-discrimination probability for four symmetric states
/// occurring with equal prior: P_D = 4 * min_j |c_j|^2.
DiscriminationProbability usd_probability(const CoefficientQuartet& quartet);

/// P_D for n-photon signal states. Zero for n <= 2 (fewer than three photons
/// cannot unambiguously identify one of four states), then
///   1 - 2^(1 - n/2)   for even n,
///   1 - 2^((1-n)/2)   for odd n.
/// Exactly equals usd_probability(fock_conditional_coefficients(n)).
DiscriminationProbability usd_probability_n(int n);

/// P_D of the source model at mean photon number mu. CoherentPure evaluates
/// the coherent quartet; PhaseAveragedFock uses the closed form
///   P_D = 1 - e^-mu (sqrt(2) sinh(mu/sqrt(2)) + 2 cosh(mu/sqrt(2)) - 1),
/// evaluated in a decaying-exponential arrangement that neither overflows
/// nor loses the mu^3/24 leading order near zero.
DiscriminationProbability usd_probability(MeanPhotonNumber mu, SourceModel model);

/// Failure (inconclusive-outcome) probability 1 - P_D. Kept as a separate
/// evaluation because for large mu the complement underflows in
/// usd_probability but remains meaningful here, e.g. 1 - P_D ~ e^-89 at
/// mu = 700 for the phase-averaged source.
double usd_failure_probability(MeanPhotonNumber mu, SourceModel model);

/// Poisson-weighted cross-check of the PhaseAveragedFock closed form:
/// sum_n e^-mu mu^n / n! * P_D(n), truncated once the remaining tail is
/// below tol. Intended for validation, not hot paths.
DiscriminationProbability usd_probability_series(MeanPhotonNumber mu, double tol = 1e-15);

/// P_D for N symmetric states given their Gram matrix of overlaps
/// <Psi_k|Psi_l>. The matrix must be square (N >= 2), circulant within
/// 1e-9, Hermitian with unit diagonal. The squared coefficient spectrum is
/// the inverse discrete Fourier transform of the first row; P_D is N times
/// its smallest value (clamped to [0,1]).
DiscriminationProbability symmetric_usd_from_overlaps(
    const std::vector<std::vector<std::complex<double>>>& overlaps);

/// Gram-matrix row for the four BB84 coherent states: overlap of the
/// reference state with its m-th cyclic image, exp((i^m - 1) mu / 2).
std::vector<std::vector<std::complex<double>>> coherent_overlap_matrix(MeanPhotonNumber mu);

}  // namespace usdqkd
