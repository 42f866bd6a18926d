#pragma once

#include <optional>
#include <vector>

#include "usdqkd/types.hpp"

namespace usdqkd {

/// Total transmission eta_L eta_B below which the USD attack reproduces
/// Bob's raw click rate and no secure key is possible:
///   eta_crit = -ln(1 - P_D(mu)) / mu.
/// Requires mu > 0. Monotone increasing in mu with limit 1 - 1/sqrt(2)
/// (~0.2929) for the phase-averaged source as mu -> infinity.
double necessary_threshold(MeanPhotonNumber mu, SourceModel model);

/// Mean photon number mu_2 at which the undisturbed working point crosses
/// the two-photon-resend coincidence level:
///   mu_2 = -(2 / (eta_L eta_B)) ln[(4 - 3 eta_B) / (4 - eta_B)].
/// Requires eta_L > 0. For mu < mu_2 the working point lies below the line
/// from the origin through the two-photon vertex, which reduces the
/// geometric membership test to the sign of the f_criterion.
double mu2_threshold(ChannelParams channel, DetectorParams detector);

/// Signed distance proxy for the working point against the edge joining the
/// one-photon and two-photon resend vertices:
///   F = x_w eta_B - 2 y_w (1 - eta_B) - P_D eta_B^2,
/// with P_D of the phase-averaged source. F <= 0 together with mu <= mu_2
/// certifies the working point is reachable by the attack. F(0) = 0 exactly.
double f_criterion(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector);

/// Leading behavior of F for small detector efficiency:
///   f = eta_B^2 (eta_L mu - eta_L^2 mu^2 / 2 - P_D(mu)).
/// Same sign as f_criterion in the eta_B -> 0 limit.
double small_etab_f(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector);

/// Critical line transmission at detector efficiency -> 0: the attack
/// covers the working point iff eta_L <= eta_crit.
struct CriticalEta {
    /// (1 - sqrt(1 - 2 P_D)) / mu. Absent when P_D(mu) > 1/2 (beyond
    /// mu ~ 4.081), where the small-eta_B quadratic has no real root and the
    /// attack covers every line transmission.
    std::optional<double> exact;
    /// Leading-order value P_D(mu) / mu.
    double approx;
};

CriticalEta critical_eta(MeanPhotonNumber mu);

/// Region of click statistics reachable by USD resend strategies: the
/// convex hull of the number-state points for N = 0..n_max plus the
/// saturation corner (p_d, p_d) approached as N -> infinity. Vertices are
/// in counterclockwise order starting at the origin.
struct InsecurityPolygon {
    std::vector<ClickPoint> vertices;
    double p_d;
    int n_max;  // smallest N with (1 - eta_B)^N < truncation tolerance
};

InsecurityPolygon build_insecurity_polygon(DetectorParams detector,
                                           DiscriminationProbability p_d,
                                           double truncation_tol = 1e-12);

/// Membership test with the boundary counted inside. Tolerance is applied
/// to the point-to-edge distance in probability units (a point is outside
/// only if it lies more than 1e-12 beyond some edge), so the test stays
/// meaningful when the polygon itself is only ~1e-6 across.
bool polygon_contains(const InsecurityPolygon& polygon, ClickPoint p);

enum class Verdict {
    SecureAgainstUSD,    // working point not reachable by the attack
    InsecureUnderUSD,    // attack reproduces single and coincidence rates
    Indeterminate,       // linearized test inapplicable (mu >= mu_2)
};

/// Geometric: point-in-polygon against the full insecurity region.
/// PaperLinearized: the two-condition test mu <= mu_2 and F <= 0.
enum class CriteriaMode {
    Geometric,
    PaperLinearized,
};

struct SecurityVerdict {
    Verdict verdict;
    double f;                 // f_criterion value
    double mu2;               // mu_2 threshold; +inf at eta_L = 0
    double necessary_margin;  // eta_L eta_B - necessary_threshold
};

/// Classify one parameter point. Both modes fill all diagnostics.
/// Geometric mode always decides: inside or on the polygon is insecure,
/// strictly outside is secure. PaperLinearized reports Indeterminate when
/// mu >= mu_2, where the linearized test does not apply; otherwise F <= 0
/// means insecure.
SecurityVerdict classify(MeanPhotonNumber mu, ChannelParams channel,
                         DetectorParams detector, CriteriaMode mode);

/// Inclusive 1-D sweep: count points, from/to endpoints, linear or
/// geometric spacing. count == 1 yields just {from}.
struct GridSpec {
    double from;
    double to;
    int count;
    bool log_spacing = false;

    std::vector<double> values() const;
};

/// Per-mu boundary diagnostics accompanying a verdict map.
struct SecurityMapRow {
    double mu;
    double necessary_eta;                    // necessary_threshold(mu)
    std::optional<double> critical_eta_exact;
    double critical_eta_approx;
    double eta_l_at_mu2;                     // eta_L solving mu_2(eta_L) = mu
};

struct SecurityMap {
    std::vector<double> mu_values;
    std::vector<double> eta_l_values;
    std::vector<SecurityVerdict> cells;  // row-major: mu index major
    std::vector<SecurityMapRow> boundary;

    const SecurityVerdict& cell(int mu_index, int eta_index) const;
};

SecurityMap security_map(const GridSpec& mu_grid, const GridSpec& eta_l_grid,
                         DetectorParams detector, CriteriaMode mode);

}  // namespace usdqkd
