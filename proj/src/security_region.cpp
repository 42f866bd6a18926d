#include "usdqkd/security_region.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "usdqkd/click_model.hpp"
#include "usdqkd/usd_core.hpp"

namespace usdqkd {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kBoundaryEps = 1e-12;

}  // namespace

double necessary_threshold(MeanPhotonNumber mu, SourceModel model) {
    double m = mu.value();
    if (m == 0.0) {
        throw std::domain_error("necessary threshold requires mu > 0");
    }
    double p_d = usd_probability(mu, model).value();
    if (p_d < 0.5) {
        return -std::log1p(-p_d) / m;
    }
    // Take the log of the failure probability without forming it: its
    // leading exponential would underflow long before the threshold stops
    // being meaningful.
    if (model == SourceModel::PhaseAveragedFock) {
        double s = kInvSqrt2;
        double bracket = 1.0 +
                         (1.0 - s) / (1.0 + s) * std::exp(-std::numbers::sqrt2 * m) -
                         std::exp(-s * m) / (1.0 + s);
        return (1.0 - s) - (std::log1p(s) + std::log(bracket)) / m;
    }
    // Coherent failure probability e^(-m/2) (2 max-trig -+ e^(-m/2)); the
    // bracket is >= sqrt(2) - 1 on the max branch, so the log is safe.
    double e_half = std::exp(-0.5 * m);
    double c = 2.0 * std::cos(0.5 * m);
    double sn = 2.0 * std::sin(0.5 * m);
    double bracket = std::max(std::max(-e_half - c, -e_half + c),
                              std::max(e_half - sn, e_half + sn));
    return 0.5 - std::log(bracket) / m;
}

double mu2_threshold(ChannelParams channel, DetectorParams detector) {
    if (channel.eta_l() == 0.0) {
        throw std::domain_error("mu2 threshold requires eta_l > 0");
    }
    double eb = detector.eta_b();
    return -2.0 / (channel.eta_l() * eb) * std::log1p(-2.0 * eb / (4.0 - eb));
}

double f_criterion(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector) {
    ClickPoint w = working_point(mu, channel, detector);
    double eb = detector.eta_b();
    double p_d = usd_probability(mu, SourceModel::PhaseAveragedFock).value();
    return w.p_single * eb - 2.0 * w.p_double * (1.0 - eb) - p_d * eb * eb;
}

double small_etab_f(MeanPhotonNumber mu, ChannelParams channel, DetectorParams detector) {
    double t = channel.eta_l() * mu.value();
    double p_d = usd_probability(mu, SourceModel::PhaseAveragedFock).value();
    double eb = detector.eta_b();
    return eb * eb * (t - 0.5 * t * t - p_d);
}

CriticalEta critical_eta(MeanPhotonNumber mu) {
    double m = mu.value();
    if (m == 0.0) {
        throw std::domain_error("critical eta requires mu > 0");
    }
    double p_d = usd_probability(mu, SourceModel::PhaseAveragedFock).value();
    CriticalEta result;
    result.approx = p_d / m;
    if (p_d <= 0.5) {
        // (1 - sqrt(1 - 2 p)) / m, in the form that keeps full precision
        // when p is tiny.
        result.exact = 2.0 * p_d / (m * (1.0 + std::sqrt(1.0 - 2.0 * p_d)));
    }
    return result;
}

InsecurityPolygon build_insecurity_polygon(DetectorParams detector,
                                           DiscriminationProbability p_d,
                                           double truncation_tol) {
    if (!(truncation_tol > 0.0) || truncation_tol >= 1.0) {
        throw std::domain_error("polygon truncation tolerance must lie in (0,1)");
    }
    InsecurityPolygon polygon;
    polygon.p_d = p_d.value();
    if (polygon.p_d == 0.0) {
        polygon.n_max = 0;
        polygon.vertices = {ClickPoint{0.0, 0.0}};
        return polygon;
    }
    double survive = 1.0 - detector.eta_b();
    int n_max = 1;
    double power = survive;
    while (power >= truncation_tol) {
        ++n_max;
        power *= survive;
    }
    polygon.n_max = n_max;
    polygon.vertices.reserve(static_cast<std::size_t>(n_max) + 2);
    for (int n = 0; n <= n_max; ++n) {
        polygon.vertices.push_back(number_state_point(n, detector, p_d));
    }
    polygon.vertices.push_back(ClickPoint{polygon.p_d, polygon.p_d});
    return polygon;
}

bool polygon_contains(const InsecurityPolygon& polygon, ClickPoint p) {
    const auto& v = polygon.vertices;
    if (v.size() == 1) {
        return std::abs(p.p_single - v[0].p_single) <= kBoundaryEps &&
               std::abs(p.p_double - v[0].p_double) <= kBoundaryEps;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const ClickPoint& a = v[i];
        const ClickPoint& b = v[(i + 1) % v.size()];
        double ex = b.p_single - a.p_single;
        double ey = b.p_double - a.p_double;
        double cross = ex * (p.p_double - a.p_double) - ey * (p.p_single - a.p_single);
        // Scaling by the edge length makes the epsilon a distance, so the
        // test still resolves polygons that are themselves only ~1e-6 wide.
        if (cross < -kBoundaryEps * std::hypot(ex, ey)) {
            return false;
        }
    }
    return true;
}

SecurityVerdict classify(MeanPhotonNumber mu, ChannelParams channel,
                         DetectorParams detector, CriteriaMode mode) {
    SecurityVerdict result{};
    double m = mu.value();
    result.f = f_criterion(mu, channel, detector);
    result.mu2 = channel.eta_l() > 0.0 ? mu2_threshold(channel, detector)
                                       : std::numeric_limits<double>::infinity();
    double necessary =
        m > 0.0 ? necessary_threshold(mu, SourceModel::PhaseAveragedFock) : 0.0;
    result.necessary_margin = channel.eta_l() * detector.eta_b() - necessary;
    if (mode == CriteriaMode::PaperLinearized) {
        if (m >= result.mu2) {
            result.verdict = Verdict::Indeterminate;
        } else {
            result.verdict =
                result.f <= 0.0 ? Verdict::InsecureUnderUSD : Verdict::SecureAgainstUSD;
        }
        return result;
    }
    InsecurityPolygon polygon = build_insecurity_polygon(
        detector, usd_probability(mu, SourceModel::PhaseAveragedFock));
    result.verdict = polygon_contains(polygon, working_point(mu, channel, detector))
                         ? Verdict::InsecureUnderUSD
                         : Verdict::SecureAgainstUSD;
    return result;
}

std::vector<double> GridSpec::values() const {
    if (count < 1) {
        throw std::domain_error("grid needs at least one point");
    }
    if (log_spacing && (!(from > 0.0) || !(to > 0.0))) {
        throw std::domain_error("log-spaced grid endpoints must be > 0");
    }
    if (!std::isfinite(from) || !std::isfinite(to)) {
        throw std::domain_error("grid endpoints must be finite");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(from);
        return out;
    }
    double lf = log_spacing ? std::log(from) : from;
    double lt = log_spacing ? std::log(to) : to;
    for (int i = 0; i < count; ++i) {
        if (i == 0) {
            out.push_back(from);  // pin both endpoints exactly
            continue;
        }
        if (i == count - 1) {
            out.push_back(to);
            continue;
        }
        double t = static_cast<double>(i) / (count - 1);
        double v = lf + t * (lt - lf);
        out.push_back(log_spacing ? std::exp(v) : v);
    }
    return out;
}

const SecurityVerdict& SecurityMap::cell(int mu_index, int eta_index) const {
    return cells[static_cast<std::size_t>(mu_index) * eta_l_values.size() + eta_index];
}

SecurityMap security_map(const GridSpec& mu_grid, const GridSpec& eta_l_grid,
                         DetectorParams detector, CriteriaMode mode) {
    SecurityMap map;
    map.mu_values = mu_grid.values();
    map.eta_l_values = eta_l_grid.values();
    map.cells.reserve(map.mu_values.size() * map.eta_l_values.size());
    map.boundary.reserve(map.mu_values.size());
    for (double m : map.mu_values) {
        MeanPhotonNumber mu(m);
        // Geometric mode shares one polygon across the row; it depends on mu
        // only through p_d.
        std::vector<InsecurityPolygon> row_polygon;
        if (mode == CriteriaMode::Geometric) {
            row_polygon.push_back(build_insecurity_polygon(
                detector, usd_probability(mu, SourceModel::PhaseAveragedFock)));
        }
        for (double el : map.eta_l_values) {
            ChannelParams channel(el);
            if (mode == CriteriaMode::PaperLinearized) {
                map.cells.push_back(classify(mu, channel, detector, mode));
                continue;
            }
            SecurityVerdict v{};
            v.f = f_criterion(mu, channel, detector);
            v.mu2 = el > 0.0 ? mu2_threshold(channel, detector)
                             : std::numeric_limits<double>::infinity();
            double necessary =
                m > 0.0 ? necessary_threshold(mu, SourceModel::PhaseAveragedFock) : 0.0;
            v.necessary_margin = el * detector.eta_b() - necessary;
            v.verdict = polygon_contains(row_polygon.front(),
                                         working_point(mu, channel, detector))
                            ? Verdict::InsecureUnderUSD
                            : Verdict::SecureAgainstUSD;
            map.cells.push_back(v);
        }
        SecurityMapRow row{};
        row.mu = m;
        if (m > 0.0) {
            row.necessary_eta = necessary_threshold(mu, SourceModel::PhaseAveragedFock);
            CriticalEta crit = critical_eta(mu);
            row.critical_eta_exact = crit.exact;
            row.critical_eta_approx = crit.approx;
            row.eta_l_at_mu2 =
                -2.0 / (m * detector.eta_b()) *
                std::log1p(-2.0 * detector.eta_b() / (4.0 - detector.eta_b()));
        } else {
            row.necessary_eta = 0.0;
            row.critical_eta_exact = 0.0;
            row.critical_eta_approx = 0.0;
            row.eta_l_at_mu2 = std::numeric_limits<double>::infinity();
        }
        map.boundary.push_back(row);
    }
    return map;
}

}  // namespace usdqkd
