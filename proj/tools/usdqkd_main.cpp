// usdqkd: analysis of the unambiguous-discrimination resend attack on
// four-state QKD with weak pulses. Every subcommand emits one CSV or JSON
// table; see README.md for column documentation.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "usdqkd/attacks.hpp"
#include "usdqkd/click_model.hpp"
#include "usdqkd/security_region.hpp"
#include "usdqkd/simulator.hpp"
#include "usdqkd/table.hpp"
#include "usdqkd/types.hpp"
#include "usdqkd/usd_core.hpp"

namespace {

using namespace usdqkd;

// Thrown for flag combinations CLI11 cannot express declaratively; maps to
// the usage-error exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Re-throws constructor validation with the offending flag named.
template <typename Make>
auto checked(const char* flag, Make&& make) {
    try {
        return make();
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string(flag) + ": " + e.what());
    }
}

struct OutputOptions {
    std::string format = "csv";
    std::string path = "-";
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", out.path,
                    "Output file; '-' for stdout. Relative paths are resolved "
                    "against $USDQKD_OUTPUT_DIR when it is set");
}

void emit(const Table& table, const OutputOptions& out) {
    OutputFormat format = out.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (out.path.empty() || out.path == "-") {
        write_table(table, format, std::cout);
        return;
    }
    std::filesystem::path path(out.path);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("USDQKD_OUTPUT_DIR")) {
            path = std::filesystem::path(dir) / path;
        }
    }
    std::ofstream stream(path);
    if (!stream) {
        throw std::domain_error("--output: cannot open " + path.string());
    }
    write_table(table, format, stream);
}

SourceModel parse_model(const std::string& name) {
    return name == "coherent" ? SourceModel::CoherentPure : SourceModel::PhaseAveragedFock;
}

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::SecureAgainstUSD: return "secure";
        case Verdict::InsecureUnderUSD: return "insecure";
        default: return "indeterminate";
    }
}

Table::Cell optional_cell(const std::optional<double>& value) {
    if (!value) {
        return std::monostate{};
    }
    return *value;
}

// "3" (point mass) or comma-separated "n:w" pairs, e.g. "1:0.25,2:0.75".
ResendDistribution parse_resend(const std::string& text) {
    std::vector<std::pair<int, double>> weights;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                weights.emplace_back(std::stoi(item), 1.0);
            } else {
                weights.emplace_back(std::stoi(item.substr(0, colon)),
                                     std::stod(item.substr(colon + 1)));
            }
        } catch (const std::logic_error&) {
            throw UsageError("--resend: cannot parse '" + item +
                             "'; expected N or N:WEIGHT[,N:WEIGHT...]");
        }
    }
    if (weights.empty()) {
        throw UsageError("--resend: empty distribution");
    }
    return checked("--resend", [&] { return ResendDistribution(weights); });
}

// ---- coefficients ----------------------------------------------------------

struct CoefficientsOptions {
    double mu = 0.0;
    int n = 0;
    OutputOptions out;
};

void run_coefficients(const CLI::App* cmd, const CoefficientsOptions& opt) {
    bool have_mu = cmd->count("--mu") > 0;
    bool have_n = cmd->count("--n") > 0;
    if (have_mu == have_n) {
        throw UsageError("coefficients: give exactly one of --mu (coherent state) "
                         "or --n (photon-number conditional)");
    }
    Table table;
    table.command = "coefficients";
    CoefficientQuartet quartet{};
    if (have_mu) {
        MeanPhotonNumber mu = checked("--mu", [&] { return MeanPhotonNumber(opt.mu); });
        quartet = coherent_coefficients(mu);
        table.add_meta("source", "coherent");
        table.add_meta("mu", opt.mu);
    } else {
        quartet = checked("--n", [&] { return fock_conditional_coefficients(opt.n); });
        table.add_meta("source", "fock-conditional");
        table.add_meta("n", format_double(opt.n));
    }
    table.columns = {"c0_sq", "c1_sq", "c2_sq", "c3_sq", "min_sq", "p_d"};
    table.rows.push_back({quartet.c_sq[0], quartet.c_sq[1], quartet.c_sq[2],
                          quartet.c_sq[3], quartet.min(),
                          usd_probability(quartet).value()});
    emit(table, opt.out);
}

// ---- pd --------------------------------------------------------------------

struct PdOptions {
    double mu = 0.0;
    std::string model = "fock";
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    bool log_spacing = false;
    OutputOptions out;
};

void run_pd(const CLI::App* cmd, const PdOptions& opt) {
    bool single = cmd->count("--mu") > 0;
    bool sweep = cmd->count("--from") > 0 || cmd->count("--to") > 0 || cmd->count("--steps") > 0;
    if (single == sweep) {
        throw UsageError("pd: give either --mu or a sweep (--from --to --steps)");
    }
    Table table;
    table.command = "pd";
    if (single) {
        MeanPhotonNumber mu = checked("--mu", [&] { return MeanPhotonNumber(opt.mu); });
        table.add_meta("model", opt.model);
        table.columns = {"mu", "p_d"};
        table.rows.push_back({opt.mu, usd_probability(mu, parse_model(opt.model)).value()});
        emit(table, opt.out);
        return;
    }
    GridSpec grid{opt.from, opt.to, opt.steps, opt.log_spacing};
    std::vector<double> mu_values =
        checked("--from/--to/--steps", [&] { return grid.values(); });
    table.columns = {"mu", "c0_sq", "c1_sq", "c2_sq", "c3_sq", "pd_coherent", "pd_fock"};
    for (double m : mu_values) {
        MeanPhotonNumber mu = checked("--from", [&] { return MeanPhotonNumber(m); });
        CoefficientQuartet quartet = coherent_coefficients(mu);
        table.rows.push_back({m, quartet.c_sq[0], quartet.c_sq[1], quartet.c_sq[2],
                              quartet.c_sq[3],
                              usd_probability(mu, SourceModel::CoherentPure).value(),
                              usd_probability(mu, SourceModel::PhaseAveragedFock).value()});
    }
    emit(table, opt.out);
}

// ---- curves ----------------------------------------------------------------

struct CurvesOptions {
    double eta_b = 0.0;
    double mu = 0.0;
    double p_d = 0.0;
    int steps = 256;
    OutputOptions out;
};

DiscriminationProbability resolve_p_d(const CLI::App* cmd, double mu, double p_d,
                                      const char* context) {
    bool have_mu = cmd->count("--mu") > 0;
    bool have_pd = cmd->count("--pd") > 0;
    if (have_mu == have_pd) {
        throw UsageError(std::string(context) +
                         ": give exactly one of --mu or --pd");
    }
    if (have_pd) {
        return checked("--pd", [&] { return DiscriminationProbability(p_d); });
    }
    MeanPhotonNumber mean = checked("--mu", [&] { return MeanPhotonNumber(mu); });
    return usd_probability(mean, SourceModel::PhaseAveragedFock);
}

void run_curves(const CLI::App* cmd, const CurvesOptions& opt) {
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    DiscriminationProbability p_d = resolve_p_d(cmd, opt.mu, opt.p_d, "curves");
    if (opt.steps < 1) {
        throw std::domain_error("--steps: must be >= 1");
    }
    Table table;
    table.command = "curves";
    table.add_meta("eta_b", opt.eta_b);
    table.add_meta("p_d", p_d.value());
    table.add_meta("kappa", n_curve_exponent(detector));
    table.columns = {"curve", "x", "y"};
    for (int i = 0; i <= opt.steps; ++i) {
        double x = p_d.value() * static_cast<double>(i) / opt.steps;
        table.rows.push_back({std::string("resend"), x, n_curve_y(x, detector, p_d)});
    }
    for (int i = 0; i <= opt.steps; ++i) {
        double x = static_cast<double>(i) / opt.steps;
        table.rows.push_back({std::string("working"), x, working_curve_y(x)});
    }
    emit(table, opt.out);
}

// ---- region ----------------------------------------------------------------

struct RegionOptions {
    double eta_b = 0.0;
    double mu = 0.0;
    double p_d = 0.0;
    double tol = 1e-12;
    OutputOptions out;
};

void run_region(const CLI::App* cmd, const RegionOptions& opt) {
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    DiscriminationProbability p_d = resolve_p_d(cmd, opt.mu, opt.p_d, "region");
    InsecurityPolygon polygon =
        checked("--tol", [&] { return build_insecurity_polygon(detector, p_d, opt.tol); });
    Table table;
    table.command = "region";
    table.add_meta("eta_b", opt.eta_b);
    table.add_meta("p_d", polygon.p_d);
    table.add_meta("n_max", std::to_string(polygon.n_max));
    table.columns = {"n", "p_single", "p_double"};
    for (std::size_t i = 0; i < polygon.vertices.size(); ++i) {
        bool saturation = polygon.p_d > 0.0 && i + 1 == polygon.vertices.size();
        Table::Cell n = saturation ? Table::Cell{std::monostate{}}
                                   : Table::Cell{static_cast<std::int64_t>(i)};
        table.rows.push_back({n, polygon.vertices[i].p_single, polygon.vertices[i].p_double});
    }
    emit(table, opt.out);
}

// ---- classify --------------------------------------------------------------

struct ClassifyOptions {
    double mu = 0.0;
    double eta_l = 0.0;
    double eta_b = 0.0;
    std::string mode = "geometric";
    OutputOptions out;
};

CriteriaMode parse_mode(const std::string& name) {
    return name == "paper" ? CriteriaMode::PaperLinearized : CriteriaMode::Geometric;
}

void append_verdict_cells(std::vector<Table::Cell>& row, const SecurityVerdict& verdict) {
    row.push_back(std::string(verdict_name(verdict.verdict)));
    row.push_back(verdict.f);
    row.push_back(verdict.mu2);
    row.push_back(verdict.necessary_margin);
}

void run_classify(const ClassifyOptions& opt) {
    MeanPhotonNumber mu = checked("--mu", [&] { return MeanPhotonNumber(opt.mu); });
    ChannelParams channel = checked("--eta-l", [&] { return ChannelParams(opt.eta_l); });
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    SecurityVerdict verdict = classify(mu, channel, detector, parse_mode(opt.mode));
    ClickPoint w = working_point(mu, channel, detector);
    Table table;
    table.command = "classify";
    table.add_meta("mu", opt.mu);
    table.add_meta("eta_l", opt.eta_l);
    table.add_meta("eta_b", opt.eta_b);
    table.add_meta("mode", opt.mode);
    table.columns = {"verdict", "f", "mu2", "necessary_margin", "p_d", "p_single", "p_double"};
    std::vector<Table::Cell> row;
    append_verdict_cells(row, verdict);
    row.push_back(usd_probability(mu, SourceModel::PhaseAveragedFock).value());
    row.push_back(w.p_single);
    row.push_back(w.p_double);
    table.rows.push_back(std::move(row));
    emit(table, opt.out);
}

// ---- map -------------------------------------------------------------------

struct MapOptions {
    double mu_from = 0.0, mu_to = 0.0;
    int mu_steps = 0;
    bool mu_log = false;
    double eta_from = 0.0, eta_to = 0.0;
    int eta_steps = 0;
    bool eta_log = false;
    double eta_b = 0.0;
    std::string mode = "geometric";
    std::string model = "fock";
    bool necessary = false;
    bool small_etab = false;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool log_spacing = false;
    OutputOptions out;
};

void run_map_necessary(const MapOptions& opt) {
    GridSpec grid{opt.from, opt.to, opt.steps, opt.log_spacing};
    std::vector<double> mu_values =
        checked("--from/--to/--steps", [&] { return grid.values(); });
    Table table;
    table.command = "map";
    table.add_meta("variant", "necessary");
    table.add_meta("model", opt.model);
    table.columns = {"mu", "eta_total_crit"};
    SourceModel model = parse_model(opt.model);
    for (double m : mu_values) {
        MeanPhotonNumber mu = checked("--from", [&] { return MeanPhotonNumber(m); });
        table.rows.push_back({m, necessary_threshold(mu, model)});
    }
    emit(table, opt.out);
}

void run_map_small_etab(const MapOptions& opt) {
    GridSpec grid{opt.from, opt.to, opt.steps, opt.log_spacing};
    std::vector<double> mu_values =
        checked("--from/--to/--steps", [&] { return grid.values(); });
    Table table;
    table.command = "map";
    table.add_meta("variant", "small-etab");
    table.columns = {"mu", "critical_eta_exact", "critical_eta_approx", "necessary_eta",
                     "eta_l_mu2_limit"};
    for (double m : mu_values) {
        MeanPhotonNumber mu = checked("--from", [&] { return MeanPhotonNumber(m); });
        CriticalEta crit = critical_eta(mu);
        table.rows.push_back({m, optional_cell(crit.exact), crit.approx,
                              necessary_threshold(mu, SourceModel::PhaseAveragedFock),
                              1.0 / m});
    }
    emit(table, opt.out);
}

void run_map(const CLI::App* cmd, const MapOptions& opt) {
    if (opt.necessary && opt.small_etab) {
        throw UsageError("map: --necessary and --small-etab are mutually exclusive");
    }
    if (opt.necessary) {
        run_map_necessary(opt);
        return;
    }
    if (opt.small_etab) {
        run_map_small_etab(opt);
        return;
    }
    for (const char* flag : {"--mu-from", "--mu-to", "--mu-steps", "--eta-from",
                             "--eta-to", "--eta-steps", "--eta-b"}) {
        if (cmd->count(flag) == 0) {
            throw UsageError(std::string("map: ") + flag +
                             " is required for the verdict grid (or use "
                             "--necessary / --small-etab)");
        }
    }
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    GridSpec mu_grid{opt.mu_from, opt.mu_to, opt.mu_steps, opt.mu_log};
    GridSpec eta_grid{opt.eta_from, opt.eta_to, opt.eta_steps, opt.eta_log};
    checked("--mu-from/--mu-to/--mu-steps", [&] { return mu_grid.values(); });
    checked("--eta-from/--eta-to/--eta-steps", [&] { return eta_grid.values(); });
    for (double m : mu_grid.values()) {
        checked("--mu-from", [&] { return MeanPhotonNumber(m); });
    }
    for (double e : eta_grid.values()) {
        checked("--eta-from", [&] { return ChannelParams(e); });
    }
    SecurityMap map = security_map(mu_grid, eta_grid, detector, parse_mode(opt.mode));
    Table table;
    table.command = "map";
    table.add_meta("variant", "grid");
    table.add_meta("eta_b", opt.eta_b);
    table.add_meta("mode", opt.mode);
    table.columns = {"mu", "eta_l", "verdict", "f", "mu2", "necessary_margin",
                     "necessary_eta", "critical_eta_exact", "critical_eta_approx",
                     "eta_l_at_mu2"};
    for (std::size_t i = 0; i < map.mu_values.size(); ++i) {
        const SecurityMapRow& boundary = map.boundary[i];
        for (std::size_t j = 0; j < map.eta_l_values.size(); ++j) {
            const SecurityVerdict& cell = map.cell(static_cast<int>(i), static_cast<int>(j));
            std::vector<Table::Cell> row{map.mu_values[i], map.eta_l_values[j]};
            append_verdict_cells(row, cell);
            row.push_back(boundary.necessary_eta);
            row.push_back(optional_cell(boundary.critical_eta_exact));
            row.push_back(boundary.critical_eta_approx);
            row.push_back(boundary.eta_l_at_mu2);
            table.rows.push_back(std::move(row));
        }
    }
    emit(table, opt.out);
}

// ---- fscan -----------------------------------------------------------------

struct FscanOptions {
    double eta_l = 0.0;
    double eta_b = 0.0;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool log_spacing = false;
    OutputOptions out;
};

void run_fscan(const FscanOptions& opt) {
    ChannelParams channel = checked("--eta-l", [&] { return ChannelParams(opt.eta_l); });
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    GridSpec grid{opt.from, opt.to, opt.steps, opt.log_spacing};
    std::vector<double> mu_values =
        checked("--from/--to/--steps", [&] { return grid.values(); });
    Table table;
    table.command = "fscan";
    table.add_meta("eta_l", opt.eta_l);
    table.add_meta("eta_b", opt.eta_b);
    auto f_at = [&](double m) {
        return f_criterion(MeanPhotonNumber(m), channel, detector);
    };
    std::vector<double> f_values;
    f_values.reserve(mu_values.size());
    for (double m : mu_values) {
        checked("--from", [&] { return MeanPhotonNumber(m); });
        f_values.push_back(f_at(m));
    }
    // Bisect the first sign change; the scan itself brackets the root.
    std::optional<double> zero;
    for (std::size_t i = 0; i + 1 < mu_values.size(); ++i) {
        if (f_values[i] > 0.0 && f_values[i + 1] <= 0.0) {
            double lo = mu_values[i];
            double hi = mu_values[i + 1];
            for (int iter = 0; iter < 80 && hi - lo > 1e-12; ++iter) {
                double mid = 0.5 * (lo + hi);
                (f_at(mid) > 0.0 ? lo : hi) = mid;
            }
            zero = 0.5 * (lo + hi);
            break;
        }
    }
    if (zero) {
        table.add_meta("zero_mu", *zero);
    }
    table.columns = {"mu", "f"};
    for (std::size_t i = 0; i < mu_values.size(); ++i) {
        table.rows.push_back({mu_values[i], f_values[i]});
    }
    emit(table, opt.out);
}

// ---- beamsplit -------------------------------------------------------------

struct BeamsplitOptions {
    double mu = 0.0;
    double eta = 0.0;
    bool two_photon = false;
    double from = 0.0, to = 0.0;
    int steps = 0;
    bool log_spacing = false;
    OutputOptions out;
};

void run_beamsplit(const CLI::App* cmd, const BeamsplitOptions& opt) {
    if (cmd->count("--eta") == 0) {
        throw UsageError("beamsplit: --eta is required");
    }
    Table table;
    table.command = "beamsplit";
    table.add_meta("eta", opt.eta);
    if (opt.two_photon) {
        TwoPhotonSplit split = checked("--eta", [&] { return two_photon_split(opt.eta); });
        table.add_meta("variant", "two-photon");
        table.columns = {"p_bob0", "p_bob1", "p_bob2"};
        table.rows.push_back({split.p_bob0, split.p_bob1, split.p_bob2});
        emit(table, opt.out);
        return;
    }
    bool single = cmd->count("--mu") > 0;
    bool sweep = cmd->count("--from") > 0 || cmd->count("--to") > 0 || cmd->count("--steps") > 0;
    if (single == sweep) {
        throw UsageError("beamsplit: give either --mu or a sweep (--from --to --steps)");
    }
    if (single) {
        MeanPhotonNumber mu = checked("--mu", [&] { return MeanPhotonNumber(opt.mu); });
        BeamsplitReport report = checked("--eta", [&] { return beamsplit_report(mu, opt.eta); });
        table.add_meta("mu", opt.mu);
        table.columns = {"p_exp", "p_split", "g_bs"};
        table.rows.push_back({report.p_exp, report.p_split, report.g_bs});
        emit(table, opt.out);
        return;
    }
    GridSpec grid{opt.from, opt.to, opt.steps, opt.log_spacing};
    std::vector<double> mu_values =
        checked("--from/--to/--steps", [&] { return grid.values(); });
    table.columns = {"mu", "p_exp", "p_split", "g_bs"};
    for (double m : mu_values) {
        MeanPhotonNumber mu = checked("--from", [&] { return MeanPhotonNumber(m); });
        BeamsplitReport report = checked("--eta", [&] { return beamsplit_report(mu, opt.eta); });
        table.rows.push_back({m, report.p_exp, report.p_split, report.g_bs});
    }
    emit(table, opt.out);
}

// ---- compare ---------------------------------------------------------------

struct CompareOptions {
    double mu = 0.0;
    double eta_l = 0.0;
    double eta_b = 0.0;
    OutputOptions out;
};

void run_compare(const CompareOptions& opt) {
    MeanPhotonNumber mu = checked("--mu", [&] { return MeanPhotonNumber(opt.mu); });
    ChannelParams channel = checked("--eta-l", [&] { return ChannelParams(opt.eta_l); });
    DetectorParams detector = checked("--eta-b", [&] { return DetectorParams(opt.eta_b); });
    AttackComparison comparison = compare_attacks(mu, channel, detector);
    Table table;
    table.command = "compare";
    table.add_meta("mu", opt.mu);
    table.add_meta("eta_l", opt.eta_l);
    table.add_meta("eta_b", opt.eta_b);
    table.columns = {"p_exp", "p_split", "g_bs", "usd_verdict", "usd_p_d", "f", "mu2",
                     "necessary_margin", "crossover_eta"};
    std::vector<Table::Cell> row{
        comparison.beamsplit.p_exp,
        comparison.beamsplit.p_split,
        comparison.beamsplit.g_bs,
        std::string(verdict_name(comparison.usd_verdict.verdict)),
        comparison.usd_p_d.value(),
        comparison.usd_verdict.f,
        comparison.usd_verdict.mu2,
        comparison.usd_verdict.necessary_margin,
        optional_cell(comparison.crossover_eta),
    };
    table.rows.push_back(std::move(row));
    emit(table, opt.out);
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
    double mu = 0.0;
    double eta_l = 1.0;
    double eta_b = 1.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double attack_fraction = 1.0;
    std::string resend;
    unsigned threads = 0;
    OutputOptions out;
};

void run_simulate(const CLI::App* cmd, const SimulateOptions& opt) {
    bool have_resend = cmd->count("--resend") > 0;
    bool have_fraction = cmd->count("--attack-fraction") > 0;
    if (have_fraction && !have_resend) {
        throw UsageError("simulate: --attack-fraction needs --resend");
    }
    EveStrategy eve;
    if (have_resend) {
        eve = UsdAttack{parse_resend(opt.resend), opt.attack_fraction};
    }
    SimConfig config{
        checked("--mu", [&] { return MeanPhotonNumber(opt.mu); }),
        checked("--eta-l", [&] { return ChannelParams(opt.eta_l); }),
        checked("--eta-b", [&] { return DetectorParams(opt.eta_b); }),
        std::move(eve),
        opt.trials,
        opt.seed,
    };
    SimReport report = run_simulation(config, opt.threads);
    Table table;
    table.command = "simulate";
    table.add_meta("mu", opt.mu);
    table.add_meta("eta_l", opt.eta_l);
    table.add_meta("eta_b", opt.eta_b);
    table.add_meta("trials", std::to_string(opt.trials));
    table.add_meta("seed", std::to_string(opt.seed));
    table.add_meta("attack_fraction", have_resend ? format_double(opt.attack_fraction) : "0");
    table.add_meta("resend", have_resend ? opt.resend : "-");
    table.columns = {"n_same_basis", "n_diff_basis", "single_clicks_same_basis",
                     "double_clicks_same_basis", "single_clicks_diff_basis",
                     "double_clicks_diff_basis", "attacked_trials", "usd_successes",
                     "est_single", "est_double", "predicted_single", "predicted_double",
                     "ci95_single", "ci95_double", "z_single", "z_double"};
    const SimCounts& counts = report.counts;
    table.rows.push_back({
        static_cast<std::int64_t>(counts.n_same_basis),
        static_cast<std::int64_t>(counts.n_diff_basis),
        static_cast<std::int64_t>(counts.single_clicks_same_basis),
        static_cast<std::int64_t>(counts.double_clicks_same_basis),
        static_cast<std::int64_t>(counts.single_clicks_diff_basis),
        static_cast<std::int64_t>(counts.double_clicks_diff_basis),
        static_cast<std::int64_t>(counts.attacked_trials),
        static_cast<std::int64_t>(counts.usd_successes),
        report.est.p_single,
        report.est.p_double,
        report.predicted.p_single,
        report.predicted.p_double,
        report.ci95_single,
        report.ci95_double,
        report.z_single,
        report.z_double,
    });
    emit(table, opt.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Unambiguous-discrimination attack analysis for four-state QKD with "
        "weak coherent pulses"};
    app.require_subcommand(1);

    CoefficientsOptions coefficients_opt;
    CLI::App* coefficients_cmd = app.add_subcommand(
        "coefficients", "Squared symmetric-state coefficients |c_j|^2");
    coefficients_cmd->add_option("--mu", coefficients_opt.mu,
                                 "Mean photon number (coherent-state quartet)");
    coefficients_cmd->add_option("--n", coefficients_opt.n,
                                 "Photon number (conditional quartet)");
    add_output_options(coefficients_cmd, coefficients_opt.out);

    PdOptions pd_opt;
    CLI::App* pd_cmd =
        app.add_subcommand("pd", "Discrimination probability P_D, single point or sweep");
    pd_cmd->add_option("--mu", pd_opt.mu, "Mean photon number");
    pd_cmd->add_option("--model", pd_opt.model, "Source model: fock or coherent")
        ->check(CLI::IsMember({"fock", "coherent"}));
    pd_cmd->add_option("--from", pd_opt.from, "Sweep start");
    pd_cmd->add_option("--to", pd_opt.to, "Sweep end (inclusive)");
    pd_cmd->add_option("--steps", pd_opt.steps, "Sweep point count");
    pd_cmd->add_flag("--log", pd_opt.log_spacing, "Geometric spacing");
    add_output_options(pd_cmd, pd_opt.out);

    CurvesOptions curves_opt;
    CLI::App* curves_cmd = app.add_subcommand(
        "curves", "Resend-family lower curve and the undisturbed working curve");
    curves_cmd->add_option("--eta-b", curves_opt.eta_b, "Detector efficiency")->required();
    curves_cmd->add_option("--mu", curves_opt.mu, "Mean photon number fixing p_d");
    curves_cmd->add_option("--pd", curves_opt.p_d, "Discrimination probability directly");
    curves_cmd->add_option("--steps", curves_opt.steps, "Samples per curve (default 256)");
    add_output_options(curves_cmd, curves_opt.out);

    RegionOptions region_opt;
    CLI::App* region_cmd =
        app.add_subcommand("region", "Vertices of the insecurity polygon");
    region_cmd->add_option("--eta-b", region_opt.eta_b, "Detector efficiency")->required();
    region_cmd->add_option("--mu", region_opt.mu, "Mean photon number fixing p_d");
    region_cmd->add_option("--pd", region_opt.p_d, "Discrimination probability directly");
    region_cmd->add_option("--tol", region_opt.tol,
                           "Truncation tolerance for the vertex count (default 1e-12)");
    add_output_options(region_cmd, region_opt.out);

    ClassifyOptions classify_opt;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Security verdict for one (mu, eta_l, eta_b)");
    classify_cmd->add_option("--mu", classify_opt.mu, "Mean photon number")->required();
    classify_cmd->add_option("--eta-l", classify_opt.eta_l, "Line transmission")->required();
    classify_cmd->add_option("--eta-b", classify_opt.eta_b, "Detector efficiency")->required();
    classify_cmd->add_option("--mode", classify_opt.mode, "geometric or paper")
        ->check(CLI::IsMember({"geometric", "paper"}));
    add_output_options(classify_cmd, classify_opt.out);

    MapOptions map_opt;
    CLI::App* map_cmd = app.add_subcommand(
        "map", "Verdict grid over (mu, eta_l), or 1-D boundary curves");
    map_cmd->add_option("--mu-from", map_opt.mu_from, "Grid: mu start");
    map_cmd->add_option("--mu-to", map_opt.mu_to, "Grid: mu end");
    map_cmd->add_option("--mu-steps", map_opt.mu_steps, "Grid: mu point count");
    map_cmd->add_flag("--mu-log", map_opt.mu_log, "Grid: geometric mu spacing");
    map_cmd->add_option("--eta-from", map_opt.eta_from, "Grid: eta_l start");
    map_cmd->add_option("--eta-to", map_opt.eta_to, "Grid: eta_l end");
    map_cmd->add_option("--eta-steps", map_opt.eta_steps, "Grid: eta_l point count");
    map_cmd->add_flag("--eta-log", map_opt.eta_log, "Grid: geometric eta_l spacing");
    map_cmd->add_option("--eta-b", map_opt.eta_b, "Detector efficiency (grid variant)");
    map_cmd->add_option("--mode", map_opt.mode, "geometric or paper")
        ->check(CLI::IsMember({"geometric", "paper"}));
    map_cmd->add_flag("--necessary", map_opt.necessary,
                      "Emit the necessary threshold on eta_L*eta_B versus mu");
    map_cmd->add_flag("--small-etab", map_opt.small_etab,
                      "Emit the small-eta_B critical line-transmission curves versus mu");
    map_cmd->add_option("--model", map_opt.model,
                        "Source model for --necessary: fock or coherent")
        ->check(CLI::IsMember({"fock", "coherent"}));
    map_cmd->add_option("--from", map_opt.from, "1-D variants: mu start");
    map_cmd->add_option("--to", map_opt.to, "1-D variants: mu end");
    map_cmd->add_option("--steps", map_opt.steps, "1-D variants: mu point count");
    map_cmd->add_flag("--log", map_opt.log_spacing, "1-D variants: geometric spacing");
    add_output_options(map_cmd, map_opt.out);

    FscanOptions fscan_opt;
    CLI::App* fscan_cmd =
        app.add_subcommand("fscan", "F criterion versus mu, with its zero when bracketed");
    fscan_cmd->add_option("--eta-l", fscan_opt.eta_l, "Line transmission")->required();
    fscan_cmd->add_option("--eta-b", fscan_opt.eta_b, "Detector efficiency")->required();
    fscan_cmd->add_option("--from", fscan_opt.from, "mu start")->required();
    fscan_cmd->add_option("--to", fscan_opt.to, "mu end")->required();
    fscan_cmd->add_option("--steps", fscan_opt.steps, "mu point count")->required();
    fscan_cmd->add_flag("--log", fscan_opt.log_spacing, "Geometric spacing");
    add_output_options(fscan_cmd, fscan_opt.out);

    BeamsplitOptions beamsplit_opt;
    CLI::App* beamsplit_cmd = app.add_subcommand(
        "beamsplit", "Beamsplitting-attack probabilities and surviving gain");
    beamsplit_cmd->add_option("--mu", beamsplit_opt.mu, "Mean photon number");
    beamsplit_cmd->add_option("--eta", beamsplit_opt.eta, "Beamsplitter transmission");
    beamsplit_cmd->add_flag("--two-photon", beamsplit_opt.two_photon,
                            "Emit the two-photon split probabilities instead");
    beamsplit_cmd->add_option("--from", beamsplit_opt.from, "Sweep: mu start");
    beamsplit_cmd->add_option("--to", beamsplit_opt.to, "Sweep: mu end");
    beamsplit_cmd->add_option("--steps", beamsplit_opt.steps, "Sweep: mu point count");
    beamsplit_cmd->add_flag("--log", beamsplit_opt.log_spacing, "Sweep: geometric spacing");
    add_output_options(beamsplit_cmd, beamsplit_opt.out);

    CompareOptions compare_opt;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "Beamsplitting gain versus the USD verdict at one point");
    compare_cmd->add_option("--mu", compare_opt.mu, "Mean photon number")->required();
    compare_cmd->add_option("--eta-l", compare_opt.eta_l, "Line transmission")->required();
    compare_cmd->add_option("--eta-b", compare_opt.eta_b, "Detector efficiency")->required();
    add_output_options(compare_cmd, compare_opt.out);

    SimulateOptions simulate_opt;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo click statistics");
    simulate_cmd->add_option("--mu", simulate_opt.mu, "Mean photon number")->required();
    simulate_cmd->add_option("--eta-l", simulate_opt.eta_l, "Line transmission (default 1)");
    simulate_cmd->add_option("--eta-b", simulate_opt.eta_b, "Detector efficiency (default 1)");
    simulate_cmd->add_option("--trials", simulate_opt.trials, "Trial count")->required();
    simulate_cmd->add_option("--seed", simulate_opt.seed, "RNG seed")->required();
    simulate_cmd->add_option("--attack-fraction", simulate_opt.attack_fraction,
                             "Fraction of pulses Eve attacks (default 1 with --resend)");
    simulate_cmd->add_option("--resend", simulate_opt.resend,
                             "Eve's resend distribution: N or N:W[,N:W...]");
    simulate_cmd->add_option("--threads", simulate_opt.threads,
                             "Worker count; 0 = hardware (result is identical)");
    add_output_options(simulate_cmd, simulate_opt.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*coefficients_cmd) {
            run_coefficients(coefficients_cmd, coefficients_opt);
        } else if (*pd_cmd) {
            run_pd(pd_cmd, pd_opt);
        } else if (*curves_cmd) {
            run_curves(curves_cmd, curves_opt);
        } else if (*region_cmd) {
            run_region(region_cmd, region_opt);
        } else if (*classify_cmd) {
            run_classify(classify_opt);
        } else if (*map_cmd) {
            run_map(map_cmd, map_opt);
        } else if (*fscan_cmd) {
            run_fscan(fscan_opt);
        } else if (*beamsplit_cmd) {
            run_beamsplit(beamsplit_cmd, beamsplit_opt);
        } else if (*compare_cmd) {
            run_compare(compare_opt);
        } else if (*simulate_cmd) {
            run_simulate(simulate_cmd, simulate_opt);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
