// pcfcheck: evaluate a single representation, pair or limit, or run the
// verification suites and emit text, CSV or JSON reports.
//
// Exit status: 0 all rows pass, 1 a suite row failed (or a computation did
// not converge), 2 bad arguments.

#include "pcf/errors.hpp"
#include "pcf/laplace_pairs.hpp"
#include "pcf/limits.hpp"
#include "pcf/product_reps.hpp"
#include "pcf/special_fn.hpp"
#include "pcf/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ArgumentError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Config
{
    std::string format = "text";
    std::string out;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::optional<std::string> entry;

    // eval
    std::optional<std::string> rep;
    std::optional<int> pair;
    bool pcf = false;
    double v = -1.0, x = 0.0, y = 0.0, s = 1.0, alpha = 0.0, c = 0.0, k = 0.0;
    std::optional<double> beta;

    std::vector<double> v_grid, s_grid, beta_grid;
};

void add_output_flags(CLI::App* cmd, Config& cfg)
{
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
}

void add_suite_flags(CLI::App* cmd, Config& cfg)
{
    add_output_flags(cmd, cfg);
    cmd->add_option("--tol", cfg.tol, "Override every row tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "Jitter the (x, y) grid; 0 keeps the fixed grid");
}

std::string format_value(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16g", value);
    return buf;
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw ArgumentError(message);
    }
}

/// Evaluates the quantity selected by --rep, --pair, --entry or --pcf.
double evaluate(const Config& cfg)
{
    const int selected = static_cast<int>(cfg.rep.has_value()) + static_cast<int>(cfg.pair.has_value()) +
                         static_cast<int>(cfg.entry.has_value()) + static_cast<int>(cfg.pcf);
    require(selected == 1, "eval: give exactly one of --rep, --pair, --entry, --pcf");

    if (cfg.pcf) {
        return pcf::pcf_value(cfg.v, cfg.x);
    }
    if (cfg.pair) {
        require(*cfg.pair >= 1 && *cfg.pair <= pcf::kPairCount, "eval: --pair must be 1..6");
        const pcf::PairParams p{cfg.beta.value_or(1.0), cfg.c, cfg.x, cfg.y};
        return pcf::table1_transform(*cfg.pair, cfg.s, p);
    }
    if (cfg.entry) {
        const auto entry = pcf::parse_limit_entry(*cfg.entry);
        require(entry.has_value(), "eval: unknown limit entry '" + *cfg.entry + "'");
        // The named ratio specialisations carry their own parameters.
        pcf::LimitCase c{*entry, cfg.s, cfg.alpha, cfg.x, cfg.y};
        if (*entry == pcf::LimitEntry::RatioGolden) {
            c = pcf::LimitCase::golden_ratio();
        } else if (*entry == pcf::LimitEntry::RatioS4) {
            c = pcf::LimitCase::ratio_s4();
        }
        // With --beta the finite-beta left-hand side, otherwise the limit.
        return cfg.beta ? pcf::limit_lhs(c, *cfg.beta) : pcf::limit_rhs(c);
    }

    const auto id = pcf::parse_rep_id(*cfg.rep);
    require(id.has_value(), "eval: unknown representation '" + *cfg.rep + "'");
    const pcf::EvalPoint p = pcf::EvalPoint::make(cfg.v, cfg.x, cfg.y);
    switch (*id) {
    case pcf::RepId::TimeForm:
        return pcf::dv_dv_time_form(p, cfg.beta.value_or(1.0)).value;
    case pcf::RepId::Malyshev:
        return pcf::malyshev_same_arg(cfg.v, cfg.x);
    case pcf::RepId::Glasser:
        return pcf::glasser_form(cfg.v, cfg.x, cfg.y);
    case pcf::RepId::SinglePcf:
        return pcf::single_pcf(cfg.v, cfg.x);
    case pcf::RepId::ErfcProduct:
        return pcf::erfc_product(cfg.x, cfg.y);
    case pcf::RepId::K14:
        return pcf::k14_rep(cfg.x);
    case pcf::RepId::K14D32:
        return pcf::k14_times_d32(cfg.x, cfg.y);
    default:
        if (cfg.k != 0.0) {
            require(cfg.k == static_cast<int>(cfg.k), "eval: --k must be an integer");
            return pcf::product_by_offset(p, static_cast<int>(cfg.k));
        }
        return pcf::evaluate_table_rep(*id, p).value;
    }
}

void write_eval(std::ostream& out, const Config& cfg, double value)
{
    if (cfg.format == "json") {
        out << nlohmann::json{{"value", std::isfinite(value) ? nlohmann::json(value) : nlohmann::json()}}.dump()
            << '\n';
    } else if (cfg.format == "csv") {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.16e", value);
        out << "value\n" << buf << '\n';
    } else {
        out << format_value(value) << '\n';
    }
}

void write_report(std::ostream& out, const Config& cfg, const pcf::VerificationReport& report)
{
    if (cfg.format == "csv") {
        pcf::write_csv(out, report);
    } else if (cfg.format == "json") {
        pcf::write_json(out, report);
    } else {
        pcf::write_text(out, report);
    }
}

void check_entry(const Config& cfg, const std::vector<std::string>& allowed, const char* what)
{
    if (!cfg.entry) {
        return;
    }
    require(std::find(allowed.begin(), allowed.end(), *cfg.entry) != allowed.end(),
            std::string("unknown ") + what + " '" + *cfg.entry + "'");
}

bool strictly_decreasing_positive(const std::vector<double>& g)
{
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0) || (i > 0 && !(g[i] < g[i - 1]))) {
            return false;
        }
    }
    return true;
}

bool all_positive(const std::vector<double>& g)
{
    return std::all_of(g.begin(), g.end(), [](double a) { return a > 0.0; });
}

pcf::RepsOptions reps_options(const Config& cfg)
{
    pcf::RepsOptions o;
    o.tol = cfg.tol;
    o.seed = cfg.seed;
    if (cfg.entry) {
        const std::vector<std::string> ids = pcf::reps_case_ids();
        require(std::find(ids.begin(), ids.end(), *cfg.entry) != ids.end(), "unknown case id '" + *cfg.entry + "'");
        o.entry = cfg.entry;
    }
    if (!cfg.v_grid.empty()) {
        require(std::all_of(cfg.v_grid.begin(), cfg.v_grid.end(), [](double v) { return v < 0.0; }),
                "--v-grid values must be negative");
        o.v_grid = cfg.v_grid;
    }
    if (!cfg.beta_grid.empty()) {
        require(all_positive(cfg.beta_grid) && cfg.beta_grid.size() >= 2, "--beta-grid needs >= 2 positive values");
        o.beta_grid = cfg.beta_grid;
    }
    return o;
}

pcf::LaplaceOptions laplace_options(const Config& cfg)
{
    pcf::LaplaceOptions o;
    o.tol = cfg.tol;
    o.seed = cfg.seed;
    if (cfg.entry) {
        std::vector<std::string> ids = pcf::laplace_case_ids();
        for (int e = 1; e <= pcf::kPairCount; ++e) {
            ids.push_back(std::to_string(e));
        }
        check_entry(cfg, ids, "laplace case");
        o.entry = cfg.entry;
    }
    if (!cfg.s_grid.empty()) {
        require(all_positive(cfg.s_grid), "--s-grid values must be positive");
        o.s_grid = cfg.s_grid;
    }
    return o;
}

pcf::LimitsOptions limits_options(const Config& cfg)
{
    pcf::LimitsOptions o;
    o.tol = cfg.tol;
    o.seed = cfg.seed;
    if (cfg.entry) {
        check_entry(cfg, pcf::limits_entry_names(), "limit entry");
        o.entry = cfg.entry;
    }
    if (!cfg.beta_grid.empty()) {
        require(cfg.beta_grid.size() >= 3 && strictly_decreasing_positive(cfg.beta_grid),
                "--beta-grid needs >= 3 positive, strictly decreasing values");
        o.beta_grid = cfg.beta_grid;
    }
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Parabolic cylinder function representations: evaluation and verification suites"};
    app.require_subcommand(1);
    Config cfg;

    auto* eval = app.add_subcommand("eval", "Evaluate one representation, transform pair or limit");
    add_output_flags(eval, cfg);
    eval->add_option("--rep", cfg.rep, "Representation id, e.g. T2_1, TIME_FORM, MALYSHEV, K14");
    eval->add_option("--pair", cfg.pair, "Transform pair entry 1..6 (closed form at --s)");
    eval->add_option("--entry", cfg.entry, "Limit entry 1..8 or ratio-*; limit value, or the left side at --beta");
    eval->add_flag("--pcf", cfg.pcf, "D_v(x) itself");
    eval->add_option("--v", cfg.v, "Order");
    eval->add_option("--x", cfg.x, "First argument");
    eval->add_option("--y", cfg.y, "Second argument");
    eval->add_option("--s", cfg.s, "Transform variable")->check(CLI::PositiveNumber);
    eval->add_option("--alpha", cfg.alpha, "Drift");
    eval->add_option("--beta", cfg.beta, "Rate beta")->check(CLI::PositiveNumber);
    eval->add_option("--c", cfg.c, "Shift c >= 0")->check(CLI::NonNegativeNumber);
    eval->add_option("--k", cfg.k, "Order offset for T2_* reps, via the recurrence");

    auto* reps = app.add_subcommand("verify-reps", "Integral representations against the oracle");
    add_suite_flags(reps, cfg);
    reps->add_option("--entry", cfg.entry, "Only rows with this case id");
    reps->add_option("--v-grid", cfg.v_grid, "Orders v < 0")->delimiter(',');
    reps->add_option("--beta-grid", cfg.beta_grid, "Rates for the time-form invariance rows")->delimiter(',');

    auto* laplace = app.add_subcommand("verify-laplace", "Transform pairs and transition laws");
    add_suite_flags(laplace, cfg);
    laplace->add_option("--entry", cfg.entry, "Pair 1..6 or a case id such as ou_density");
    laplace->add_option("--s-grid", cfg.s_grid, "Transform variables s > 0")->delimiter(',');

    auto* limits = app.add_subcommand("verify-limits", "beta -> 0 limits");
    add_suite_flags(limits, cfg);
    limits->add_option("--entry", cfg.entry, "Entry 1..8, ratio-general, ratio-golden or ratio-s4");
    limits->add_option("--beta-grid", cfg.beta_grid, "Strictly decreasing beta values")->delimiter(',');

    auto* all = app.add_subcommand("report-all", "All three suites in one report");
    add_suite_flags(all, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        // Validate everything and open the output before computing, so an
        // argument error never leaves a partial report behind.
        std::optional<pcf::RepsOptions> reps_opt;
        std::optional<pcf::LaplaceOptions> laplace_opt;
        std::optional<pcf::LimitsOptions> limits_opt;
        if (reps->parsed() || all->parsed()) {
            reps_opt = reps_options(cfg);
        }
        if (laplace->parsed() || all->parsed()) {
            laplace_opt = laplace_options(cfg);
        }
        if (limits->parsed() || all->parsed()) {
            limits_opt = limits_options(cfg);
        }

        double value = 0.0;
        if (eval->parsed()) {
            value = evaluate(cfg);
        }

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            require(file.good(), "cannot open '" + cfg.out + "' for writing");
        }
        std::ostream& out = cfg.out.empty() ? std::cout : file;

        if (eval->parsed()) {
            write_eval(out, cfg, value);
            return kExitPass;
        }

        pcf::VerificationReport report;
        if (all->parsed()) {
            report = pcf::report_all(*reps_opt, *laplace_opt, *limits_opt);
        } else if (reps->parsed()) {
            report = pcf::verify_reps(*reps_opt);
        } else if (laplace->parsed()) {
            report = pcf::verify_laplace(*laplace_opt);
        } else {
            report = pcf::verify_limits(*limits_opt);
        }
        write_report(out, cfg, report);
        pcf::write_failures(std::cerr, report);
        return report.all_pass() ? kExitPass : kExitFail;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const pcf::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
