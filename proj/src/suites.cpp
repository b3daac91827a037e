#include "pcf/suites.hpp"

#include "pcf/errors.hpp"
#include "pcf/laplace_pairs.hpp"
#include "pcf/limits.hpp"
#include "pcf/product_reps.hpp"
#include "pcf/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

namespace pcf {

namespace {

using Params = std::vector<std::pair<std::string, double>>;

constexpr double kRepTolerance = 1e-8;
constexpr double kBoundaryTolerance = 1e-6;
constexpr double kInvarianceTolerance = 1e-9;
constexpr double kBesselTolerance = 1e-7;
constexpr double kZeroOrderTolerance = 1e-10;
constexpr double kGammaRatioTolerance = 2e-3;
constexpr double kGammaRatioBeta = 1e-4;
constexpr double kBranchTolerance = 1e-3;
constexpr double kJitterHalfWidth = 0.05;
/// Step of the two-point approach to x + y = 0 from above.
constexpr double kBoundaryApproach = 1e-5;

double relative(double computed, double reference)
{
    return std::abs(computed - reference) / std::abs(reference);
}

double scaled(double computed, double reference)
{
    return std::abs(computed - reference) / std::max(1.0, std::abs(reference));
}

/// Accumulates rows, honouring the entry filter and the tolerance override.
class RowSink
{
public:
    RowSink(VerificationReport& report, std::optional<std::string> entry, std::optional<double> tol)
        : report_(report), entry_(std::move(entry)), tol_(tol)
    {
    }

    bool wanted(const std::string& case_id) const { return !entry_ || *entry_ == case_id; }

    /// Runs `compute`, which returns {computed, reference, residual}; any
    /// exception becomes a failed row carrying its message.
    void add(const std::string& case_id, Params params, double tolerance,
             const std::function<std::array<double, 3>()>& compute, std::string note = {})
    {
        if (!wanted(case_id)) {
            return;
        }
        const double tol = tol_.value_or(tolerance);
        try {
            const auto [computed, reference, residual] = compute();
            ReportRow row = make_row(case_id, std::move(params), computed, reference, residual, tol);
            row.note = std::move(note);
            report_.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            report_.rows.push_back(error_row(case_id, std::move(params), tol, e.what()));
        }
    }

private:
    VerificationReport& report_;
    std::optional<std::string> entry_;
    std::optional<double> tol_;
};

class Jitter
{
public:
    explicit Jitter(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    /// Perturbs an off-boundary point, keeping x + y >= 0; boundary points
    /// and seed 0 pass through unchanged.
    std::pair<double, double> apply(std::pair<double, double> xy)
    {
        if (seed_ == 0 || is_zero_sum(xy.first, xy.second)) {
            return xy;
        }
        const double x = xy.first + offset();
        const double y = xy.second + offset();
        if (x + y <= 0.0 || is_zero_sum(x, y)) {
            return xy;
        }
        return {x, y};
    }

    XyGrid apply(const XyGrid& grid)
    {
        XyGrid out;
        out.reserve(grid.size());
        for (const auto& xy : grid) {
            out.push_back(apply(xy));
        }
        return out;
    }

private:
    double offset()
    {
        // 53 random bits mapped to [-h, h]; avoids the implementation-defined
        // algorithm of std::uniform_real_distribution.
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return kJitterHalfWidth * (2.0 * unit - 1.0);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct Timer
{
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

Params vxy(double v, double x, double y)
{
    return {{"v", v}, {"x", x}, {"y", y}};
}

/// (v, x, y) triples formed by pairing the v grid with the off-boundary
/// points of the xy grid cyclically; `count` of them.
std::vector<EvalPoint> zipped_points(const std::vector<double>& v_grid, const XyGrid& xy_grid, std::size_t count)
{
    XyGrid interior;
    for (const auto& xy : xy_grid) {
        if (!is_zero_sum(xy.first, xy.second)) {
            interior.push_back(xy);
        }
    }
    std::vector<EvalPoint> out;
    if (v_grid.empty() || interior.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const auto& xy = interior[i % interior.size()];
        out.push_back(EvalPoint::make(v_grid[i % v_grid.size()], xy.first, xy.second));
    }
    return out;
}

constexpr RepId kTableReps[] = {RepId::T2_1, RepId::T2_2, RepId::T2_3, RepId::T2_4,
                                RepId::T2_5, RepId::T2_6, RepId::T2_7, RepId::T2_8};
constexpr RepId kCorrectedReps[] = {RepId::T2_3, RepId::T2_7, RepId::T2_8};

} // namespace

std::vector<std::string> reps_case_ids()
{
    std::vector<std::string> ids;
    for (const RepId id : kTableReps) {
        ids.emplace_back(to_string(id));
    }
    for (const char* id : {"TIME_FORM", "MALYSHEV", "GLASSER", "T2_4_COMBO", "ERFC_PROD", "K14", "K14_D32",
                           "SINGLE_PCF", "PCF_AT_ZERO", "OFFSET", "T2_1_SYMMETRY", "BOUNDARY"}) {
        ids.emplace_back(id);
    }
    return ids;
}

std::vector<std::string> laplace_case_ids()
{
    std::vector<std::string> ids;
    for (int e = 1; e <= kPairCount; ++e) {
        ids.push_back("pair_" + std::to_string(e));
    }
    for (const char* id : {"ou_density", "ou_distribution", "bm_density", "bm_distribution"}) {
        ids.emplace_back(id);
    }
    return ids;
}

std::vector<std::string> limits_entry_names()
{
    return {"1", "2", "3", "4", "5", "6", "7", "8", "ratio-general", "ratio-golden", "ratio-s4"};
}

VerificationReport verify_reps(const RepsOptions& o)
{
    const Timer timer;
    VerificationReport report;
    report.suite = "reps";
    RowSink sink(report, o.entry, o.tol);
    Jitter jitter(o.seed);
    const XyGrid grid = jitter.apply(o.xy_grid);

    for (const RepId id : kTableReps) {
        const std::string name(to_string(id));
        for (const double v : o.v_grid) {
            for (const auto& [x, y] : grid) {
                const EvalPoint p = EvalPoint::make(v, x, y);
                sink.add(name, vxy(v, x, y), p.sum_is_zero ? kBoundaryTolerance : kRepTolerance, [&] {
                    const double c = evaluate_table_rep(id, p).value;
                    const double r = oracle_product(p, product_rep(id).order_offset);
                    return std::array{c, r, relative(c, r)};
                });
            }
        }
    }

    // The time-parameter form must not depend on its rate.
    for (const EvalPoint& p : zipped_points(o.v_grid, grid, 5)) {
        for (std::size_t i = 0; i < o.beta_grid.size(); ++i) {
            for (std::size_t j = i + 1; j < o.beta_grid.size(); ++j) {
                const double bi = o.beta_grid[i];
                const double bj = o.beta_grid[j];
                sink.add("TIME_FORM", {{"v", p.v}, {"x", p.x}, {"y", p.y}, {"beta_a", bi}, {"beta_b", bj}},
                         kInvarianceTolerance, [&] {
                             const double c = dv_dv_time_form(p, bi).value;
                             const double r = dv_dv_time_form(p, bj).value;
                             return std::array{c, r, relative(c, r)};
                         });
            }
        }
    }

    for (const double v : o.v_grid) {
        for (const double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            sink.add("MALYSHEV", vxy(v, x, -x), kRepTolerance, [&] {
                const double c = malyshev_same_arg(v, x);
                const double r = dv_dv(EvalPoint::make(v, x, -x)).value;
                return std::array{c, r, relative(c, r)};
            });
        }
    }

    constexpr double kGlasserPoints[][3] = {{0.5, 1.0, 0.5}, {1.5, 2.0, -1.0}, {1.2, 1.0, -0.5}};
    for (const auto& g : kGlasserPoints) {
        sink.add("GLASSER", {{"v", g[0]}, {"x", g[1]}, {"y", g[2]}}, kRepTolerance, [&] {
            const double c = glasser_form(g[0], g[1], g[2]);
            const double r = dv_dv(EvalPoint::make(-g[0], g[1], -g[2])).value;
            return std::array{c, r, relative(c, r)};
        });
    }

    for (const EvalPoint& p : zipped_points(o.v_grid, grid, 5)) {
        sink.add("T2_4_COMBO", vxy(p.v, p.x, p.y), kInvarianceTolerance, [&] {
            const double c = dv_dvm2_mixed(p).value;
            const double r = p.v * dv_dvm2_x(p).value + (1.0 - p.v) * dv_dvm2_y(p).value;
            return std::array{c, r, relative(c, r)};
        });
    }

    constexpr double kErfcPoints[][2] = {{0.0, 0.0}, {1.0, 0.5}, {2.0, -1.0}, {0.5, 0.5}, {-0.3, 1.0}};
    for (const auto& e : kErfcPoints) {
        sink.add("ERFC_PROD", {{"x", e[0]}, {"y", e[1]}}, kRepTolerance, [&] {
            const double c = erfc_product(e[0], e[1]);
            const double r = std::erfc(e[0]) * std::erfc(e[1]);
            return std::array{c, r, relative(c, r)};
        });
    }

    for (const double x : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        sink.add("K14", {{"x", x}}, kBesselTolerance, [&] {
            const double c = k14_rep(x);
            const double r = bessel_k_quarter(x);
            return std::array{c, r, relative(c, r)};
        });
    }

    constexpr double kK14Points[][2] = {{1.0, 0.0}, {0.5, 1.0}, {2.0, -1.0}};
    for (const auto& k : kK14Points) {
        sink.add("K14_D32", {{"x", k[0]}, {"y", k[1]}}, kRepTolerance, [&] {
            const double c = k14_times_d32(k[0], k[1]);
            const double r = bessel_k_quarter(k[0]) * pcf_oracle(-1.5, k[1]).value;
            return std::array{c, r, relative(c, r)};
        });
    }

    constexpr double kSinglePoints[][2] = {{-0.5, 0.0}, {-0.5, 1.0}, {-1.0, 2.0},
                                           {-1.7, 0.5}, {-2.5, 3.0}, {-0.3, 1.5}};
    for (const auto& sp : kSinglePoints) {
        sink.add("SINGLE_PCF", {{"v", sp[0]}, {"x", sp[1]}}, kRepTolerance, [&] {
            const double c = single_pcf(sp[0], sp[1]);
            const double r = pcf_oracle(sp[0], sp[1]).value;
            return std::array{c, r, relative(c, r)};
        });
    }

    for (const double v : {-0.5, -1.0, -2.0, -3.0}) {
        sink.add("PCF_AT_ZERO", {{"v", v}}, kZeroOrderTolerance, [&] {
            const double c = pcf_at_zero(v);
            const double r = pcf_oracle(v, 0.0).value;
            return std::array{c, r, relative(c, r)};
        });
    }

    for (const EvalPoint& p : zipped_points(o.v_grid, grid, 5)) {
        for (const int k : {-3, -2, 1, 2}) {
            sink.add("OFFSET", {{"v", p.v}, {"x", p.x}, {"y", p.y}, {"k", k}}, kRepTolerance, [&] {
                const double c = product_by_offset(p, k);
                const double r = oracle_product(p, k);
                return std::array{c, r, scaled(c, r)};
            });
        }
    }

    for (const double v : o.v_grid) {
        for (const auto& [x, y] : grid) {
            sink.add("T2_1_SYMMETRY", vxy(v, x, y), kInvarianceTolerance, [&] {
                const double c = dv_dv(EvalPoint::make(v, x, y)).value;
                const double r = dv_dv(EvalPoint::make(v, y, x)).value;
                return std::array{c, r, relative(c, r)};
            });
        }
    }

    // At x + y = 0 the corrected value must equal the limit of the
    // uncorrected representation approached from x + y > 0. The approach is
    // linear in the offset, so 2 f(h) - f(2h) removes the O(h) term.
    for (const RepId id : kCorrectedReps) {
        for (const double v : o.v_grid) {
            for (const auto& [x, y] : o.xy_grid) {
                if (!is_zero_sum(x, y)) {
                    continue;
                }
                Params params = vxy(v, x, y);
                params.emplace_back("rep", static_cast<double>(static_cast<int>(id) + 1));
                sink.add("BOUNDARY", std::move(params), kBoundaryTolerance, [&] {
                    const double c = evaluate_table_rep(id, EvalPoint::make(v, x, y)).value;
                    const auto off = [&](double h) { return evaluate_table_rep(id, EvalPoint::make(v, x, -x + h)).value; };
                    const double r = 2.0 * off(kBoundaryApproach) - off(2.0 * kBoundaryApproach);
                    return std::array{c, r, relative(c, r)};
                });
            }
        }
    }

    report.sort_rows();
    report.wall_seconds = timer.seconds();
    return report;
}

VerificationReport verify_laplace(const LaplaceOptions& o)
{
    const Timer timer;
    VerificationReport report;
    report.suite = "laplace";
    std::optional<std::string> entry = o.entry;
    if (entry && entry->size() == 1 && std::isdigit(static_cast<unsigned char>((*entry)[0]))) {
        entry = "pair_" + *entry;
    }
    RowSink sink(report, entry, o.tol);
    Jitter jitter(o.seed);
    const XyGrid grid = jitter.apply(o.xy_grid);

    for (int e = 1; e <= kPairCount; ++e) {
        const std::string id = "pair_" + std::to_string(e);
        if (!sink.wanted(id)) {
            continue;
        }
        for (const auto& [beta, c] : o.beta_c_grid) {
            for (const auto& [x, y] : grid) {
                const PairParams params{beta, c, x, y};
                const LaplacePair pair{e, params};
                for (const double s : o.s_grid) {
                    sink.add(id, {{"beta", beta}, {"c", c}, {"x", x}, {"y", y}, {"s", s}}, kPairTolerance, [&] {
                        const double f = forward_laplace([&](double t) { return pair.time_fn(t); }, s, 1e-11,
                                                         table1_time_hint(e))
                                             .value;
                        const double r = pair.transform(s);
                        return std::array{f, r, scaled(f, r)};
                    });
                }
            }
        }
    }

    // Transition laws: transforms against forward transforms of the
    // Gaussian time-domain laws.
    PairParams ou;
    ou.alpha = 0.5;
    ou.beta = 1.0;
    ou.sigma = std::numbers::sqrt2;
    constexpr double kW0 = 0.0;
    constexpr double kBmAlpha = 1.0;
    constexpr double kBmSigma = 1.0;
    const auto hint_at = [](double w) { return SingularityHint{w == kW0 ? -0.5 : 0.0, 0.0}; };

    for (const double w : {-1.0, 0.0, 1.0}) {
        for (const double s : o.s_grid) {
            const Params params{{"alpha", ou.alpha}, {"beta", ou.beta}, {"sigma", ou.sigma},
                                {"w0", kW0},         {"w", w},          {"s", s}};
            sink.add("ou_density", params, kPairTolerance, [&] {
                const double f = forward_laplace([&](double t) { return ou_time_density(w, t, kW0, ou); }, s,
                                                 1e-11, hint_at(w))
                                     .value;
                const double r = ou_density_transform(w, s, kW0, ou);
                return std::array{f, r, scaled(f, r)};
            });
            const Params bm_params{{"alpha", kBmAlpha}, {"sigma", kBmSigma}, {"w0", kW0}, {"w", w}, {"s", s}};
            sink.add("bm_density", bm_params, kPairTolerance, [&] {
                const double f = forward_laplace(
                                     [&](double t) { return bm_time_density(w, t, kW0, kBmAlpha, kBmSigma); }, s,
                                     1e-11, hint_at(w))
                                     .value;
                const double r = bm_density_transform(w, s, kW0, kBmAlpha, kBmSigma);
                return std::array{f, r, scaled(f, r)};
            });
        }
    }
    for (const double w1 : {0.0, 0.5, 1.5}) {
        for (const double s : o.s_grid) {
            const Params params{{"alpha", ou.alpha}, {"beta", ou.beta}, {"sigma", ou.sigma},
                                {"w0", kW0},         {"w1", w1},        {"s", s}};
            sink.add("ou_distribution", params, kPairTolerance, [&] {
                const double f =
                    forward_laplace([&](double t) { return ou_time_distribution(w1, t, kW0, ou); }, s).value;
                const double r = ou_distribution_transform(w1, s, kW0, ou);
                return std::array{f, r, scaled(f, r)};
            });
            const Params bm_params{{"alpha", kBmAlpha}, {"sigma", kBmSigma}, {"w0", kW0}, {"w1", w1}, {"s", s}};
            sink.add("bm_distribution", bm_params, kPairTolerance, [&] {
                const double f = forward_laplace(
                                     [&](double t) { return bm_time_distribution(w1, t, kW0, kBmAlpha, kBmSigma); },
                                     s)
                                     .value;
                const double r = bm_distribution_transform(w1, s, kW0, kBmAlpha, kBmSigma);
                return std::array{f, r, scaled(f, r)};
            });
        }
    }

    report.sort_rows();
    report.wall_seconds = timer.seconds();
    return report;
}

VerificationReport verify_limits(const LimitsOptions& o)
{
    const Timer timer;
    VerificationReport report;
    report.suite = "limits";
    std::optional<std::string> entry;
    if (o.entry) {
        entry = o.entry->rfind("ratio", 0) == 0 ? *o.entry : "limit_" + *o.entry;
    }
    // Branch rows follow the filter of their entry.
    const auto matches = [&](const std::string& id) { return !entry || id.rfind(*entry, 0) == 0; };
    RowSink all(report, std::nullopt, o.tol);
    Jitter jitter(o.seed);
    const auto [x0, y0] = jitter.apply(std::pair{0.7, 0.3});

    const auto add_converged = [&](const std::string& id, const LimitCase& c, Params params) {
        if (!matches(id)) {
            return;
        }
        std::string note;
        all.add(id, std::move(params), kLimitTolerance, [&] {
            const ConvergenceRecord rec = converge(c, o.beta_grid);
            if (rec.low_confidence) {
                note = "low-confidence extrapolation";
            }
            return std::array{rec.extrapolated, rec.rhs, rec.residual};
        });
        if (!note.empty()) {
            report.rows.back().note = note;
        }
    };

    for (const LimitEntry e : {LimitEntry::E1, LimitEntry::E2, LimitEntry::E3}) {
        const std::string id = "limit_" + std::string(to_string(e));
        for (const double alpha : {-1.0, 0.0, 1.0}) {
            for (const double s : {1.0, 2.0}) {
                add_converged(id, LimitCase{e, s, alpha, x0, y0},
                              {{"s", s}, {"alpha", alpha}, {"x", x0}, {"y", y0}});
            }
        }
    }

    const double beta_min = o.beta_grid.empty() ? 0.05 : o.beta_grid.back();
    for (const LimitEntry e : {LimitEntry::E4, LimitEntry::E5, LimitEntry::E6, LimitEntry::E7}) {
        const std::string id = "limit_" + std::string(to_string(e));
        for (const double s : {1.0, 4.0}) {
            for (const double x : {0.0, 1.0}) {
                const LimitCase finite{e, s, 0.0, x, 0.0};
                add_converged(id, finite, {{"s", s}, {"alpha", 0.0}, {"x", x}});
                if (!matches(id + "_branch")) {
                    continue;
                }
                // alpha = -1 must collapse and alpha = +1 blow up relative to
                // the alpha = 0 limit; residual is the ratio that must be small.
                for (const double alpha : {-1.0, 1.0}) {
                    all.add(id + "_branch", {{"s", s}, {"alpha", alpha}, {"x", x}, {"beta", beta_min}},
                            kBranchTolerance, [&] {
                                const double lhs = limit_lhs(LimitCase{e, s, alpha, x, 0.0}, beta_min);
                                const double ref = limit_rhs(finite);
                                const double ratio = lhs / ref;
                                return std::array{lhs, ref, alpha < 0.0 ? ratio : 1.0 / ratio};
                            });
                }
            }
        }
    }

    if (matches("limit_8")) {
        for (const double s : {1.0, 2.0, 8.0}) {
            all.add("limit_8", {{"s", s}, {"beta", kGammaRatioBeta}}, kGammaRatioTolerance, [&] {
                const double c = gamma_ratio_limit_check(s, kGammaRatioBeta);
                const double r = std::sqrt(2.0 / s);
                return std::array{c, r, std::abs(c - r)};
            });
        }
    }

    add_converged("ratio-golden", LimitCase::golden_ratio(), {{"s", 1.0}, {"alpha", 1.0}, {"x", 0.0}});
    add_converged("ratio-s4", LimitCase::ratio_s4(), {{"s", 4.0}, {"alpha", 0.0}, {"x", 1.0}});
    constexpr double kRatioPoints[][3] = {{1.0, 0.0, 0.0}, {2.0, -1.0, 0.5}};
    for (const auto& r : kRatioPoints) {
        add_converged("ratio-general", LimitCase{LimitEntry::RatioGeneral, r[0], r[1], r[2], 0.0},
                      {{"s", r[0]}, {"alpha", r[1]}, {"x", r[2]}});
    }
    report.sort_rows();
    report.wall_seconds = timer.seconds();
    return report;
}

VerificationReport report_all(const RepsOptions& reps, const LaplaceOptions& laplace, const LimitsOptions& limits)
{
    VerificationReport report;
    report.suite = "all";
    report.append(verify_reps(reps));
    report.append(verify_laplace(laplace));
    report.append(verify_limits(limits));
    return report;
}

} // namespace pcf
