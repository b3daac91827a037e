#include "pcf/limits.hpp"

#include "pcf/errors.hpp"
#include "pcf/special_fn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace pcf {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kSqrtPi = 1.7724538509055160273;

struct EntryName
{
    LimitEntry entry;
    std::string_view name;
};

constexpr std::array<EntryName, 11> kEntryNames{{
    {LimitEntry::E1, "1"},
    {LimitEntry::E2, "2"},
    {LimitEntry::E3, "3"},
    {LimitEntry::E4, "4"},
    {LimitEntry::E5, "5"},
    {LimitEntry::E6, "6"},
    {LimitEntry::E7, "7"},
    {LimitEntry::E8, "8"},
    {LimitEntry::RatioGeneral, "ratio-general"},
    {LimitEntry::RatioGolden, "ratio-golden"},
    {LimitEntry::RatioS4, "ratio-s4"},
}};

double log_pcf(double v, double z)
{
    return pcf_oracle(v, z).log_value;
}

bool single_function_entry(LimitEntry e)
{
    return e == LimitEntry::E4 || e == LimitEntry::E5 || e == LimitEntry::E6 || e == LimitEntry::E7;
}

} // namespace

RhsKind LimitCase::rhs_kind() const
{
    if (!single_function_entry(entry) || alpha == 0.0) {
        return RhsKind::Finite;
    }
    return alpha < 0.0 ? RhsKind::Zero : RhsKind::Infinite;
}

LimitCase LimitCase::golden_ratio()
{
    return LimitCase{LimitEntry::RatioGolden, 1.0, 1.0, 0.0, 0.0};
}

LimitCase LimitCase::ratio_s4()
{
    return LimitCase{LimitEntry::RatioS4, 4.0, 0.0, 1.0, 0.0};
}

std::string_view to_string(LimitEntry entry)
{
    for (const auto& e : kEntryNames) {
        if (e.entry == entry) {
            return e.name;
        }
    }
    return "?";
}

std::optional<LimitEntry> parse_limit_entry(std::string_view name)
{
    for (const auto& e : kEntryNames) {
        if (e.name == name) {
            return e.entry;
        }
    }
    return std::nullopt;
}

double limit_lhs_log(const LimitCase& c, double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("limit_lhs: requires beta > 0");
    }
    if (!(c.s > 0.0)) {
        throw DomainError("limit_lhs: requires s > 0");
    }
    const double s = c.s;
    const double nu = s / beta;
    const double root_beta = std::sqrt(beta);
    const double log_beta = std::log(beta);
    const double zx = c.x * root_beta - c.alpha / root_beta;
    const double zy = c.y * root_beta + c.alpha / root_beta;
    const double half_nu = s / (2.0 * beta);
    const double log_pow2 = half_nu * std::numbers::ln2; // log 2^{s/(2 beta)}

    try {
        switch (c.entry) {
        case LimitEntry::E1:
            return log_gamma(nu) - 0.5 * log_beta + log_pcf(-nu, zx) + log_pcf(-nu, zy);
        case LimitEntry::E2:
            return log_gamma(nu) - log_beta + log_pcf(-nu, zy) + log_pcf(-1.0 - nu, zx);
        case LimitEntry::E3:
            return std::log(s + beta) + log_gamma(nu) - 1.5 * log_beta + log_pcf(-nu, zy) +
                   log_pcf(-2.0 - nu, zx);
        case LimitEntry::E4:
            return log_pow2 + log_gamma(half_nu) - 0.5 * log_beta + log_pcf(-nu, zx);
        case LimitEntry::E5:
            return log_pow2 + log_gamma((s + beta) / (2.0 * beta)) + log_pcf(-nu, zx);
        case LimitEntry::E6:
            return log_pow2 + log_gamma(half_nu) - log_beta + log_pcf(-1.0 - nu, zx);
        case LimitEntry::E7:
            return log_pow2 + std::log(s + beta) + log_gamma(half_nu) - 1.5 * log_beta +
                   log_pcf(-2.0 - nu, zx);
        case LimitEntry::E8:
            return log_gamma(half_nu) - 0.5 * log_beta - log_gamma((s + beta) / (2.0 * beta));
        case LimitEntry::RatioGeneral:
        case LimitEntry::RatioGolden:
        case LimitEntry::RatioS4:
            return 0.5 * log_beta + log_pcf(-nu, zx) - log_pcf(-1.0 - nu, zx);
        }
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string(e.what()) + " [limit entry " + std::string(to_string(c.entry)) +
                               " at beta = " + std::to_string(beta) + "]");
    }
    throw DomainError("limit_lhs: unknown entry");
}

double limit_lhs(const LimitCase& c, double beta)
{
    return std::exp(limit_lhs_log(c, beta));
}

double limit_rhs(const LimitCase& c)
{
    if (!(c.s > 0.0)) {
        throw DomainError("limit_rhs: requires s > 0");
    }
    const double root = std::sqrt(c.alpha * c.alpha + 4.0 * c.s);
    const double decay = std::exp(-0.5 * root * (c.x + c.y));
    const double single_decay = std::exp(-std::sqrt(c.s) * c.x);
    switch (c.rhs_kind()) {
    case RhsKind::Zero: return 0.0;
    case RhsKind::Infinite: return INFINITY;
    case RhsKind::Finite: break;
    }
    switch (c.entry) {
    case LimitEntry::E1: return kSqrt2Pi / root * decay;
    case LimitEntry::E2: return 2.0 * kSqrt2Pi / (root * (root - c.alpha)) * decay;
    case LimitEntry::E3: return kSqrt2Pi * (c.alpha + root) / (root * (root - c.alpha)) * decay;
    case LimitEntry::E4: return std::sqrt(2.0 * std::numbers::pi / c.s) * single_decay;
    case LimitEntry::E5: return kSqrtPi * single_decay;
    case LimitEntry::E6: return kSqrt2Pi / c.s * single_decay;
    case LimitEntry::E7: return std::sqrt(2.0 * std::numbers::pi / c.s) * single_decay;
    case LimitEntry::E8: return std::sqrt(2.0 / c.s);
    case LimitEntry::RatioGeneral:
    case LimitEntry::RatioGolden:
    case LimitEntry::RatioS4: return 0.5 * (root - c.alpha);
    }
    throw DomainError("limit_rhs: unknown entry");
}

Extrapolation extrapolate(std::span<const double> betas, std::span<const double> values,
                          std::optional<int> stages)
{
    const std::size_t n = betas.size();
    if (n != values.size() || n < 3) {
        throw DomainError("extrapolate: needs at least 3 matching (beta, value) samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(betas[i] > 0.0) || (i > 0 && !(betas[i] < betas[i - 1]))) {
            throw DomainError("extrapolate: beta grid must be positive and strictly decreasing");
        }
    }
    const int max_stages = static_cast<int>(n) - 1;
    const int m = stages ? *stages : max_stages;
    if (m < 1 || m > max_stages) {
        throw DomainError("extrapolate: stages out of range");
    }

    // Neville tableau evaluated at beta = 0 over the last m + 1 samples.
    const std::size_t first = n - static_cast<std::size_t>(m) - 1;
    std::vector<double> row(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
    std::vector<double> diagonal{row.back()};
    for (int k = 1; k <= m; ++k) {
        for (std::size_t i = row.size() - 1; i >= static_cast<std::size_t>(k); --i) {
            const double bi = betas[first + i];
            const double bik = betas[first + i - static_cast<std::size_t>(k)];
            row[i] = row[i] + (row[i] - row[i - 1]) * bi / (bik - bi);
        }
        diagonal.push_back(row.back());
    }

    Extrapolation out;
    out.value = diagonal.back();
    out.correction = std::abs(diagonal[diagonal.size() - 1] - diagonal[diagonal.size() - 2]);
    double previous = INFINITY;
    for (std::size_t k = 1; k < diagonal.size(); ++k) {
        const double step = std::abs(diagonal[k] - diagonal[k - 1]);
        if (step > previous) {
            out.low_confidence = true;
        }
        previous = step;
    }
    return out;
}

ConvergenceRecord converge(const LimitCase& c, std::span<const double> beta_grid)
{
    ConvergenceRecord rec;
    rec.limit = c;
    rec.beta_grid.assign(beta_grid.begin(), beta_grid.end());
    for (const double beta : beta_grid) {
        const double lv = limit_lhs_log(c, beta);
        rec.lhs_log_values.push_back(lv);
        rec.lhs_values.push_back(std::exp(lv));
    }
    rec.rhs = limit_rhs(c);
    if (c.rhs_kind() == RhsKind::Finite) {
        const Extrapolation ex = extrapolate(rec.beta_grid, rec.lhs_values);
        rec.extrapolated = ex.value;
        rec.low_confidence = ex.low_confidence;
        rec.residual = std::abs(ex.value - rec.rhs) / std::abs(rec.rhs);
    } else {
        rec.extrapolated = rec.lhs_values.back();
        rec.residual = NAN;
    }
    return rec;
}

double ratio_general(double s, double alpha, double x, double beta)
{
    return limit_lhs(LimitCase{LimitEntry::RatioGeneral, s, alpha, x, 0.0}, beta);
}

double gamma_ratio_limit_check(double s, double beta)
{
    return limit_lhs(LimitCase{LimitEntry::E8, s, 0.0, 0.0, 0.0}, beta);
}

double gamma_shift_ratio(double z, double a)
{
    return std::exp(-a * std::log(z) + log_gamma(z + a) - log_gamma(z));
}

} // namespace pcf
