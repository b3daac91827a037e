#include "pcf/product_reps.hpp"

#include "pcf/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace pcf {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrtHalfPi = 1.2533141373155002512;

struct RepName
{
    RepId id;
    std::string_view name;
    int offset;
};

constexpr std::array<RepName, 15> kRepNames{{
    {RepId::T2_1, "T2_1", 0},
    {RepId::T2_2, "T2_2", -1},
    {RepId::T2_3, "T2_3", -1},
    {RepId::T2_4, "T2_4", -2},
    {RepId::T2_5, "T2_5", -2},
    {RepId::T2_6, "T2_6", -2},
    {RepId::T2_7, "T2_7", -2},
    {RepId::T2_8, "T2_8", 1},
    {RepId::TimeForm, "TIME_FORM", 0},
    {RepId::Malyshev, "MALYSHEV", 0},
    {RepId::Glasser, "GLASSER", 0},
    {RepId::SinglePcf, "SINGLE_PCF", 0},
    {RepId::ErfcProduct, "ERFC_PROD", 0},
    {RepId::K14, "K14", 0},
    {RepId::K14D32, "K14_D32", 0},
}};

void require_domain(const EvalPoint& p, const char* who)
{
    if (!std::isfinite(p.v) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw DomainError(std::string(who) + ": non-finite argument");
    }
    if (!(p.v < 0.0)) {
        throw DomainError(std::string(who) + ": requires v < 0");
    }
    if (!p.sum_is_zero && p.x + p.y < 0.0) {
        throw DomainError(std::string(who) + ": requires x + y >= 0");
    }
}

void require_converged(const IntegralEstimate& est, const char* who)
{
    if (!est.converged) {
        std::ostringstream os;
        os << who << ": quadrature did not converge (error estimate " << est.abs_error_estimate
           << " after " << est.evaluations << " evaluations)";
        throw ConvergenceError(os.str());
    }
}

/// Quantities shared by the unit-interval kernels at one abscissa.
///
/// shift = y + x sqrt(1 - u) and its companion x + y sqrt(1 - u) are formed
/// from x + y so that they keep full precision as u -> 0 on the boundary.
struct Kernel
{
    double u;
    double om;         // 1 - u
    double root;       // sqrt(1 - u)
    double shift;      // y + x sqrt(1 - u)
    double companion;  // x + y sqrt(1 - u)
    double log_gauss;  // -shift^2 / (2u)
    double erfc_term;  // erfc(shift / sqrt(2u))

    Kernel(const EvalPoint& p, double u_, double om_)
        : u(u_), om(om_), root(std::sqrt(om_))
    {
        const double sum = p.sum_is_zero ? 0.0 : p.x + p.y;
        const double gap = u / (1.0 + root); // 1 - sqrt(1 - u)
        shift = sum - p.x * gap;
        companion = sum - p.y * gap;
        log_gauss = -shift * shift / (2.0 * u);
        erfc_term = std::erfc(shift / std::sqrt(2.0 * u));
    }
};

/// sign(n) * exp(log|n| + log_rest), zero when n == 0.
double signed_exp(double n, double log_rest)
{
    if (n == 0.0) {
        return 0.0;
    }
    const double mag = std::exp(std::log(std::abs(n)) + log_rest);
    return n < 0.0 ? -mag : mag;
}

/// log of exp((y^2 - x^2)/4) / Gamma(-v).
double log_common_prefactor(const EvalPoint& p)
{
    return 0.25 * (p.y * p.y - p.x * p.x) - log_gamma(-p.v);
}

ProductValue finish(const IntegralEstimate& est, double log_scale, double sign, const char* who)
{
    require_converged(est, who);
    ProductValue out;
    const double scale = sign * std::exp(log_scale);
    out.value = scale * est.value;
    out.estimate = est;
    out.estimate.value = out.value;
    out.estimate.abs_error_estimate = std::abs(scale) * est.abs_error_estimate;
    return out;
}

double boundary_gamma_term(const EvalPoint& p)
{
    return kSqrtPi / (std::numbers::sqrt2 * std::tgamma(-p.v));
}

} // namespace

ProductRep product_rep(RepId id)
{
    for (const auto& r : kRepNames) {
        if (r.id == id) {
            return ProductRep{id, r.offset};
        }
    }
    throw DomainError("product_rep: unknown id");
}

std::string_view to_string(RepId id)
{
    for (const auto& r : kRepNames) {
        if (r.id == id) {
            return r.name;
        }
    }
    return "?";
}

std::optional<RepId> parse_rep_id(std::string_view name)
{
    for (const auto& r : kRepNames) {
        if (r.name == name) {
            return r.id;
        }
    }
    return std::nullopt;
}

ProductValue dv_dv(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dv");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            return std::exp(right * std::log(om) - 0.5 * std::log(u) + k.log_gauss);
        },
        {-0.5, right}, tol);
    return finish(est, log_common_prefactor(p) - std::numbers::ln2, 1.0, "dv_dv");
}

ProductValue dv_dvm1_erfc(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm1_erfc");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            return std::exp(right * std::log(om)) * k.erfc_term;
        },
        {0.0, right}, tol);
    const double log_scale = log_common_prefactor(p) + std::log(kSqrtPi) - 1.5 * std::numbers::ln2;
    return finish(est, log_scale, 1.0, "dv_dvm1_erfc");
}

ProductValue dv_dvm1_exp(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm1_exp");
    const double right = -0.5 * (1.0 + p.v);
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            return signed_exp(k.companion, right * std::log(om) - 1.5 * std::log(u) + k.log_gauss);
        },
        {-0.5, right}, tol);
    // -1 / (2 v Gamma(-v)) is positive for v < 0
    const double log_scale = log_common_prefactor(p) - std::numbers::ln2 - std::log(-p.v);
    ProductValue out = finish(est, log_scale, 1.0, "dv_dvm1_exp");
    if (p.sum_is_zero) {
        out.value -= boundary_gamma_term(p) / p.v;
        out.correction_applied = true;
    }
    return out;
}

ProductValue dv_dvm2_mixed(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm2_mixed");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            const double brace =
                std::sqrt(u) * std::exp(k.log_gauss) - kSqrtHalfPi * k.shift * k.erfc_term;
            return std::exp(right * std::log(om)) * brace;
        },
        {0.0, right}, tol);
    return finish(est, log_common_prefactor(p) - std::numbers::ln2, 1.0, "dv_dvm2_mixed");
}

ProductValue dv_dvm2_x(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm2_x");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            const double log_om = std::log(om);
            // om^(-1-v/2) * om / sqrt(u) * gauss  +  om^(-1-v/2) * x sqrt(pi/2) sqrt(om) erfc
            const double gauss_part = std::exp((right + 1.0) * log_om - 0.5 * std::log(u) + k.log_gauss);
            const double erfc_part =
                p.x * kSqrtHalfPi * std::exp((right + 0.5) * log_om) * k.erfc_term;
            return gauss_part + erfc_part;
        },
        {-0.5, right}, tol);
    const double log_scale = log_common_prefactor(p) - std::numbers::ln2 - std::log(-p.v);
    return finish(est, log_scale, 1.0, "dv_dvm2_x");
}

ProductValue dv_dvm2_y(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm2_y");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            const double log_om = std::log(om);
            const double gauss_part = std::exp(right * log_om - 0.5 * std::log(u) + k.log_gauss);
            const double erfc_part = p.y * kSqrtHalfPi * std::exp(right * log_om) * k.erfc_term;
            return gauss_part - erfc_part;
        },
        {-0.5, right}, tol);
    const double log_scale = log_common_prefactor(p) - std::numbers::ln2 - std::log(1.0 - p.v);
    return finish(est, log_scale, 1.0, "dv_dvm2_y");
}

ProductValue dv_dvm2_compact(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvm2_compact");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            const double numerator = p.y * k.root * k.companion + p.v * u;
            return signed_exp(numerator, right * std::log(om) - 1.5 * std::log(u) + k.log_gauss);
        },
        {-0.5, right}, tol);
    // 1 / (2 v (1 - v) Gamma(-v)) is negative for v < 0
    const double log_scale =
        log_common_prefactor(p) - std::numbers::ln2 - std::log(-p.v) - std::log(1.0 - p.v);
    ProductValue out = finish(est, log_scale, -1.0, "dv_dvm2_compact");
    if (p.sum_is_zero) {
        out.value -= p.y * boundary_gamma_term(p) / (p.v * (p.v - 1.0));
        out.correction_applied = true;
    }
    return out;
}

ProductValue dv_dvp1(const EvalPoint& p, double tol)
{
    require_domain(p, "dv_dvp1");
    const double right = -1.0 - 0.5 * p.v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            const double numerator = p.y * u + k.root * k.companion;
            return signed_exp(numerator, right * std::log(om) - 1.5 * std::log(u) + k.log_gauss);
        },
        {-0.5, right}, tol);
    ProductValue out = finish(est, log_common_prefactor(p) - std::numbers::ln2, 1.0, "dv_dvp1");
    if (p.sum_is_zero) {
        out.value += boundary_gamma_term(p);
        out.correction_applied = true;
    }
    return out;
}

ProductValue evaluate_table_rep(RepId id, const EvalPoint& p, double tol)
{
    switch (id) {
    case RepId::T2_1: return dv_dv(p, tol);
    case RepId::T2_2: return dv_dvm1_erfc(p, tol);
    case RepId::T2_3: return dv_dvm1_exp(p, tol);
    case RepId::T2_4: return dv_dvm2_mixed(p, tol);
    case RepId::T2_5: return dv_dvm2_x(p, tol);
    case RepId::T2_6: return dv_dvm2_y(p, tol);
    case RepId::T2_7: return dv_dvm2_compact(p, tol);
    case RepId::T2_8: return dv_dvp1(p, tol);
    default: break;
    }
    throw DomainError("evaluate_table_rep: " + std::string(to_string(id)) + " is not a unit-interval entry");
}

ProductValue dv_dv_time_form(const EvalPoint& p, double beta, double tol)
{
    require_domain(p, "dv_dv_time_form");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("dv_dv_time_form: requires beta > 0");
    }
    const double sum = p.sum_is_zero ? 0.0 : p.x + p.y;
    const IntegralEstimate est = integrate_semi_infinite(
        [&](double t) {
            const double q = -std::expm1(-2.0 * beta * t);
            const double shift = sum + p.x * std::expm1(-beta * t);
            return beta * std::exp(beta * p.v * t - 0.5 * std::log(q) - shift * shift / (2.0 * q));
        },
        tol, {-0.5, 0.0});
    return finish(est, log_common_prefactor(p), 1.0, "dv_dv_time_form");
}

double product_by_offset(const EvalPoint& p, int k)
{
    if (k < -6 || k > 6) {
        throw DomainError("product_by_offset: offset must lie in [-6, 6]");
    }
    const double p0 = dv_dv(p).value;
    if (k == 0) {
        return p0;
    }
    const double pm1 = dv_dvm1_erfc(p).value;
    if (k == -1) {
        return pm1;
    }
    // P_j = D_v(x) D_{v+j}(y) obeys P_{j+1} = y P_j - (v + j) P_{j-1}
    if (k > 0) {
        double lower = pm1;
        double current = p0;
        for (int j = 0; j < k; ++j) {
            const double next = p.y * current - (p.v + j) * lower;
            lower = current;
            current = next;
        }
        return current;
    }
    double upper = p0;
    double current = pm1;
    for (int j = -1; j > k; --j) {
        const double divisor = p.v + j;
        if (divisor == 0.0) {
            throw PoleError("product_by_offset: recurrence divides by v + j = 0 at j = " + std::to_string(j));
        }
        const double next = (p.y * current - upper) / divisor;
        upper = current;
        current = next;
    }
    return current;
}

double malyshev_same_arg(double v, double x)
{
    if (!(v < 0.0) || !std::isfinite(x)) {
        throw DomainError("malyshev_same_arg: requires v < 0 and finite x");
    }
    const IntegralEstimate est = integrate_semi_infinite(
        [&](double t) {
            const double log_sinh = t + std::log(-std::expm1(-2.0 * t)) - std::numbers::ln2;
            return std::exp((v + 0.5) * t - 0.5 * x * x * std::tanh(0.5 * t) - 0.5 * log_sinh);
        },
        kDefaultTolerance, {-0.5, 0.0});
    require_converged(est, "malyshev_same_arg");
    return std::exp(-0.5 * std::numbers::ln2 - log_gamma(-v)) * est.value;
}

double glasser_form(double v_pos, double x, double y)
{
    if (!(v_pos > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("glasser_form: requires v > 0 and finite arguments");
    }
    if (!is_zero_sum(x, -y) && x < y) {
        throw DomainError("glasser_form: requires x >= y");
    }
    const double diff2 = is_zero_sum(x, -y) ? 0.0 : (x - y) * (x - y);
    const double xy = x * y;
    // t = w / (1 - w) maps (0, inf) onto (0, 1)
    const IntegralEstimate est = integrate_unit(
        [&](double w, double om) {
            const double t = w / om;
            const double exponent = -0.5 * diff2 * t + xy / (std::sqrt(1.0 + 1.0 / t) + 1.0);
            return std::exp((0.5 * v_pos - 1.0) * std::log(w) - 0.5 * std::log(om) + exponent);
        },
        {0.5 * v_pos - 1.0, -0.5});
    require_converged(est, "glasser_form");
    const double log_scale = -0.25 * (x * x + y * y) - std::numbers::ln2 - log_gamma(v_pos);
    return std::exp(log_scale) * est.value;
}

double single_pcf(double v, double x)
{
    if (!(v < 0.0) || !(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("single_pcf: requires v < 0 and x >= 0");
    }
    const double right = -1.0 - 0.5 * v;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            return std::exp(right * std::log(om)) * std::erfc(x * std::sqrt(om / (2.0 * u)));
        },
        {0.0, right});
    require_converged(est, "single_pcf");
    const double log_scale = std::log(-v) + std::log(kSqrtPi) + (0.5 * v - 1.0) * std::numbers::ln2 -
                             0.25 * x * x - log_gamma(0.5 - 0.5 * v);
    return std::exp(log_scale) * est.value;
}

double erfc_product(double x, double y)
{
    if (!std::isfinite(x) || !std::isfinite(y) || (!is_zero_sum(x, y) && x + y < 0.0)) {
        throw DomainError("erfc_product: requires x + y >= 0");
    }
    const EvalPoint p = EvalPoint::make(-1.0, x, y);
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const Kernel k(p, u, om);
            return std::exp(-0.5 * std::log(u) - 0.5 * std::log(om) - k.shift * k.shift / u);
        },
        {-0.5, -0.5});
    require_converged(est, "erfc_product");
    return std::exp(-x * x) / std::numbers::pi * est.value;
}

double k14_rep(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("k14_rep: requires x > 0");
    }
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            return std::exp(-0.75 * std::log(om) - 0.5 * std::log(u) - x * (1.0 + om) / u);
        },
        {-0.5, -0.75});
    require_converged(est, "k14_rep");
    const double log_scale = std::log(kSqrtPi) - 0.25 * std::log(2.0 * x) - log_gamma(0.25);
    return std::exp(log_scale) * est.value;
}

double k14_times_d32(double x, double y)
{
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("k14_times_d32: requires x > 0");
    }
    const double two_root_x = 2.0 * std::sqrt(x);
    if (!is_zero_sum(two_root_x, y) && two_root_x + y < 0.0) {
        throw DomainError("k14_times_d32: requires 2 sqrt(x) + y >= 0");
    }
    const double sum = is_zero_sum(two_root_x, y) ? 0.0 : two_root_x + y;
    const IntegralEstimate est = integrate_unit(
        [&](double u, double om) {
            const double gap = u / (1.0 + std::sqrt(om));
            const double shift = sum - two_root_x * gap;
            return std::exp(-0.75 * std::log(om)) * std::erfc(shift / std::sqrt(2.0 * u));
        },
        {0.0, -0.75});
    require_converged(est, "k14_times_d32");
    const double log_scale =
        std::log(kSqrtPi) + 0.25 * (y * y - 4.0 * x) - 1.5 * std::numbers::ln2 - 0.25 * std::log(x);
    return std::exp(log_scale) * est.value;
}

double oracle_product(const EvalPoint& p, int k)
{
    return pcf_value(p.v, p.x) * pcf_value(p.v + k, p.y);
}

} // namespace pcf
