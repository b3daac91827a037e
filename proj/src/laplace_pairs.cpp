#include "pcf/laplace_pairs.hpp"

#include "pcf/errors.hpp"
#include "pcf/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pcf {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrtHalfPi = 1.2533141373155002512;

void require_params(const PairParams& p, const char* who)
{
    if (!(p.beta > 0.0) || !(p.c >= 0.0) || !std::isfinite(p.beta) || !std::isfinite(p.c)) {
        throw DomainError(std::string(who) + ": requires beta > 0 and c >= 0");
    }
}

void require_entry(int entry, const char* who)
{
    if (entry < 1 || entry > kPairCount) {
        throw DomainError(std::string(who) + ": entry must be 1..6");
    }
}

void require_sum(const PairParams& p, const char* who)
{
    if (!is_zero_sum(p.x, p.y) && p.x + p.y < 0.0) {
        throw DomainError(std::string(who) + ": requires x + y >= 0");
    }
}

void require_diffusion(const PairParams& p, const char* who)
{
    if (!(p.beta > 0.0) || !(p.sigma > 0.0)) {
        throw DomainError(std::string(who) + ": requires beta > 0 and sigma > 0");
    }
}

double std_normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// sqrt(2) (beta w - alpha) / (sigma sqrt(beta))
double ou_scaled_state(double w, const PairParams& p)
{
    return std::numbers::sqrt2 * (p.beta * w - p.alpha) / (p.sigma * std::sqrt(p.beta));
}

/// ((beta w0 - alpha)^2 - (beta w - alpha)^2) / (2 sigma^2 beta)
double ou_exponent(double w, double w0, const PairParams& p)
{
    const double a0 = p.beta * w0 - p.alpha;
    const double a = p.beta * w - p.alpha;
    return (a0 * a0 - a * a) / (2.0 * p.sigma * p.sigma * p.beta);
}

double log_pcf(double v, double z)
{
    return pcf_oracle(v, z).log_value;
}

} // namespace

double table1_time(int entry, double t, const PairParams& p)
{
    require_entry(entry, "table1_time");
    require_params(p, "table1_time");
    require_sum(p, "table1_time");
    if (!(t > 0.0)) {
        throw DomainError("table1_time: requires t > 0");
    }
    const double b = p.beta;
    const double sum = is_zero_sum(p.x, p.y) ? 0.0 : p.x + p.y;
    const double decay_m1 = std::expm1(-b * t);    // e^{-bt} - 1
    const double q = -std::expm1(-2.0 * b * t);    // 1 - e^{-2bt}
    const double shift = sum + p.x * decay_m1;     // y + x e^{-bt}
    const double companion = sum + p.y * decay_m1; // x + y e^{-bt}
    const double log_front = 0.25 * (p.y * p.y - p.x * p.x);
    const double log_gauss = -shift * shift / (2.0 * q);
    const double erfc_term = std::erfc(shift / std::sqrt(2.0 * q));
    const double log_root_q = 0.5 * std::log(q);

    switch (entry) {
    case 1:
        return b * std::exp(-p.c * t + log_front + log_gauss - log_root_q);
    case 2:
        return b * kSqrtHalfPi * std::exp(-p.c * t + log_front) * erfc_term;
    case 3: {
        double gauss_part = 0.0;
        if (companion != 0.0) {
            const double mag = std::exp(2.0 * std::log(b) - (b + p.c) * t + log_front + log_gauss -
                                        3.0 * log_root_q + std::log(std::abs(companion)));
            gauss_part = companion < 0.0 ? -mag : mag;
        }
        return gauss_part - p.c * b * kSqrtHalfPi * std::exp(-p.c * t + log_front) * erfc_term;
    }
    case 4:
        return std::exp(log_front - p.c * t) *
               (b * std::exp(log_root_q + log_gauss) - shift * b * kSqrtHalfPi * erfc_term);
    case 5:
        return std::exp(log_front) * (b * std::exp(-(2.0 * b + p.c) * t + log_gauss - log_root_q) +
                                      p.x * b * kSqrtHalfPi * std::exp(-(b + p.c) * t) * erfc_term);
    case 6:
        return std::exp(log_front - p.c * t) *
               (b * std::exp(log_gauss - log_root_q) - p.y * b * kSqrtHalfPi * erfc_term);
    default:
        break;
    }
    throw DomainError("table1_time: entry must be 1..6");
}

double table1_transform(int entry, double s, const PairParams& p)
{
    require_entry(entry, "table1_transform");
    require_params(p, "table1_transform");
    require_sum(p, "table1_transform");
    if (!(s > 0.0)) {
        throw DomainError("table1_transform: requires s > 0");
    }
    const double nu = (s + p.c) / p.beta;
    const double log_first = log_gamma(nu) + log_pcf(-nu, p.x);
    switch (entry) {
    case 1:
        return std::exp(log_first + log_pcf(-nu, p.y));
    case 2:
        return std::exp(log_first + log_pcf(-1.0 - nu, p.y));
    case 3: {
        double value = std::exp(std::log(s) + log_first + log_pcf(-1.0 - nu, p.y));
        if (is_zero_sum(p.x, p.y)) {
            value -= p.beta * kSqrtHalfPi;
        }
        return value;
    }
    case 4:
        return std::exp(log_first + log_pcf(-2.0 - nu, p.y));
    case 5:
        return std::exp(std::log(nu) + log_first + log_pcf(-2.0 - nu, p.y));
    case 6:
        return std::exp(std::log((s + p.beta + p.c) / p.beta) + log_first + log_pcf(-2.0 - nu, p.y));
    default:
        break;
    }
    throw DomainError("table1_transform: entry must be 1..6");
}

SingularityHint table1_time_hint(int entry)
{
    require_entry(entry, "table1_time_hint");
    switch (entry) {
    case 2:
    case 4:
        return {0.0, 0.0};
    default:
        return {-0.5, 0.0};
    }
}

IntegralEstimate forward_laplace(const HalfLineIntegrand& f, double s, double tol, SingularityHint hint)
{
    if (!(s > 0.0)) {
        throw DomainError("forward_laplace: requires s > 0");
    }
    return integrate_semi_infinite([&](double t) { return std::exp(-s * t) * f(t); }, tol, hint);
}

PairVerification verify_pair(int entry, const PairParams& params, std::span<const double> s_grid,
                             double tol)
{
    require_entry(entry, "verify_pair");
    PairVerification out;
    out.entry = entry;
    out.params = params;
    out.pass = true;
    const LaplacePair pair{entry, params};
    for (const double s : s_grid) {
        PairResidual row;
        row.s = s;
        const IntegralEstimate fwd =
            forward_laplace([&](double t) { return pair.time_fn(t); }, s, 1e-11, table1_time_hint(entry));
        row.forward = fwd.value;
        row.closed = pair.transform(s);
        row.residual = std::abs(row.forward - row.closed) / std::max(1.0, std::abs(row.closed));
        row.pass = fwd.converged && row.residual <= tol;
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    return out;
}

double ou_density_transform(double w, double s, double w0, const PairParams& p)
{
    require_diffusion(p, "ou_density_transform");
    if (!(s > 0.0)) {
        throw DomainError("ou_density_transform: requires s > 0");
    }
    const double nu = s / p.beta;
    const double zw = ou_scaled_state(w, p);
    const double zw0 = ou_scaled_state(w0, p);
    const double log_front = log_gamma(nu) - std::log(p.sigma) - 0.5 * std::log(std::numbers::pi * p.beta) +
                             ou_exponent(w, w0, p);
    if (w >= w0) {
        return std::exp(log_front + log_pcf(-nu, zw) + log_pcf(-nu, -zw0));
    }
    return std::exp(log_front + log_pcf(-nu, -zw) + log_pcf(-nu, zw0));
}

double ou_distribution_transform(double w1, double s, double w0, const PairParams& p)
{
    require_diffusion(p, "ou_distribution_transform");
    if (!(s > 0.0)) {
        throw DomainError("ou_distribution_transform: requires s > 0");
    }
    if (w1 < w0) {
        throw DomainError("ou_distribution_transform: requires w1 >= w0");
    }
    const double nu = s / p.beta;
    const double log_term = log_gamma(nu) - std::log(p.beta) - 0.5 * std::log(2.0 * std::numbers::pi) +
                            ou_exponent(w1, w0, p) + log_pcf(-nu, -ou_scaled_state(w0, p)) +
                            log_pcf(-1.0 - nu, ou_scaled_state(w1, p));
    return 1.0 / s - std::exp(log_term);
}

double ou_time_density(double w, double t, double w0, const PairParams& p)
{
    require_diffusion(p, "ou_time_density");
    const double level = p.alpha / p.beta;
    const double mean = w0 + (level - w0) * -std::expm1(-p.beta * t);
    const double var = p.sigma * p.sigma * -std::expm1(-2.0 * p.beta * t) / (2.0 * p.beta);
    const double d = w - mean;
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double ou_time_distribution(double w1, double t, double w0, const PairParams& p)
{
    require_diffusion(p, "ou_time_distribution");
    const double level = p.alpha / p.beta;
    const double mean = w0 + (level - w0) * -std::expm1(-p.beta * t);
    const double sd = p.sigma * std::sqrt(-std::expm1(-2.0 * p.beta * t) / (2.0 * p.beta));
    return std_normal_cdf((w1 - mean) / sd);
}

double bm_density_transform(double w, double s, double w0, double alpha, double sigma)
{
    if (!(s > 0.0) || !(sigma > 0.0)) {
        throw DomainError("bm_density_transform: requires s > 0 and sigma > 0");
    }
    const double root = std::sqrt(alpha * alpha + 2.0 * s * sigma * sigma);
    const double rate = w0 <= w ? (-alpha + root) : (-alpha - root);
    return std::exp(rate / (sigma * sigma) * (w0 - w)) / root;
}

double bm_distribution_transform(double w1, double s, double w0, double alpha, double sigma)
{
    if (!(s > 0.0) || !(sigma > 0.0)) {
        throw DomainError("bm_distribution_transform: requires s > 0 and sigma > 0");
    }
    if (w1 < w0) {
        throw DomainError("bm_distribution_transform: requires w1 >= w0");
    }
    const double root = std::sqrt(alpha * alpha + 2.0 * s * sigma * sigma);
    const double weight = sigma * sigma / (root * (root - alpha));
    return 1.0 / s - weight * std::exp((-alpha + root) / (sigma * sigma) * (w0 - w1));
}

double bm_time_density(double w, double t, double w0, double alpha, double sigma)
{
    const double var = sigma * sigma * t;
    const double d = w - w0 - alpha * t;
    return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double bm_time_distribution(double w1, double t, double w0, double alpha, double sigma)
{
    return std_normal_cdf((w1 - w0 - alpha * t) / (sigma * std::sqrt(t)));
}

} // namespace pcf
