#include "pcf/quadrature.hpp"

#include "pcf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace pcf {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kSmallestOffset = 1e-300;
constexpr double kBoundedOffset = 1e-18;
constexpr int kMinLevel = 4;

/// Closest approach to an endpoint needed so that the neglected end piece
/// int_0^delta u^e du stays below ~1e-16 relative.
double endpoint_offset(double exponent)
{
    if (exponent >= 0.0) {
        return kBoundedOffset;
    }
    const double e1 = std::max(1.0 + exponent, 1e-3);
    const double log_delta = std::log(1e-16 * e1) / e1;
    return std::clamp(std::exp(log_delta), kSmallestOffset, kBoundedOffset);
}

/// tau at which the tanh-sinh abscissa comes within `offset` of an endpoint.
double tau_for_offset(double offset)
{
    // offset ~ exp(-2 s), s = (pi/2) sinh(tau)
    const double s = -std::log(offset) / 2.0;
    return std::asinh(s / kHalfPi);
}

struct Node
{
    double u;
    double one_minus_u;
    double weight; // d u / d tau
};

Node node_at(double tau)
{
    const double s = kHalfPi * std::sinh(tau);
    const double e = std::exp(-2.0 * std::abs(s));
    const double inv = 1.0 / (1.0 + e);
    Node n{};
    if (s >= 0.0) {
        n.u = inv;
        n.one_minus_u = e * inv;
    } else {
        n.u = e * inv;
        n.one_minus_u = inv;
    }
    n.weight = 2.0 * kHalfPi * std::cosh(tau) * e * inv * inv;
    return n;
}

[[noreturn]] void throw_bad_value(double u, double fu)
{
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << fu << " at u = " << u;
    throw ConvergenceError(os.str());
}

/// Visits the tanh-sinh nodes of level `level` (all nodes for level 0, the
/// odd multiples of h = 2^-level otherwise) within [-tau_left, tau_right].
template <typename Visit>
void for_level(int level, double tau_left, double tau_right, Visit&& visit)
{
    const double h = std::ldexp(1.0, -level);
    const long step = level == 0 ? 1 : 2;
    const long first = level == 0 ? 0 : 1;
    for (long k = first;; k += step) {
        const double tau = static_cast<double>(k) * h;
        const bool right = tau <= tau_right;
        const bool left = k != 0 && tau <= tau_left;
        if (!right && !left) {
            break;
        }
        if (right) {
            visit(node_at(tau), tau);
        }
        if (left) {
            visit(node_at(-tau), -tau);
        }
    }
}

struct EdgeTracker
{
    double tau = 0.0;
    double magnitude = 0.0;
    double offset = 1.0;

    void update(double node_tau, double f_abs, double dist)
    {
        if (std::abs(node_tau) >= tau) {
            tau = std::abs(node_tau);
            magnitude = f_abs;
            offset = dist;
        }
    }
};

IntegralEstimate de_linear(const UnitIntegrand& f, SingularityHint hint, double tol, double abs_floor)
{
    const double tau_left = tau_for_offset(endpoint_offset(hint.left_exponent));
    const double tau_right = tau_for_offset(endpoint_offset(hint.right_exponent));

    IntegralEstimate out;
    double sum = 0.0;
    EdgeTracker left_edge;
    EdgeTracker right_edge;
    double previous = 0.0;

    for (int level = 0; level <= kMaxLevel; ++level) {
        for_level(level, tau_left, tau_right, [&](const Node& n, double tau) {
            const double fu = f(n.u, n.one_minus_u);
            ++out.evaluations;
            if (!std::isfinite(fu)) {
                throw_bad_value(n.u, fu);
            }
            sum += fu * n.weight;
            if (tau < 0.0) {
                left_edge.update(tau, std::abs(fu), n.u);
            } else {
                right_edge.update(tau, std::abs(fu), n.one_minus_u);
            }
        });
        const double current = std::ldexp(sum, -level);
        if (level > 0) {
            const double tail =
                left_edge.magnitude * left_edge.offset / std::max(1.0 + hint.left_exponent, 1e-3) +
                right_edge.magnitude * right_edge.offset / std::max(1.0 + hint.right_exponent, 1e-3);
            out.value = current;
            out.abs_error_estimate = std::abs(current - previous) + tail;
            const double target = std::max(tol * std::abs(current), abs_floor);
            if (level >= kMinLevel && out.abs_error_estimate <= target) {
                out.converged = true;
                return out;
            }
        }
        previous = current;
    }
    return out;
}

LogIntegralEstimate de_log(const UnitIntegrand& log_f, SingularityHint hint, double tol,
                           double log_abs_floor)
{
    const double tau_left = tau_for_offset(endpoint_offset(hint.left_exponent));
    const double tau_right = tau_for_offset(endpoint_offset(hint.right_exponent));

    LogIntegralEstimate out;
    double log_sum = -INFINITY;
    double previous = -INFINITY;

    for (int level = 0; level <= kMaxLevel; ++level) {
        for_level(level, tau_left, tau_right, [&](const Node& n, double) {
            const double lf = log_f(n.u, n.one_minus_u);
            ++out.evaluations;
            if (std::isnan(lf) || lf == INFINITY) {
                throw_bad_value(n.u, lf);
            }
            if (n.weight > 0.0) {
                log_sum = log_sum_exp(log_sum, lf + std::log(n.weight));
            }
        });
        const double current = log_sum - level * std::numbers::ln2;
        if (level > 0) {
            out.log_value = current;
            if (current == -INFINITY) {
                out.rel_error_estimate = 0.0;
            } else if (previous == -INFINITY) {
                out.rel_error_estimate = INFINITY;
            } else {
                out.rel_error_estimate = std::abs(std::expm1(previous - current));
            }
            const double floor_rel =
                current == -INFINITY ? INFINITY : std::exp(log_abs_floor - current);
            if (level >= kMinLevel && out.rel_error_estimate <= std::max(tol, floor_rel)) {
                out.converged = true;
                return out;
            }
        }
        previous = current;
    }
    return out;
}

/// Result of scanning log(t) + log|f(t)| on a geometric grid.
struct Scan
{
    double peak_t = 0.0;
    double end_t = 0.0;
    double log_mass = -INFINITY;     // rough log of the whole integral
    double left_exponent = 0.0;      // estimated f ~ t^e as t -> 0
    bool decayed = false;
    std::size_t evaluations = 0;
};

constexpr int kScanFirst = -120; // t = 2^-30
constexpr int kScanLast = 160;   // t = 2^40
constexpr int kScanBelowRun = 16;
constexpr double kScanStep = 0.25; // log2 spacing

template <typename LogMass>
Scan scan_half_line(LogMass&& log_mass_at)
{
    Scan sc;
    double best = -INFINITY;
    int best_j = kScanFirst;
    int below_run = 0;
    int run_start = kScanFirst;
    double first_g = NAN;
    double second_g = NAN;
    double log_sum = -INFINITY;

    for (int j = kScanFirst; j <= kScanLast; ++j) {
        const double t = std::exp2(j * kScanStep);
        const double g = log_mass_at(t);
        ++sc.evaluations;
        if (j == kScanFirst) {
            first_g = g;
        } else if (j == kScanFirst + 1) {
            second_g = g;
        }
        log_sum = log_sum_exp(log_sum, g);
        if (g > best) {
            best = g;
            best_j = j;
            below_run = 0;
            continue;
        }
        if (g < best - kTruncationNats) {
            if (below_run == 0) {
                run_start = j;
            }
            if (++below_run >= kScanBelowRun) {
                sc.decayed = true;
                break;
            }
        } else {
            below_run = 0;
        }
    }

    sc.peak_t = std::exp2(best_j * kScanStep);
    sc.end_t = std::exp2((sc.decayed ? run_start : kScanLast) * kScanStep);
    sc.log_mass = log_sum + std::log(kScanStep * std::numbers::ln2);
    if (std::isfinite(first_g) && std::isfinite(second_g)) {
        // slope of log(t f) in log t, minus one
        sc.left_exponent = (second_g - first_g) / (kScanStep * std::numbers::ln2) - 1.0;
    }
    return sc;
}

double clamp_exponent(double e)
{
    return std::max(e, -0.999);
}

} // namespace

double log_sum_exp(double a, double b)
{
    if (a == -INFINITY) {
        return b;
    }
    if (b == -INFINITY) {
        return a;
    }
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

IntegralEstimate integrate_unit(const UnitIntegrand& f, SingularityHint hint, double tol)
{
    if (!(hint.left_exponent > -1.0) || !(hint.right_exponent > -1.0)) {
        throw DomainError("integrate_unit: singularity exponents must exceed -1");
    }
    if (!(tol > 0.0)) {
        throw DomainError("integrate_unit: tolerance must be positive");
    }
    return de_linear(f, hint, tol, 0.0);
}

IntegralEstimate integrate_interval(const HalfLineIntegrand& f, double a, double b,
                                    SingularityHint hint, double tol)
{
    const double len = b - a;
    if (!(len > 0.0)) {
        throw DomainError("integrate_interval: empty interval");
    }
    auto mapped = [&](double u, double one_minus_u) {
        // evaluate from the nearer end to keep the abscissa accurate
        const double t = u < 0.5 ? a + len * u : b - len * one_minus_u;
        return f(t);
    };
    IntegralEstimate est = integrate_unit(mapped, hint, tol);
    est.value *= len;
    est.abs_error_estimate *= len;
    return est;
}

IntegralEstimate integrate_semi_infinite(const HalfLineIntegrand& f, double tol, SingularityHint hint)
{
    if (!(tol > 0.0)) {
        throw DomainError("integrate_semi_infinite: tolerance must be positive");
    }
    const Scan sc = scan_half_line([&](double t) {
        const double ft = f(t);
        if (std::isnan(ft)) {
            throw_bad_value(t, ft);
        }
        return std::log(t) + std::log(std::abs(ft));
    });

    IntegralEstimate out;
    out.evaluations = sc.evaluations;
    if (sc.log_mass == -INFINITY) {
        out.converged = true;
        return out;
    }
    const double abs_floor = tol * std::exp(sc.log_mass) * 1e-3;
    const double left_e = clamp_exponent(std::min(hint.left_exponent, sc.left_exponent));

    auto piece = [&](double a, double b, SingularityHint h) {
        const double len = b - a;
        return de_linear(
            [&](double u, double one_minus_u) {
                const double t = u < 0.5 ? a + len * u : b - len * one_minus_u;
                return f(t);
            },
            h, tol, abs_floor / len);
    };
    const IntegralEstimate lo = piece(0.0, sc.peak_t, {left_e, 0.0});
    const IntegralEstimate hi = piece(sc.peak_t, std::max(sc.end_t, 2.0 * sc.peak_t), {0.0, 0.0});
    const double len_lo = sc.peak_t;
    const double len_hi = std::max(sc.end_t, 2.0 * sc.peak_t) - sc.peak_t;

    out.value = lo.value * len_lo + hi.value * len_hi;
    out.abs_error_estimate = lo.abs_error_estimate * len_lo + hi.abs_error_estimate * len_hi;
    out.evaluations += lo.evaluations + hi.evaluations;
    out.converged = lo.converged && hi.converged && sc.decayed &&
                    out.abs_error_estimate <= std::max(tol * std::abs(out.value), abs_floor);
    return out;
}

LogIntegralEstimate log_integrate_semi_infinite(const HalfLineIntegrand& log_f, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("log_integrate_semi_infinite: tolerance must be positive");
    }
    const Scan sc = scan_half_line([&](double t) {
        const double lf = log_f(t);
        if (std::isnan(lf)) {
            throw_bad_value(t, lf);
        }
        return std::log(t) + lf;
    });

    LogIntegralEstimate out;
    out.evaluations = sc.evaluations;
    if (sc.log_mass == -INFINITY) {
        out.log_value = -INFINITY;
        out.converged = true;
        return out;
    }
    const double log_floor = std::log(tol * 1e-3) + sc.log_mass;
    const double left_e = clamp_exponent(sc.left_exponent);
    const double end_t = std::max(sc.end_t, 2.0 * sc.peak_t);

    auto piece = [&](double a, double b, SingularityHint h) {
        const double len = b - a;
        LogIntegralEstimate est = de_log(
            [&](double u, double one_minus_u) {
                const double t = u < 0.5 ? a + len * u : b - len * one_minus_u;
                return log_f(t);
            },
            h, tol, log_floor - std::log(len));
        est.log_value += std::log(len);
        return est;
    };
    const LogIntegralEstimate lo = piece(0.0, sc.peak_t, {left_e, 0.0});
    const LogIntegralEstimate hi = piece(sc.peak_t, end_t, {0.0, 0.0});

    out.log_value = log_sum_exp(lo.log_value, hi.log_value);
    out.evaluations += lo.evaluations + hi.evaluations;
    const double w_lo = lo.log_value == -INFINITY ? 0.0 : std::exp(lo.log_value - out.log_value);
    const double w_hi = hi.log_value == -INFINITY ? 0.0 : std::exp(hi.log_value - out.log_value);
    out.rel_error_estimate = w_lo * lo.rel_error_estimate + w_hi * hi.rel_error_estimate;
    out.converged = lo.converged && hi.converged && sc.decayed;
    return out;
}

} // namespace pcf
