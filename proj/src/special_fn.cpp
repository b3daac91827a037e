#include "pcf/special_fn.hpp"

#include "pcf/errors.hpp"
#include "pcf/quadrature.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace pcf {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2Pi = 2.5066282746310005024;

bool is_nonpositive_integer(double a)
{
    return a <= 0.0 && std::floor(a) == a;
}

/// 1 / Gamma(a), zero at the poles.
double reciprocal_gamma(double a)
{
    if (is_nonpositive_integer(a)) {
        return 0.0;
    }
    return 1.0 / boost::math::tgamma(a);
}

struct SeriesSum
{
    double value = 0.0;
    double abs_sum = 0.0;
};

/// Kummer's M(a, b, x) by its power series, with the sum of |terms| kept for
/// the cancellation estimate.
SeriesSum kummer_m(double a, double b, double x)
{
    SeriesSum out;
    double term = 1.0;
    out.value = 1.0;
    out.abs_sum = 1.0;
    for (int k = 0; k < 5000; ++k) {
        term *= (a + k) / (b + k) * x / (k + 1);
        out.value += term;
        out.abs_sum += std::abs(term);
        if (term == 0.0 || (k > x && std::abs(term) < 1e-17 * out.abs_sum)) {
            return out;
        }
    }
    throw ConvergenceError("kummer series did not converge");
}

std::string describe(double v, double z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(v = " << v << ", z = " << z << ")";
    return os.str();
}

} // namespace

SpecialValue SpecialValue::from_log(double log_magnitude, int sign)
{
    SpecialValue sv;
    sv.log_value = log_magnitude;
    sv.sign = sign < 0 ? -1 : 1;
    sv.value = sv.sign * std::exp(log_magnitude);
    return sv;
}

SpecialValue SpecialValue::from_value(double value)
{
    SpecialValue sv;
    sv.value = value;
    sv.sign = value < 0.0 ? -1 : 1;
    sv.log_value = std::log(std::abs(value));
    return sv;
}

bool is_zero_sum(double x, double y)
{
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x + y) <= kZeroSumTolerance * scale;
}

EvalPoint EvalPoint::make(double v, double x, double y)
{
    return EvalPoint{v, x, y, is_zero_sum(x, y)};
}

double log_gamma(double a)
{
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("log_gamma: argument must be positive and finite");
    }
    return boost::math::lgamma(a);
}

double erfc(double x)
{
    return std::erfc(x);
}

SpecialValue pcf_oracle(double v, double z)
{
    if (!std::isfinite(v) || !std::isfinite(z)) {
        throw DomainError("pcf_oracle: non-finite argument " + describe(v, z));
    }
    if (!(v < 0.0)) {
        throw DomainError("pcf_oracle: requires v < 0 " + describe(v, z));
    }
    const double power = -v - 1.0;
    // The log-integrand is only known to about eps * |log f| near its peak,
    // which caps the attainable relative accuracy at large orders.
    const double peak = 0.5 * (std::sqrt(z * z + 4.0 * std::max(power, 0.0)) - z);
    const double log_scale = std::abs(power * std::log(std::max(peak, 1e-300))) + peak * (0.5 * peak + std::abs(z));
    const double tol = std::max(1e-13, 16.0 * std::numeric_limits<double>::epsilon() * log_scale);
    LogIntegralEstimate inner;
    if (power >= 0.0) {
        inner = log_integrate_semi_infinite(
            [power, z](double t) { return power * std::log(t) - t * (0.5 * t + z); }, tol);
    } else {
        // t = r^m with m = -1/v absorbs the t^(-v-1) endpoint singularity
        const double m = -1.0 / v;
        const double log_m = std::log(m);
        inner = log_integrate_semi_infinite(
            [m, log_m, z](double r) {
                const double t = std::pow(r, m);
                return log_m - t * (0.5 * t + z);
            },
            tol);
    }
    if (!inner.converged) {
        throw ConvergenceError("pcf_oracle: inner integral did not converge " + describe(v, z));
    }
    return SpecialValue::from_log(-0.25 * z * z - log_gamma(-v) + inner.log_value);
}

double pcf_kummer(double v, double z)
{
    if (std::abs(v) > 40.0 || std::abs(z) > 20.0) {
        throw ConvergenceError("pcf_kummer: outside the series window " + describe(v, z));
    }
    const double x = 0.5 * z * z;
    const double scale = std::exp2(0.5 * v) * kSqrtPi;
    const double c_even = scale * reciprocal_gamma(0.5 * (1.0 - v));
    const double c_odd = scale * std::numbers::sqrt2 * z * reciprocal_gamma(-0.5 * v);

    const SeriesSum even = kummer_m(-0.5 * v, 0.5, x);
    const SeriesSum odd = kummer_m(0.5 * (1.0 - v), 1.5, x);
    const double damp = std::exp(-0.25 * z * z);
    const double result = damp * (c_even * even.value - c_odd * odd.value);
    const double magnitude = damp * (std::abs(c_even) * even.abs_sum + std::abs(c_odd) * odd.abs_sum);
    if (magnitude > 1e5 * std::abs(result)) {
        throw ConvergenceError("pcf_kummer: cancellation too severe " + describe(v, z));
    }
    return result;
}

double pcf_at_zero(double v)
{
    const double a = 0.5 * (1.0 - v);
    if (is_nonpositive_integer(a)) {
        throw PoleError("pcf_at_zero: Gamma((1 - v)/2) has a pole at v = " + std::to_string(v));
    }
    if (a > 0.0) {
        return std::exp(0.5 * v * std::numbers::ln2 - log_gamma(a)) * kSqrtPi;
    }
    return std::exp2(0.5 * v) * kSqrtPi / boost::math::tgamma(a);
}

double pcf_value(double v, double z)
{
    if (v < 0.0) {
        return pcf_oracle(v, z).value;
    }
    // start from orders in [-2, -1) where the oracle integrand is regular
    const double steps = std::floor(v) + 2.0;
    double order = v - steps;
    double lower = pcf_oracle(order - 1.0, z).value;
    double current = pcf_oracle(order, z).value;
    for (int k = 0; k < static_cast<int>(steps); ++k) {
        const double next = z * current - order * lower;
        lower = current;
        current = next;
        order += 1.0;
    }
    return current;
}

double bessel_k_quarter(double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("bessel_k_quarter: requires x > 0");
    }
    const double z = 2.0 * std::sqrt(x);
    return kSqrt2Pi * pcf_oracle(-0.5, z).value / std::sqrt(z);
}

} // namespace pcf
