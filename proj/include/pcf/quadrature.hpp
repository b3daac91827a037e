#ifndef PCF_QUADRATURE_HPP
#define PCF_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace pcf {

/// Default relative tolerance of every integration routine.
inline constexpr double kDefaultTolerance = 1e-10;
/// Maximum number of step-halvings of the double-exponential rule.
inline constexpr int kMaxLevel = 12;
/// The (0, inf) range is truncated where the integrand mass has fallen this
/// many nats below its peak.
inline constexpr double kTruncationNats = 45.0;

struct IntegralEstimate
{
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    /// abs_error_estimate <= tol * |value| was reached within kMaxLevel.
    bool converged = false;
};

/// Algebraic behaviour of an integrand at the ends of (0, 1):
/// f ~ u^left_exponent as u -> 0 and f ~ (1 - u)^right_exponent as u -> 1.
/// Exponents must exceed -1. Exponentially damped ends may pass 0.
struct SingularityHint
{
    double left_exponent = 0.0;
    double right_exponent = 0.0;
};

/// Integrand on (0, 1). Receives both u and 1 - u, each accurate to full
/// relative precision, so that factors like (1 - u)^p stay exact near u = 1.
using UnitIntegrand = std::function<double(double u, double one_minus_u)>;

/// Integrand on (0, inf).
using HalfLineIntegrand = std::function<double(double t)>;

/// tanh-sinh quadrature of f over (0, 1). Non-convergence is reported through
/// the flag; a NaN from f throws ConvergenceError naming the abscissa.
IntegralEstimate integrate_unit(const UnitIntegrand& f, SingularityHint hint = {},
                                double tol = kDefaultTolerance);

/// Integral of f over (a, b) by affine map onto (0, 1).
IntegralEstimate integrate_interval(const HalfLineIntegrand& f, double a, double b,
                                    SingularityHint hint = {}, double tol = kDefaultTolerance);

/// Integral of an eventually exponentially decaying f over (0, inf).
///
/// The range is truncated where t |f(t)| drops kTruncationNats below its
/// maximum over a geometric scan, split at the peak, and each piece is
/// handled by integrate_unit. Only hint.left_exponent (behaviour at t -> 0)
/// is used.
IntegralEstimate integrate_semi_infinite(const HalfLineIntegrand& f, double tol = kDefaultTolerance,
                                         SingularityHint hint = {});

struct LogIntegralEstimate
{
    double log_value = 0.0;
    /// Estimated relative error of exp(log_value).
    double rel_error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// log of int_0^inf exp(log_f(t)) dt, summed with log-sum-exp over the
/// quadrature nodes so that integrands far outside double range are fine.
/// log_f may return -inf; an identically -inf integrand yields -inf.
LogIntegralEstimate log_integrate_semi_infinite(const HalfLineIntegrand& log_f,
                                                double tol = kDefaultTolerance);

/// log(sum exp(a_i)) without overflow. Returns -inf for empty or all -inf input.
double log_sum_exp(double a, double b);

} // namespace pcf

#endif // PCF_QUADRATURE_HPP
