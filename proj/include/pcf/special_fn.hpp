#ifndef PCF_SPECIAL_FN_HPP
#define PCF_SPECIAL_FN_HPP

#include <cmath>

namespace pcf {

/// A real value carried both linearly and as (sign, log|value|).
///
/// The log-space half stays finite where the linear value under- or
/// overflows, e.g. D_v(z) at v = -80 or Gamma(s / beta) at beta = 0.05.
struct SpecialValue
{
    double value = 0.0;
    double log_value = -INFINITY;
    int sign = 1;

    static SpecialValue from_log(double log_magnitude, int sign = 1);
    static SpecialValue from_value(double value);
};

/// Classification of an (x, y) pair as lying on the x + y = 0 boundary.
///
/// Relative tolerance: |x + y| <= kZeroSumTolerance * max(1, |x|, |y|).
inline constexpr double kZeroSumTolerance = 1e-12;
bool is_zero_sum(double x, double y);

/// An order v and two real arguments; the common input of every product
/// representation.
struct EvalPoint
{
    double v = 0.0;
    double x = 0.0;
    double y = 0.0;
    bool sum_is_zero = false;

    static EvalPoint make(double v, double x, double y);
};

/// ln Gamma(a) for a > 0. Throws DomainError otherwise.
double log_gamma(double a);

/// Complementary error function on the whole real line.
double erfc(double x);

/// D_v(z) for v < 0 from the Laplace-type integral
///   D_v(z) = exp(-z^2/4) / Gamma(-v) * int_0^inf t^(-v-1) exp(-t^2/2 - z t) dt,
/// assembled in log space. Throws DomainError for v >= 0 and ConvergenceError
/// if the inner integral does not converge.
SpecialValue pcf_oracle(double v, double z);

/// D_v(z) from the even/odd Kummer-function decomposition. Independent of
/// pcf_oracle; restricted to |v| <= 40, |z| <= 20 and throws ConvergenceError
/// when cancellation between the even and odd parts would cost more than
/// about five significant digits.
double pcf_kummer(double v, double z);

/// D_v(0) = 2^(v/2) sqrt(pi) / Gamma((1 - v) / 2). PoleError at the poles.
double pcf_at_zero(double v);

/// D_v(z) for any real v: the oracle for v < 0, lifted to v >= 0 with the
/// three-term recurrence D_{v+1} = z D_v - v D_{v-1}.
double pcf_value(double v, double z);

/// K_{1/4}(x) for x > 0 through D_{-1/2}(2 sqrt(x)).
double bessel_k_quarter(double x);

} // namespace pcf

#endif // PCF_SPECIAL_FN_HPP
