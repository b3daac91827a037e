#ifndef PCF_PRODUCT_REPS_HPP
#define PCF_PRODUCT_REPS_HPP

#include "pcf/quadrature.hpp"
#include "pcf/special_fn.hpp"

#include <optional>
#include <string_view>

namespace pcf {

/// Integral representations of D_v(x) D_{v+k}(y) and of the special cases
/// that follow from them. The T2_* members are the eight unit-interval forms;
/// the remaining members are the time-parameter form and the derived
/// single-function and cross-identity forms.
enum class RepId
{
    T2_1,        // D_v(x) D_v(y), Gaussian kernel
    T2_2,        // D_v(x) D_{v-1}(y), erfc kernel
    T2_3,        // D_v(x) D_{v-1}(y), exponential kernel, boundary term
    T2_4,        // D_v(x) D_{v-2}(y), mixed kernel
    T2_5,        // D_v(x) D_{v-2}(y), erfc weight in x
    T2_6,        // D_v(x) D_{v-2}(y), erfc weight in y
    T2_7,        // D_v(x) D_{v-2}(y), compact form, boundary term
    T2_8,        // D_v(x) D_{v+1}(y), boundary term
    TimeForm,    // D_v(x) D_v(y) over (0, inf) with a rate beta
    Malyshev,    // D_v(x) D_v(-x)
    Glasser,     // D_{-v}(x) D_{-v}(-y), v > 0
    SinglePcf,   // D_v(x), x >= 0
    ErfcProduct, // erfc(x) erfc(y)
    K14,         // K_{1/4}(x)
    K14D32,      // K_{1/4}(x) D_{-3/2}(y)
};

struct ProductRep
{
    RepId id;
    /// Order of the second factor minus the order of the first.
    int order_offset;
};

ProductRep product_rep(RepId id);
std::string_view to_string(RepId id);
std::optional<RepId> parse_rep_id(std::string_view name);

struct ProductValue
{
    double value = 0.0;
    IntegralEstimate estimate;
    /// The x + y = 0 boundary constant was added (T2_3, T2_7, T2_8 only).
    bool correction_applied = false;
};

// The unit-interval representations. All require v < 0 and x + y >= 0 and
// throw DomainError otherwise; ConvergenceError if the quadrature fails.
ProductValue dv_dv(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm1_erfc(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm1_exp(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm2_mixed(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm2_x(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm2_y(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvm2_compact(const EvalPoint& p, double tol = kDefaultTolerance);
ProductValue dv_dvp1(const EvalPoint& p, double tol = kDefaultTolerance);

/// Dispatch for T2_1 ... T2_8.
ProductValue evaluate_table_rep(RepId id, const EvalPoint& p, double tol = kDefaultTolerance);

/// D_v(x) D_v(y) from the (0, inf) form with rate beta > 0; beta-invariant.
ProductValue dv_dv_time_form(const EvalPoint& p, double beta, double tol = kDefaultTolerance);

/// D_v(x) D_{v+k}(y) for k in [-6, 6], reduced by the three-term recurrence
/// to the k = 0 and k = -1 representations.
double product_by_offset(const EvalPoint& p, int k);

/// D_v(x) D_v(-x) for v < 0 and any real x.
double malyshev_same_arg(double v, double x);

/// D_{-v}(x) D_{-v}(-y) for v > 0 and x >= y, from the (0, inf) kernel
/// t^(v/2-1) (t+1)^(-(v+1)/2) exp(-(x^2+y^2) t/2 + x y sqrt(t(t+1))).
double glasser_form(double v_pos, double x, double y);

/// D_v(x) for v < 0, x >= 0 from an erfc kernel on (0, 1).
double single_pcf(double v, double x);

/// erfc(x) erfc(y) for x + y >= 0.
double erfc_product(double x, double y);

/// K_{1/4}(x) for x > 0.
double k14_rep(double x);

/// K_{1/4}(x) D_{-3/2}(y) for x > 0, 2 sqrt(x) + y >= 0.
double k14_times_d32(double x, double y);

/// Reference value D_v(x) D_{v+k}(y) from the oracle (recurrence-lifted
/// where v + k >= 0).
double oracle_product(const EvalPoint& p, int k);

} // namespace pcf

#endif // PCF_PRODUCT_REPS_HPP
