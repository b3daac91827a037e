#ifndef PCF_LIMITS_HPP
#define PCF_LIMITS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcf {

/// beta -> 0 limits of Gamma-function times parabolic-cylinder expressions.
/// Entries 1-8 follow the table order; the ratio cases are
/// sqrt(beta) D_{-s/beta}(z) / D_{-1-s/beta}(z), z = x sqrt(beta) - alpha / sqrt(beta).
enum class LimitEntry
{
    E1 = 1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    RatioGeneral,
    RatioGolden, // s = 1, alpha = 1, x = 0 -> (sqrt(5) - 1) / 2
    RatioS4,     // s = 4, alpha = 0, x = 1 -> 2
};

enum class RhsKind
{
    Finite,
    Zero,
    Infinite,
};

struct LimitCase
{
    LimitEntry entry = LimitEntry::E1;
    double s = 1.0;
    double alpha = 0.0;
    double x = 0.0;
    double y = 0.0;

    RhsKind rhs_kind() const;

    static LimitCase golden_ratio();
    static LimitCase ratio_s4();
};

std::string_view to_string(LimitEntry entry);
std::optional<LimitEntry> parse_limit_entry(std::string_view name);

/// Natural log of the left-hand side at a finite beta > 0. Every factor is
/// positive, so the value is exp of this.
double limit_lhs_log(const LimitCase& c, double beta);
double limit_lhs(const LimitCase& c, double beta);

/// Closed-form beta -> 0 value: finite, 0 or +inf by rhs_kind().
double limit_rhs(const LimitCase& c);

struct Extrapolation
{
    double value = 0.0;
    /// |last tableau correction|, a rough error indicator.
    double correction = 0.0;
    /// Successive tableau diagonals did not shrink monotonically.
    bool low_confidence = false;
};

/// Polynomial (Richardson) extrapolation to beta = 0 of values sampled on a
/// strictly decreasing beta grid, assuming an error expansion
/// c1 beta + c2 beta^2 + ... . `stages` limits the number of eliminated
/// terms; the default uses every available point.
Extrapolation extrapolate(std::span<const double> betas, std::span<const double> values,
                          std::optional<int> stages = std::nullopt);

struct ConvergenceRecord
{
    LimitCase limit;
    std::vector<double> beta_grid;
    std::vector<double> lhs_values;
    std::vector<double> lhs_log_values;
    double extrapolated = 0.0;
    double rhs = 0.0;
    /// |extrapolated - rhs| / |rhs| for finite cases.
    double residual = 0.0;
    bool low_confidence = false;
};

inline constexpr double kDefaultBetaGrid[] = {0.4, 0.2, 0.1, 0.05};
inline constexpr double kLimitTolerance = 1e-3;

/// Samples the left-hand side on `beta_grid` and, for finite cases,
/// extrapolates to beta = 0.
ConvergenceRecord converge(const LimitCase& c, std::span<const double> beta_grid = kDefaultBetaGrid);

/// sqrt(beta) D_{-s/beta}(z) / D_{-1-s/beta}(z), z = x sqrt(beta) - alpha / sqrt(beta).
double ratio_general(double s, double alpha, double x, double beta);

/// Gamma(s/(2 beta)) / (sqrt(beta) Gamma((s + beta)/(2 beta))); tends to sqrt(2/s).
double gamma_ratio_limit_check(double s, double beta);

/// exp(-a log z) Gamma(z + a) / Gamma(z); tends to 1 as z -> inf.
double gamma_shift_ratio(double z, double a);

} // namespace pcf

#endif // PCF_LIMITS_HPP
