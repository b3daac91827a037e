#ifndef PCF_SUITES_HPP
#define PCF_SUITES_HPP

#include "pcf/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcf {

using XyGrid = std::vector<std::pair<double, double>>;

// Default grids reproduce the acceptance runs with no overrides.

struct RepsOptions
{
    /// Replaces every row tolerance when set.
    std::optional<double> tol;
    std::vector<double> v_grid{-0.3, -0.5, -1.0, -1.7, -2.5};
    XyGrid xy_grid{{0.0, 0.0}, {1.0, 0.5}, {2.0, -1.0}, {0.5, -0.5}, {3.0, 2.0}, {1.0, -1.0}};
    std::vector<double> beta_grid{0.5, 1.0, 2.0};
    /// Keep only rows with this case id.
    std::optional<std::string> entry;
    /// Non-zero seeds jitter the off-boundary (x, y) points.
    std::uint64_t seed = 0;
};

struct LaplaceOptions
{
    std::optional<double> tol;
    /// (beta, c) pairs.
    XyGrid beta_c_grid{{1.0, 0.0}, {1.0, 0.5}, {2.0, 0.0}};
    XyGrid xy_grid{{1.0, 0.5}, {0.0, 0.0}, {1.0, -1.0}};
    std::vector<double> s_grid{0.5, 1.0, 2.0, 4.0};
    /// "1".."6" or a case id such as "ou_density".
    std::optional<std::string> entry;
    std::uint64_t seed = 0;
};

struct LimitsOptions
{
    std::optional<double> tol;
    /// Strictly decreasing, at least three points.
    std::vector<double> beta_grid{0.4, 0.2, 0.1, 0.05};
    /// "1".."8", "ratio-general", "ratio-golden" or "ratio-s4".
    std::optional<std::string> entry;
    std::uint64_t seed = 0;
};

VerificationReport verify_reps(const RepsOptions& options = {});
VerificationReport verify_laplace(const LaplaceOptions& options = {});
VerificationReport verify_limits(const LimitsOptions& options = {});

/// The three suites merged into one report named "all". Case ids are
/// distinct across suites.
VerificationReport report_all(const RepsOptions& reps, const LaplaceOptions& laplace, const LimitsOptions& limits);

/// Case ids accepted by the `entry` filters.
std::vector<std::string> reps_case_ids();
std::vector<std::string> laplace_case_ids();
std::vector<std::string> limits_entry_names();

} // namespace pcf

#endif // PCF_SUITES_HPP
