#ifndef PCF_LAPLACE_PAIRS_HPP
#define PCF_LAPLACE_PAIRS_HPP

#include "pcf/quadrature.hpp"

#include <span>
#include <vector>

namespace pcf {

/// Parameters of the transform pairs and of the Ornstein-Uhlenbeck /
/// Brownian transition laws. beta is the mean-reversion rate, c >= 0 a
/// shift in s, alpha the drift and sigma > 0 the diffusion scale.
struct PairParams
{
    double beta = 1.0;
    double c = 0.0;
    double x = 0.0;
    double y = 0.0;
    double alpha = 0.0;
    double sigma = 1.0;
};

inline constexpr int kPairCount = 6;
inline constexpr double kPairTolerance = 1e-6;

/// Time-domain side f(t) of pair `entry` (1..6); requires t > 0, beta > 0,
/// c >= 0 and x + y >= 0.
double table1_time(int entry, double t, const PairParams& params);

/// Transform side F(s) = int_0^inf exp(-s t) f(t) dt of pair `entry`, in
/// closed form through the oracle and log Gamma. Entry 3 carries its
/// -beta sqrt(pi/2) term on the x + y = 0 boundary.
double table1_transform(int entry, double s, const PairParams& params);

/// Singularity hint for f(t) at t -> 0 for pair `entry`.
SingularityHint table1_time_hint(int entry);

/// A Table-style transform pair bound to its parameters.
struct LaplacePair
{
    int entry_id = 1;
    PairParams params;

    double time_fn(double t) const { return table1_time(entry_id, t, params); }
    double transform(double s) const { return table1_transform(entry_id, s, params); }
};

/// Numerical int_0^inf exp(-s t) f(t) dt.
IntegralEstimate forward_laplace(const HalfLineIntegrand& f, double s, double tol = 1e-11,
                                 SingularityHint hint = {});

struct PairResidual
{
    double s = 0.0;
    double forward = 0.0;
    double closed = 0.0;
    /// |forward - closed| / max(1, |closed|)
    double residual = 0.0;
    bool pass = false;
};

struct PairVerification
{
    int entry = 1;
    PairParams params;
    std::vector<PairResidual> rows;
    bool pass = false;
};

inline constexpr double kDefaultSGrid[] = {0.5, 1.0, 2.0, 4.0};

PairVerification verify_pair(int entry, const PairParams& params,
                             std::span<const double> s_grid = kDefaultSGrid,
                             double tol = kPairTolerance);

// Ornstein-Uhlenbeck dW = (alpha - beta W) dt + sigma dZ, W_0 = w0.

/// Laplace transform in t of the transition density at state w.
double ou_density_transform(double w, double s, double w0, const PairParams& params);

/// Laplace transform in t of the transition distribution Pr{W_t <= w1}, w1 >= w0.
double ou_distribution_transform(double w1, double s, double w0, const PairParams& params);

/// Gaussian transition density of the OU process at time t.
double ou_time_density(double w, double t, double w0, const PairParams& params);

/// Gaussian transition distribution Pr{W_t <= w1 | W_0 = w0}.
double ou_time_distribution(double w1, double t, double w0, const PairParams& params);

// Brownian motion with drift dW = alpha dt + sigma dZ.

double bm_density_transform(double w, double s, double w0, double alpha, double sigma);
double bm_distribution_transform(double w1, double s, double w0, double alpha, double sigma);
double bm_time_density(double w, double t, double w0, double alpha, double sigma);
double bm_time_distribution(double w1, double t, double w0, double alpha, double sigma);

} // namespace pcf

#endif // PCF_LAPLACE_PAIRS_HPP
