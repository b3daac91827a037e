#include "pcf/errors.hpp"
#include "pcf/quadrature.hpp"
#include "pcf/special_fn.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pcf;

namespace {

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("endpoint singularities on the unit interval")
{
    const auto left = integrate_unit([](double u, double) { return 1.0 / std::sqrt(u); }, {-0.5, 0.0}, 1e-12);
    CHECK(left.converged);
    CHECK(rel(left.value, 2.0) < 1e-12);

    const auto right = integrate_unit([](double, double om) { return std::pow(om, -0.75); }, {0.0, -0.75}, 1e-12);
    CHECK(right.converged);
    CHECK(rel(right.value, 4.0) < 1e-12);

    // Strong singularity close to the integrability limit.
    const auto steep = integrate_unit([](double u, double) { return std::pow(u, -0.95); }, {-0.95, 0.0}, 1e-10);
    CHECK(rel(steep.value, 20.0) < 1e-9);
}

TEST_CASE("unit-interval kernel reproduces the oracle product")
{
    // D_v(x) D_v(y) = e^{(y^2-x^2)/4} / (2 Gamma(-v)) int_0^1 u^{-1/2} (1-u)^{-1-v/2}
    //                 exp(-shift^2 / (2u)) du, here at v = -1, x = y = 1.
    const double x = 1.0;
    const double y = 1.0;
    const double v = -1.0;
    const auto est = integrate_unit(
        [&](double u, double om) {
            const double shift = (x + y) - x * u / (1.0 + std::sqrt(om));
            return std::exp(-0.5 * std::log(u) + (-1.0 - 0.5 * v) * std::log(om) - shift * shift / (2.0 * u));
        },
        {-0.5, -1.0 - 0.5 * v});
    CHECK(est.converged);
    const double prefactor = std::exp(0.25 * (y * y - x * x) - std::numbers::ln2 - log_gamma(-v));
    const double d = pcf_oracle(v, 1.0).value;
    CHECK(rel(prefactor * est.value, d * d) < 1e-9);
}

TEST_CASE("affine interval")
{
    const auto est = integrate_interval([](double t) { return t * t; }, 1.0, 3.0);
    CHECK(rel(est.value, 26.0 / 3.0) < 1e-12);
}

TEST_CASE("half line")
{
    CHECK(rel(integrate_semi_infinite([](double t) { return std::exp(-t); }).value, 1.0) < 1e-12);
    CHECK(rel(integrate_semi_infinite([](double t) { return std::exp(-t * t / 2.0); }).value,
              std::sqrt(std::numbers::pi / 2.0)) < 1e-12);
    // t^{1/2} e^{-t^2/2 - 2t} = Gamma(3/2) e D_{-3/2}(2)
    const double lhs = integrate_semi_infinite([](double t) { return std::sqrt(t) * std::exp(-t * t / 2.0 - 2.0 * t); },
                                               1e-12, {0.5, 0.0})
                           .value;
    CHECK(rel(lhs, std::exp(log_gamma(1.5) + 1.0) * 0.095952316280494325758) < 1e-11);
    // Integrable singularity at the origin.
    const auto sing = integrate_semi_infinite([](double t) { return std::exp(-t) / std::sqrt(t); }, 1e-12, {-0.5, 0.0});
    CHECK(rel(sing.value, std::sqrt(std::numbers::pi)) < 1e-11);
}

TEST_CASE("log-space integration")
{
    CHECK(std::abs(log_integrate_semi_infinite([](double t) { return -t; }).log_value) < 1e-12);
    CHECK(std::abs(log_integrate_semi_infinite([](double t) { return -t * t / 2.0; }).log_value -
                   std::log(std::sqrt(std::numbers::pi / 2.0))) < 1e-12);
    // int t^99 e^{-t^2/2 + 10 t} dt = Gamma(100) e^{-25} D_{-100}(-10); the
    // integrand peaks near 1e63, far outside linear range for the sum.
    const auto big = log_integrate_semi_infinite([](double t) { return 99.0 * std::log(t) - t * t / 2.0 + 10.0 * t; });
    CHECK(big.converged);
    CHECK(std::abs(big.log_value - (log_gamma(100.0) + 25.0 + -76.877819834369576677)) < 1e-9);
    // Gamma(a) for large a.
    const auto gamma = log_integrate_semi_infinite([](double t) { return 149.0 * std::log(t) - t; });
    CHECK(std::abs(gamma.log_value - log_gamma(150.0)) < 1e-9);

    const auto none = log_integrate_semi_infinite([](double) { return -INFINITY; });
    CHECK(none.log_value == -INFINITY);
}

TEST_CASE("log-sum-exp")
{
    CHECK(log_sum_exp(-INFINITY, -INFINITY) == -INFINITY);
    CHECK(log_sum_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::numbers::ln2));
    CHECK(log_sum_exp(0.0, -INFINITY) == 0.0);
}

TEST_CASE("log and linear routes agree")
{
    for (const double a : {0.3, 1.0, 2.5, 7.0}) {
        for (const double z : {-1.5, 0.0, 2.0}) {
            const auto lin = integrate_semi_infinite(
                [&](double t) { return std::pow(t, a - 1.0) * std::exp(-t * t / 2.0 - z * t); }, 1e-12,
                {a - 1.0, 0.0});
            const auto lg = log_integrate_semi_infinite(
                [&](double t) { return (a - 1.0) * std::log(t) - t * t / 2.0 - z * t; }, 1e-12);
            CAPTURE(a);
            CAPTURE(z);
            CHECK(rel(std::exp(lg.log_value), lin.value) < 1e-10);
        }
    }
}

TEST_CASE("linearity on random smooth pairs")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> rate(0.1, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = coef(rng);
        const double b = coef(rng);
        const double p = rate(rng);
        const double q = rate(rng);
        const auto f = [&](double u, double) { return std::exp(-p * u); };
        const auto g = [&](double u, double) { return std::cos(q * u) / (1.0 + u * u); };
        const auto ef = integrate_unit(f);
        const auto eg = integrate_unit(g);
        const auto sum = integrate_unit([&](double u, double om) { return a * f(u, om) + b * g(u, om); });
        const double bound = std::abs(a) * ef.abs_error_estimate + std::abs(b) * eg.abs_error_estimate +
                             sum.abs_error_estimate + 1e-14 * (std::abs(a * ef.value) + std::abs(b * eg.value));
        CHECK(std::abs(sum.value - (a * ef.value + b * eg.value)) <= bound);
    }
}

TEST_CASE("refinement monotonicity on the kernel family")
{
    // u^{-1/2} (1-u)^{-1-v/2} exp(-s^2 / (2u)), the shape of the product kernels.
    for (const double v : {-0.3, -1.0, -2.5}) {
        for (const double sum : {0.0, 0.5, 2.0}) {
            const auto kernel = [&](double u, double om) {
                return std::exp(-0.5 * std::log(u) + (-1.0 - 0.5 * v) * std::log(om) - sum * sum / (2.0 * u));
            };
            const SingularityHint hint{-0.5, -1.0 - 0.5 * v};
            double previous = INFINITY;
            for (double tol = 1e-4; tol >= 1e-12; tol /= 2.0) {
                const auto est = integrate_unit(kernel, hint, tol);
                CHECK(est.abs_error_estimate <= previous);
                previous = est.abs_error_estimate;
            }
        }
    }
}

TEST_CASE("failures are reported, not hidden")
{
    CHECK_THROWS_AS(integrate_unit([](double, double) { return NAN; }), ConvergenceError);
    // Not integrable at 0: the flag must come back false.
    const auto bad = integrate_unit([](double u, double) { return 1.0 / u; }, {0.0, 0.0}, 1e-10);
    CHECK_FALSE(bad.converged);
}
