#include "pcf/errors.hpp"
#include "pcf/laplace_pairs.hpp"
#include "pcf/quadrature.hpp"
#include "pcf/special_fn.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pcf;

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

double oracle(double v, double z)
{
    return pcf_oracle(v, z).value;
}

/// Entry 1 time side written out independently:
/// beta e^{-ct} e^{(y^2-x^2)/4} exp(-(y + x e^{-bt})^2 / (2(1 - e^{-2bt}))) / sqrt(1 - e^{-2bt}).
double entry1_by_hand(double t, const PairParams& p)
{
    const double e = std::exp(-p.beta * t);
    const double q = 1.0 - e * e;
    const double m = p.y + p.x * e;
    return p.beta * std::exp(-p.c * t) * std::exp((p.y * p.y - p.x * p.x) / 4.0) * std::exp(-m * m / (2.0 * q)) /
           std::sqrt(q);
}

} // namespace

TEST_CASE("time side")
{
    const PairParams p{1.0, 0.0, 1.0, 0.5};
    CHECK(rel(table1_time(1, 1.0, p), entry1_by_hand(1.0, p)) < 1e-14);
    CHECK(rel(table1_time(1, 40.0, p), std::exp((0.25 - 1.0) / 4.0 - 0.125)) < 1e-12);
    const PairParams zero{1.0, 0.0, 0.0, 0.0};
    CHECK(rel(table1_time(2, 0.5, zero), kSqrtHalfPi) < 1e-14);
    CHECK_THROWS_AS(table1_time(1, 0.0, p), DomainError);
    CHECK_THROWS_AS(table1_time(7, 1.0, p), DomainError);
    CHECK_THROWS_AS(table1_time(1, 1.0, PairParams{1.0, 0.0, 1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(table1_time(1, 1.0, PairParams{0.0, 0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(table1_time(1, 1.0, PairParams{1.0, -0.1, 1.0, 1.0}), DomainError);
}

TEST_CASE("transform side")
{
    CHECK(rel(table1_transform(1, 1.0, PairParams{1.0, 0.0, 0.0, 0.0}), std::numbers::pi / 2.0) < 1e-12);
    CHECK(rel(table1_transform(2, 2.0, PairParams{1.0, 0.0, 1.0, 0.0}), oracle(-2.0, 1.0) * oracle(-3.0, 0.0)) < 1e-12);
    // prefactor (s + c) / beta = 3, Gamma(3) = 2
    CHECK(rel(table1_transform(5, 1.0, PairParams{0.5, 0.5, 0.5, 0.5}), 3.0 * 2.0 * oracle(-3.0, 0.5) * oracle(-5.0, 0.5)) <
          1e-12);
    CHECK_THROWS_AS(table1_transform(1, 0.0, PairParams{}), DomainError);
}

TEST_CASE("forward transform")
{
    CHECK(rel(forward_laplace([](double) { return 1.0; }, 2.0).value, 0.5) < 1e-12);
    CHECK(rel(forward_laplace([](double t) { return std::exp(-3.0 * t); }, 1.5).value, 1.0 / 4.5) < 1e-12);
    CHECK_THROWS_AS(forward_laplace([](double) { return 1.0; }, 0.0), DomainError);
}

TEST_CASE("pair identity")
{
    const PairParams grid[] = {{1.0, 0.0, 1.0, 0.5}, {1.0, 0.5, 0.0, 0.0}, {2.0, 0.0, 1.0, -1.0},
                               {0.5, 0.25, 2.0, 0.5}, {3.0, 1.0, -0.5, 1.5}};
    for (int e = 1; e <= kPairCount; ++e) {
        for (const PairParams& p : grid) {
            const PairVerification r = verify_pair(e, p);
            CAPTURE(e);
            CAPTURE(p.x);
            CAPTURE(p.y);
            CHECK(r.pass);
            CHECK(r.rows.size() == 4);
        }
    }
    const PairParams p6{2.0, 0.5, 2.0, 1.0};
    const double s1[] = {1.0};
    CHECK(verify_pair(6, p6, s1).pass);
}

TEST_CASE("entry 3 at x + y = 0 needs its constant")
{
    // Without the boundary constant the transform is off by beta sqrt(pi/2).
    const PairParams p{1.0, 0.0, 1.0, -1.0};
    const double fwd =
        forward_laplace([&](double t) { return table1_time(3, t, p); }, 1.0, 1e-11, table1_time_hint(3)).value;
    const double closed = table1_transform(3, 1.0, p);
    CHECK(std::abs(fwd - closed) < 1e-8);
    const double uncorrected = closed + kSqrtHalfPi;
    CHECK(std::abs(fwd - uncorrected) > 1.0);
}

TEST_CASE("Ornstein-Uhlenbeck transition law")
{
    PairParams p;
    p.alpha = 0.5;
    p.beta = 1.0;
    p.sigma = std::numbers::sqrt2;
    for (const double w : {1.0, -1.0, 0.3}) {
        const double fwd =
            forward_laplace([&](double t) { return ou_time_density(w, t, 0.0, p); }, 1.0).value;
        CHECK(rel(ou_density_transform(w, 1.0, 0.0, p), fwd) < 1e-6);
    }
    // Direct substitution at alpha = 0.
    PairParams q = p;
    q.alpha = 0.0;
    const double direct =
        std::exp(-0.25) / std::sqrt(2.0 * std::numbers::pi) * oracle(-1.0, 1.0) * oracle(-1.0, 0.0);
    CHECK(rel(ou_density_transform(1.0, 1.0, 0.0, q), direct) < 1e-12);

    // Branch continuity at w = w0.
    const double w0 = 0.4;
    CHECK(rel(ou_density_transform(w0 + 1e-12, 1.0, w0, p), ou_density_transform(w0 - 1e-12, 1.0, w0, p)) < 1e-9);

    const double dist = ou_distribution_transform(0.0, 1.0, 0.0, q);
    CHECK(rel(dist, 1.0 - oracle(-1.0, 0.0) * oracle(-2.0, 0.0) / std::sqrt(2.0 * std::numbers::pi)) < 1e-12);
    CHECK_THROWS_AS(ou_distribution_transform(-1.0, 1.0, 0.0, p), DomainError);
    CHECK_THROWS_AS(ou_density_transform(0.0, 1.0, 0.0, PairParams{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("OU distribution is the integral of the density")
{
    PairParams p;
    p.alpha = 0.5;
    p.beta = 1.0;
    p.sigma = std::numbers::sqrt2;
    const double s = 1.0;
    const double w0 = 0.0;
    const double w1 = 0.8;
    // Below w0 the density transform decays like a Gaussian in w.
    const double below = integrate_semi_infinite([&](double u) { return ou_density_transform(w0 - u, s, w0, p); }).value;
    const double between =
        integrate_interval([&](double w) { return ou_density_transform(w, s, w0, p); }, w0, w1).value;
    CHECK(rel(below + between, ou_distribution_transform(w1, s, w0, p)) < 1e-8);
}

TEST_CASE("derivative relation")
{
    PairParams p;
    p.alpha = 0.5;
    p.beta = 1.0;
    p.sigma = std::numbers::sqrt2;
    const double h = 1e-4;
    for (const double w1 : {0.3, 1.0, 2.0}) {
        const double d = (ou_distribution_transform(w1 + h, 1.0, 0.0, p) - ou_distribution_transform(w1 - h, 1.0, 0.0, p)) /
                         (2.0 * h);
        CHECK(std::abs(d - ou_density_transform(w1, 1.0, 0.0, p)) < 1e-5);
    }
}

TEST_CASE("probability normalization")
{
    PairParams p;
    p.alpha = 0.5;
    p.beta = 1.0;
    p.sigma = std::numbers::sqrt2;
    for (const double s : {0.5, 2.0}) {
        CHECK(std::abs(ou_distribution_transform(12.0, s, 0.0, p) - 1.0 / s) < 1e-10);
        CHECK(std::abs(bm_distribution_transform(60.0, s, 0.0, 1.0, 1.0) - 1.0 / s) < 1e-10);
    }
}

TEST_CASE("Brownian motion with drift")
{
    const double alpha = 1.0;
    const double sigma = 1.0;
    const double s = 2.0;
    const double root = std::sqrt(alpha * alpha + 2.0 * s * sigma * sigma);
    CHECK(rel(bm_density_transform(0.3, s, 0.3, alpha, sigma), 1.0 / root) < 1e-15);
    for (const double w : {0.5, -0.5}) {
        const double fwd = forward_laplace([&](double t) { return bm_time_density(w, t, 0.0, alpha, sigma); }, s).value;
        CHECK(rel(bm_density_transform(w, s, 0.0, alpha, sigma), fwd) < 1e-8);
    }
    for (const double w1 : {0.0, 0.7}) {
        const double fwd =
            forward_laplace([&](double t) { return bm_time_distribution(w1, t, 0.0, alpha, sigma); }, s).value;
        CHECK(rel(bm_distribution_transform(w1, s, 0.0, alpha, sigma), fwd) < 1e-8);
    }
    CHECK_THROWS_AS(bm_distribution_transform(-1.0, s, 0.0, alpha, sigma), DomainError);
    CHECK_THROWS_AS(bm_density_transform(0.0, -1.0, 0.0, alpha, sigma), DomainError);
}
