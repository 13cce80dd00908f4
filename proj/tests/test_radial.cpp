#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "hardy/profile.hpp"

using namespace hardy;

namespace {

RadialProfile power(double mu)
{
    return RadialProfile::from_functions(
        "power", [mu](double r) -> cplx { return std::pow(r, mu); },
        [mu](double r) -> cplx { return mu * std::pow(r, mu - 1.0); }, 1e-3, 1e3, BoundaryClass::free);
}

RadialProfile from(std::function<cplx(double)> g, std::function<cplx(double)> dg, double a, double b)
{
    return RadialProfile::from_functions("f", std::move(g), std::move(dg), a, b, BoundaryClass::free);
}

std::vector<double> grid(double a, double b, int n)
{
    std::vector<double> out;
    for (int i = 1; i < n; ++i) out.push_back(a + (b - a) * i / n);
    return out;
}

} // namespace

TEST(Radial, DerivativeExamples)
{
    EXPECT_NEAR(radial_derivative(power(3), 2.0).real(), 12.0, 1e-12);
    const auto lg = from([](double r) -> cplx { return std::log(r); }, [](double r) -> cplx { return 1.0 / r; },
                         0.5, 5.0);
    EXPECT_NEAR(radial_derivative(lg, std::numbers::e).real(), 1.0 / std::numbers::e, 1e-15);
    EXPECT_THROW(radial_derivative(lg, 0.0), std::domain_error);
    EXPECT_THROW(euler_apply(lg, -1.0), std::domain_error);
}

TEST(Radial, BumpDerivativeMatchesCentralDifference)
{
    EXPECT_LE(finite_diff_check(bump(0.2, 0.8), {0.5}, 1e-5), 1e-8);
    EXPECT_LE(finite_diff_check(complex_bump(0.2, 0.8), grid(0.25, 0.75, 20), 1e-5), 1e-8);
}

TEST(Radial, EulerEigenrelation)
{
    for (double mu : {-2.0, -1.0, 0.5, 1.0, 2.5, 3.0})
        for (double r : {0.01, 0.3, 1.0, 7.0, 400.0}) {
            const auto g = power(mu);
            EXPECT_NEAR(std::abs(euler_apply(g, r) - mu * g.value(r)), 0.0, 1e-10 * std::abs(g.value(r)));
        }
    const auto c = from([](double) -> cplx { return 4.0; }, [](double) -> cplx { return 0.0; }, 0.5, 2.0);
    EXPECT_EQ(euler_apply(c, 1.3), cplx(0.0));
}

TEST(Radial, MixtureIsNotHomogeneous)
{
    const auto g = from([](double r) -> cplx { return r * r + r * r * r; },
                        [](double r) -> cplx { return 2.0 * r + 3.0 * r * r; }, 0.1, 10.0);
    EXPECT_NEAR(euler_apply(g, 1.0).real(), 5.0, 1e-14);
    // A single eigenvalue would have to give 5/2 at r = 1 and (8 + 24) / (4 + 8) at r = 2.
    EXPECT_GT(std::abs(euler_apply(g, 2.0).real() / g.value(2.0).real() - 2.5), 0.1);
}

TEST(Radial, FiniteDifferenceBounds)
{
    EXPECT_LE(finite_diff_check(polybump(0.2, 0.8, 2), grid(0.21, 0.79, 40), 1e-5), 1e-9);
    const auto lg = from([](double r) -> cplx { return std::log(r); }, [](double r) -> cplx { return 1.0 / r; },
                         0.5, 2.0);
    // The h^2 |g'''| / 6 truncation term alone exceeds 1e-10 below r = 0.7.
    EXPECT_LE(finite_diff_check(lg, grid(0.75, 1.9, 40), 1e-5), 1e-10);
    const auto lin = from([](double r) -> cplx { return 3.0 * r - 1.0; }, [](double) -> cplx { return 3.0; },
                          0.5, 2.0);
    // Exact up to rounding, which grows like eps / h.
    EXPECT_LE(finite_diff_check(lin, grid(0.6, 1.9, 40), 1e-2), 1e-12);
    EXPECT_THROW(finite_diff_check(lg, {0.5}, 1e-5), std::domain_error);
    EXPECT_THROW(finite_diff_check(lg, {1.0}, 0.0), std::domain_error);
}

TEST(Radial, LogBoundLemmas)
{
    EXPECT_EQ(log_bound_lemmas(1.0, 0.5), std::make_pair(true, true));
    EXPECT_EQ(log_bound_lemmas(1.0, 0.999), std::make_pair(true, true));
    EXPECT_EQ(log_bound_lemmas(2.0, 1.0), std::make_pair(true, true));
    EXPECT_THROW(log_bound_lemmas(1.0, 1.0), std::domain_error);
    EXPECT_THROW(log_bound_lemmas(1.0, 2.0), std::domain_error);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logR(-5.0, 5.0), frac(1e-6, 1.0 - 1e-9);
    for (int i = 0; i < 10000; ++i) {
        const double R = std::exp(logR(rng));
        const auto [lower, upper] = log_bound_lemmas(R, R * frac(rng));
        ASSERT_TRUE(lower && upper);
    }
}

TEST(Radial, BoundaryVanishing)
{
    const auto g = polybump(0.2, 0.8, 3);
    for (double R : {0.5, 0.8, 1.0}) {
        const auto rep = boundary_vanishing_check(g, R, grid(0.2, R, 200));
        EXPECT_TRUE(rep.holds) << R;
        EXPECT_GT(rep.sup_derivative, 0.0);
    }
}

TEST(Radial, RegistryAndTransforms)
{
    const auto g = parse_profile("bump:0.2,0.8");
    EXPECT_EQ(g.name(), "bump:0.2,0.8");
    EXPECT_NEAR(g.support_lo(), 0.2, 1e-15);
    EXPECT_NEAR(g.support_hi(), 0.8, 1e-15);
    const auto d = g.dilated(2.0);
    EXPECT_NEAR(std::abs(d.value(0.25) - g.value(0.5)), 0.0, 1e-18);
    EXPECT_NEAR(std::abs(d.derivative(0.25) - 2.0 * g.derivative(0.5)), 0.0, 1e-14);
    const auto s = g.scaled(cplx(0.0, 3.0));
    EXPECT_NEAR(std::abs(s.value(0.5) - cplx(0.0, 3.0) * g.value(0.5)), 0.0, 1e-18);
    for (double t : {-1.2, -0.7, -0.3})
        EXPECT_NEAR(std::abs(g.euler_log(t) - std::exp(t) * g.derivative(std::exp(t))), 0.0, 1e-14);
    EXPECT_THROW(parse_profile("nosuch:1"), std::invalid_argument);
    EXPECT_THROW(parse_profile("bump:0.8,0.2"), std::invalid_argument);
    EXPECT_TRUE(parse_profile("zero").is_zero());
}
