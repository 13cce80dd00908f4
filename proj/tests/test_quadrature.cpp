#include <gtest/gtest.h>

#include <numbers>

#include "hardy/profile.hpp"
#include "hardy/quadrature.hpp"

using namespace hardy;

namespace {

// Independent 30-digit evaluation of (int_{0.2}^{0.8} bump^3 dr)^{1/3}.
constexpr double kBumpL3 = 6.70094791385131873602e-6;

QuadratureSpec log_zero()
{
    QuadratureSpec s;
    s.log_near_zero = true;
    return s;
}

} // namespace

TEST(Quadrature, Monomials)
{
    const auto spec = QuadratureSpec::oracle();
    for (double Q : {2.0, 3.5, 4.0}) {
        const auto res = integrate_radial([Q](double r) { return std::pow(r, Q - 1.0); }, 0.0, 1.0, spec);
        EXPECT_NEAR(res.value, 1.0 / Q, 1e-12) << Q;
    }
}

TEST(Quadrature, LogSingularityAtZero)
{
    auto f = [](double r) { return 1.0 / (r * std::pow(std::log(1.0 / r), 2)); };
    const auto res = integrate_radial(f, 0.0, 0.5, log_zero());
    EXPECT_NEAR(res.value, 1.0 / std::numbers::ln2, 1e-9);
}

TEST(Quadrature, Polynomial)
{
    const auto res = integrate_radial([](double r) { return (1 - 2 * r) * (1 - 2 * r) * r; }, 0.0, 1.0,
                                      QuadratureSpec::oracle());
    EXPECT_NEAR(res.value, 1.0 / 6.0, 1e-12);
}

TEST(Quadrature, LpNorms)
{
    const auto spec = QuadratureSpec::oracle();
    EXPECT_NEAR(lp_norm([](double r) { return std::sqrt(r); }, 2.0, 0.0, 1.0, spec).value, std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(lp_norm([](double r) { return 1.0 / r; }, 1.0, 1.0, 2.0, spec).value, std::numbers::ln2, 1e-12);
    // The integral is about 3e-16, so the absolute floor has to sit far below it.
    auto fine = spec;
    fine.abs_tol = 1e-40;
    const auto g = bump(0.2, 0.8);
    const auto res = lp_norm([&](double r) { return std::abs(g.value(r)); }, 3.0, 0.2, 0.8, fine);
    EXPECT_NEAR(res.value, kBumpL3, 1e-10 * kBumpL3);
    EXPECT_THROW(lp_norm([](double) { return 1.0; }, 0.5, 0.0, 1.0, spec), std::invalid_argument);
}

TEST(Quadrature, ErrorEstimateIsHonest)
{
    const auto spec = QuadratureSpec::oracle();
    struct Case {
        std::function<double(double)> f;
        double lo, hi, exact;
    };
    const Case cases[] = {
        {[](double r) { return std::exp(-r); }, 0.0, 5.0, 1.0 - std::exp(-5.0)},
        {[](double r) { return std::sqrt(r); }, 0.0, 1.0, 2.0 / 3.0},
        {[](double r) { return 1.0 / (1.0 + 100.0 * r * r); }, -1.0, 1.0, 0.2 * std::atan(10.0)},
        {[](double r) { return std::cos(40.0 * r); }, 0.0, 1.0, std::sin(40.0) / 40.0},
    };
    for (const auto& c : cases) {
        const auto res = integrate_interval(c.f, c.lo, c.hi, spec);
        EXPECT_LE(std::abs(res.value - c.exact), std::max(res.error_estimate, 1e-15));
        EXPECT_LE(std::abs(res.value - c.exact), 1e-10 * std::abs(c.exact));
    }
}

TEST(Quadrature, ComplexValues)
{
    const auto res = integrate_interval<cplx>([](double t) { return std::exp(cplx(0.0, t)); }, 0.0,
                                              std::numbers::pi, QuadratureSpec::oracle());
    EXPECT_NEAR(res.value.real(), 0.0, 1e-13);
    EXPECT_NEAR(res.value.imag(), 2.0, 1e-13);
}

TEST(Quadrature, FailureModes)
{
    QuadratureSpec tight;
    tight.max_subdivisions = 3;
    try {
        integrate_interval([](double r) { return std::sin(1.0 / r); }, 1e-4, 1.0, tight);
        FAIL() << "expected a convergence failure";
    } catch (const ConvergenceFailure& e) {
        EXPECT_EQ(e.subdivisions_used(), 3u);
        EXPECT_GT(e.error_estimate(), 0.0);
        EXPECT_TRUE(std::isfinite(e.partial_value().real()));
    }
    EXPECT_THROW(integrate_interval([](double r) { return 1.0 / (r - 0.5); }, 0.0, 1.0, QuadratureSpec::oracle()),
                 NonFiniteIntegrand);
    EXPECT_THROW(integrate_radial([](double) { return 1.0; }, 0.0, INFINITY, QuadratureSpec::oracle()),
                 std::invalid_argument);
    EXPECT_NEAR(integrate_radial([](double) { return 1.0; }, 0.0, INFINITY, QuadratureSpec::oracle(), 2.0).value,
                2.0, 1e-14);
}

TEST(Quadrature, EndpointTransformNearEnd)
{
    QuadratureSpec spec;
    spec.log_near_end = true;
    // int_{1/2}^1 log(log(1/r)) dr/r = L log L - L with L = log 2.
    auto f = [](double r) { return std::log(std::log(1.0 / r)) / r; };
    const auto res = integrate_radial(f, 0.5, 1.0, spec);
    const double L = std::numbers::ln2;
    EXPECT_NEAR(res.value, L * std::log(L) - L, 1e-9);
}

TEST(Quadrature, GaussLegendre)
{
    const auto rule = gauss_legendre(12);
    double sum = 0.0, x8 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i];
        x8 += rule.weights[i] * std::pow(rule.nodes[i], 8);
    }
    EXPECT_NEAR(sum, 2.0, 1e-14);
    EXPECT_NEAR(x8, 2.0 / 9.0, 1e-14);
    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}
