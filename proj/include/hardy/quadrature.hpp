#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hardy {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::size_t max_subdivisions = 1'000'000;
    bool log_near_zero = false; // u = log r towards the lower endpoint
    bool log_near_end = false;  // u = log(R/r) towards the upper endpoint

    static QuadratureSpec oracle() { return {}; }
    static QuadratureSpec suite() { return {1e-8, 1e-14}; }
};

template <class V>
struct IntegralResult {
    V value{};
    double error_estimate = 0.0;
    std::size_t subdivisions_used = 0;
};

/// Tolerance not met within max_subdivisions; carries the partial answer.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, std::complex<double> partial, double error,
                       std::size_t subdivisions)
        : std::runtime_error(what), partial_(partial), error_(error), subdivisions_(subdivisions)
    {
    }
    std::complex<double> partial_value() const { return partial_; }
    double error_estimate() const { return error_; }
    std::size_t subdivisions_used() const { return subdivisions_; }

private:
    std::complex<double> partial_;
    double error_;
    std::size_t subdivisions_;
};

struct NonFiniteIntegrand : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

    // Kronrod 21-point abscissae (descending) with the embedded 10-point Gauss rule
    // sitting at the odd indices.
    inline constexpr std::array<double, 11> kronrod_x{
        0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
        0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
        0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
        0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
        0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
        0.000000000000000000000000000000000};
    inline constexpr std::array<double, 11> kronrod_w{
        0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
        0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
        0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
        0.123491976262065851077600525867356, 0.134709217311473325928054001771707,
        0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
        0.149445554002916905664936468389821};
    inline constexpr std::array<double, 5> gauss_w{
        0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
        0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
        0.295524224714752870173892994651146};

    inline double magnitude(double v) { return std::abs(v); }
    inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

    template <class V>
    bool finite(const V& v)
    {
        if constexpr (std::is_same_v<V, double>)
            return std::isfinite(v);
        else
            return std::isfinite(v.real()) && std::isfinite(v.imag());
    }

    template <class V>
    struct Panel {
        double a, b;
        V value;
        double error;
        bool splittable;
        friend bool operator<(const Panel& x, const Panel& y) { return x.error < y.error; }
    };

    template <class V, class F>
    Panel<V> gauss_kronrod(F& f, double a, double b)
    {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        V fc = f(c);
        if (!finite(fc))
            throw NonFiniteIntegrand("integrand is not finite at " + std::to_string(c));
        V kron = fc * kronrod_w[10];
        V gauss{};
        for (int j = 0; j < 10; ++j) {
            const double dx = h * kronrod_x[j];
            V f1 = f(c - dx);
            V f2 = f(c + dx);
            if (!finite(f1) || !finite(f2))
                throw NonFiniteIntegrand("integrand is not finite near " + std::to_string(c - dx) +
                                         " / " + std::to_string(c + dx));
            kron += (f1 + f2) * kronrod_w[j];
            if (j % 2 == 1) gauss += (f1 + f2) * gauss_w[j / 2];
        }
        kron *= h;
        gauss *= h;
        const double mid = 0.5 * (a + b);
        const bool splittable = mid > a && mid < b && (b - a) > 64.0 * std::numeric_limits<double>::min();
        return {a, b, kron, magnitude(kron - gauss), splittable};
    }

} // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (10/21) over consecutive panels
 * [breaks[0], breaks[1]], ..., all finite. The panel with the largest
 * error estimate is bisected until the summed estimate drops below
 * max(rel_tol * |value|, abs_tol). The raw |K21 - G10| difference is used
 * as the error estimate.
 */
template <class V = double, class F>
IntegralResult<V> integrate_panels(F&& f, std::span<const double> breaks, const QuadratureSpec& spec)
{
    if (breaks.size() < 2) return {};
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (!(breaks[i] <= breaks[i + 1]) || !std::isfinite(breaks[i]) || !std::isfinite(breaks[i + 1]))
            throw std::invalid_argument("quadrature breakpoints must be finite and nondecreasing");

    using detail::Panel;
    std::vector<Panel<V>> active; // max-heap on error
    std::vector<Panel<V>> frozen;
    auto keep = [&](const Panel<V>& p) {
        if (p.splittable) {
            active.push_back(p);
            std::push_heap(active.begin(), active.end());
        } else {
            frozen.push_back(p);
        }
    };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i] == breaks[i + 1]) continue;
        keep(detail::gauss_kronrod<V>(f, breaks[i], breaks[i + 1]));
    }

    auto totals = [&] {
        V value{};
        double error = 0.0;
        for (const auto& p : active) {
            value += p.value;
            error += p.error;
        }
        for (const auto& p : frozen) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    V value{};
    double error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }
    std::size_t subdivisions = 0;
    auto tolerance = [&] { return std::max(spec.rel_tol * detail::magnitude(value), spec.abs_tol); };

    while (error > tolerance()) {
        if (active.empty() || subdivisions >= spec.max_subdivisions) {
            auto [v, e] = totals();
            throw ConvergenceFailure("adaptive quadrature did not reach tolerance (error estimate " +
                                         std::to_string(e) + ")",
                                     std::complex<double>(v), e, subdivisions);
        }
        std::pop_heap(active.begin(), active.end());
        Panel<V> worst = active.back();
        active.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gauss_kronrod<V>(f, worst.a, mid);
        auto right = detail::gauss_kronrod<V>(f, mid, worst.b);
        ++subdivisions;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        keep(left);
        keep(right);
        // Refresh the running sums now and then to keep cancellation drift out.
        if (subdivisions % 512 == 0) {
            auto [v, e] = totals();
            value = v;
            error = e;
        }
    }
    auto [v, e] = totals();
    return {v, e, subdivisions};
}

template <class V = double, class F>
IntegralResult<V> integrate_interval(F&& f, double lo, double hi, const QuadratureSpec& spec)
{
    const std::array<double, 2> breaks{lo, hi};
    return integrate_panels<V>(std::forward<F>(f), breaks, spec);
}

/**
 * Integral of phi(r) dr over [lo, hi] with 0 <= lo < hi <= inf.
 *
 * With log_near_zero the part next to lo is integrated in u = log r; when
 * lo = 0 the half-line in u is folded onto (0,1] by u = log m - (1-x)/x.
 * With log_near_end the part next to hi uses u = log(hi/r). An infinite hi
 * is truncated to `support_end`, which must then be given.
 */
template <class V = double, class F>
IntegralResult<V> integrate_radial(F&& phi, double lo, double hi, const QuadratureSpec& spec,
                                   std::optional<double> support_end = std::nullopt)
{
    if (!(lo >= 0.0) || !(hi > lo))
        throw std::invalid_argument("integrate_radial needs 0 <= lo < hi");
    if (std::isinf(hi)) {
        if (!support_end)
            throw std::invalid_argument("infinite upper limit requires compact support metadata");
        hi = std::min(hi, *support_end);
        if (!(hi > lo)) return {};
    }

    double split_lo = lo, split_hi = hi;
    if (spec.log_near_zero && spec.log_near_end)
        split_lo = split_hi = (lo == 0.0) ? 0.5 * hi : std::sqrt(lo * hi);
    else if (spec.log_near_zero)
        split_lo = hi;
    else if (spec.log_near_end)
        split_hi = lo;

    IntegralResult<V> total;
    auto accumulate = [&](const IntegralResult<V>& part) {
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.subdivisions_used += part.subdivisions_used;
    };

    if (spec.log_near_zero && split_lo > lo) {
        const double m = split_lo;
        if (lo == 0.0) {
            auto g = [&](double x) -> V {
                const double r = m * std::exp(-(1.0 - x) / x);
                if (r == 0.0) return V{};
                return phi(r) * (r / (x * x));
            };
            accumulate(integrate_interval<V>(g, 0.0, 1.0, spec));
        } else {
            auto g = [&](double u) -> V {
                const double r = std::exp(u);
                return phi(r) * r;
            };
            accumulate(integrate_interval<V>(g, std::log(lo), std::log(m), spec));
        }
    }
    if (split_hi > split_lo) accumulate(integrate_interval<V>(phi, split_lo, split_hi, spec));
    if (spec.log_near_end && hi > split_hi) {
        const double m = split_hi;
        if (m == 0.0) {
            auto g = [&](double x) -> V {
                const double u = (1.0 - x) / x;
                const double r = hi * std::exp(-u);
                if (r == 0.0) return V{};
                return phi(r) * (r / (x * x));
            };
            accumulate(integrate_interval<V>(g, 0.0, 1.0, spec));
        } else {
            auto g = [&](double u) -> V {
                const double r = hi * std::exp(-u);
                return phi(r) * r;
            };
            accumulate(integrate_interval<V>(g, 0.0, std::log(hi / m), spec));
        }
    }
    return total;
}

/// (integral of |phi|^p)^(1/p); the error is propagated to first order.
template <class F>
IntegralResult<double> lp_norm(F&& phi, double p, double lo, double hi, const QuadratureSpec& spec,
                               std::optional<double> support_end = std::nullopt)
{
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
    auto powered = [&](double r) { return std::pow(std::abs(phi(r)), p); };
    auto integral = integrate_radial<double>(powered, lo, hi, spec, support_end);
    const double I = std::max(integral.value, 0.0);
    const double norm = std::pow(I, 1.0 / p);
    const double err = I > 0.0 ? norm / (p * I) * integral.error_estimate
                               : std::pow(integral.error_estimate, 1.0 / p);
    return {norm, err, integral.subdivisions_used};
}

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes and weights by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace hardy
