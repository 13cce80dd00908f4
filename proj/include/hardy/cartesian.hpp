#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/group.hpp"
#include "hardy/parallel.hpp"
#include "hardy/profile.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

struct Box {
    std::vector<double> lo, hi;

    std::size_t dimension() const { return lo.size(); }
    double volume() const
    {
        double v = 1.0;
        for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
        return v;
    }
    bool contains_origin() const
    {
        for (std::size_t k = 0; k < lo.size(); ++k)
            if (lo[k] > 0.0 || hi[k] < 0.0) return false;
        return true;
    }
};

struct BoxMethod {
    enum class Kind { tensor_gauss, monte_carlo };
    Kind kind = Kind::tensor_gauss;
    int order = 12;              // Gauss-Legendre points per panel
    int panels = 16;             // panels per axis on the coarse pass
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    unsigned jobs = 1;

    static BoxMethod tensor_gauss(int order = 12, int panels = 16) { return {Kind::tensor_gauss, order, panels}; }
    static BoxMethod monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned jobs = 1)
    {
        BoxMethod m;
        m.kind = Kind::monte_carlo;
        m.samples = samples;
        m.seed = seed;
        m.jobs = jobs;
        return m;
    }
};

/// error is |fine - coarse| for tensor-gauss and one standard deviation for Monte Carlo.
struct BoxResult {
    double value = 0.0;
    double error = 0.0;
    std::uint64_t evaluations = 0;
    bool statistical = false;
};

namespace detail {

    inline constexpr std::size_t kMonteCarloChunks = 64;

    inline void check_box(const Box& box)
    {
        if (box.lo.size() != box.hi.size() || box.lo.empty()) throw ShapeError("box bounds must have equal nonzero length");
        for (std::size_t k = 0; k < box.lo.size(); ++k)
            if (!(box.hi[k] > box.lo[k])) throw std::invalid_argument("box needs lo < hi on every axis");
    }

    template <class F>
    std::vector<double> tensor_pass(F& f, std::size_t m, const Box& box, const GaussLegendreRule& rule, int panels,
                                    std::uint64_t& evals)
    {
        const std::size_t d = box.dimension();
        const std::size_t per_axis = rule.nodes.size() * static_cast<std::size_t>(panels);
        std::vector<std::vector<double>> nodes(d), weights(d);
        for (std::size_t k = 0; k < d; ++k) {
            const double h = (box.hi[k] - box.lo[k]) / panels;
            for (int j = 0; j < panels; ++j) {
                const double mid = box.lo[k] + (j + 0.5) * h;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    nodes[k].push_back(mid + 0.5 * h * rule.nodes[i]);
                    weights[k].push_back(0.5 * h * rule.weights[i]);
                }
            }
        }
        // Compensated (Neumaier) sums: a pass adds up to ~10^7 terms.
        std::vector<double> total(m, 0.0), carry(m, 0.0), out(m), x(d);
        std::vector<std::size_t> idx(d, 0);
        while (true) {
            double w = 1.0;
            for (std::size_t k = 0; k < d; ++k) {
                x[k] = nodes[k][idx[k]];
                w *= weights[k][idx[k]];
            }
            f(std::span<const double>(x), std::span<double>(out));
            ++evals;
            for (std::size_t j = 0; j < m; ++j) {
                const double term = w * out[j];
                const double t = total[j] + term;
                carry[j] += std::abs(total[j]) >= std::abs(term) ? (total[j] - t) + term : (term - t) + total[j];
                total[j] = t;
            }
            std::size_t k = 0;
            while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
            if (k == d) break;
        }
        for (std::size_t j = 0; j < m; ++j) total[j] += carry[j];
        return total;
    }

} // namespace detail

/**
 * Integrates m integrands at once over an axis-aligned box. f(x, out) fills
 * out[0..m). Monte Carlo uses a fixed number of chunks, each with its own
 * seeded stream, summed in chunk order: the result does not depend on jobs.
 */
template <class F>
std::vector<BoxResult> integrate_box_multi(F&& f, std::size_t m, const Box& box, const BoxMethod& method,
                                           bool singular_at_origin = false)
{
    detail::check_box(box);
    if (singular_at_origin && box.contains_origin())
        throw std::domain_error("box contains the origin but the integrand is singular there");
    const std::size_t d = box.dimension();
    std::vector<BoxResult> res(m);

    if (method.kind == BoxMethod::Kind::tensor_gauss) {
        if (d > 4) throw std::invalid_argument("tensor-gauss is limited to n <= 4");
        if (method.order < 1 || method.panels < 1) throw std::invalid_argument("tensor-gauss needs order, panels >= 1");
        const auto rule = gauss_legendre(method.order);
        std::uint64_t evals = 0;
        const auto coarse = detail::tensor_pass(f, m, box, rule, method.panels, evals);
        const auto fine = detail::tensor_pass(f, m, box, rule, 2 * method.panels, evals);
        for (std::size_t j = 0; j < m; ++j) res[j] = {fine[j], std::abs(fine[j] - coarse[j]), evals, false};
        return res;
    }

    if (method.samples < 2) throw std::invalid_argument("monte-carlo needs at least two samples");
    const std::size_t chunks = detail::kMonteCarloChunks;
    std::vector<std::vector<double>> sums(chunks, std::vector<double>(m, 0.0)), squares = sums;
    parallel_for(chunks, method.jobs, [&](std::size_t c) {
        std::uint64_t count = method.samples / chunks + (c < method.samples % chunks ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(method.seed), static_cast<std::uint32_t>(method.seed >> 32),
                          static_cast<std::uint32_t>(c)};
        std::mt19937_64 gen(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x(d), out(m);
        for (std::uint64_t s = 0; s < count; ++s) {
            for (std::size_t k = 0; k < d; ++k) x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * unit(gen);
            f(std::span<const double>(x), std::span<double>(out));
            for (std::size_t j = 0; j < m; ++j) {
                sums[c][j] += out[j];
                squares[c][j] += out[j] * out[j];
            }
        }
    });
    const double N = static_cast<double>(method.samples);
    const double V = box.volume();
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t c = 0; c < chunks; ++c) {
            s += sums[c][j];
            s2 += squares[c][j];
        }
        const double mean = s / N;
        const double var = std::max(s2 / N - mean * mean, 0.0) * N / (N - 1.0);
        res[j] = {V * mean, V * std::sqrt(var / N), method.samples, true};
    }
    return res;
}

template <class F>
BoxResult integrate_box(F&& f, const Box& box, const BoxMethod& method, bool singular_at_origin = false)
{
    auto wrapped = [&](std::span<const double> x, std::span<double> out) { out[0] = f(x); };
    return integrate_box_multi(wrapped, 1, box, method, singular_at_origin)[0];
}

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
inline double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// Hyperspherical angles (phi_1..phi_{n-1}): unit vector and surface Jacobian.
inline double spherical_point(std::span<const double> angles, std::span<double> omega)
{
    const std::size_t n = omega.size();
    double sprod = 1.0, jac = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        omega[k] = sprod * std::cos(angles[k]);
        if (k + 2 < n) jac *= std::pow(std::sin(angles[k]), static_cast<double>(n - 2 - k));
        sprod *= std::sin(angles[k]);
    }
    omega[n - 1] = sprod;
    return jac;
}

inline Box angle_box(int n)
{
    Box b;
    for (int k = 0; k + 1 < n; ++k) {
        b.lo.push_back(0.0);
        b.hi.push_back(k + 2 < n ? std::numbers::pi : 2.0 * std::numbers::pi);
    }
    return b;
}

/**
 * Test function on R^n with analytic gradient, supported in the annulus
 * r_min <= |x| <= r_max (0 < r_min), where it vanishes on the boundary.
 */
struct CartesianTestFunction {
    std::string name;
    int n = 2;
    double r_min = 0.0, r_max = 0.0;
    std::function<cplx(std::span<const double>)> f;
    std::function<void(std::span<const double>, std::span<cplx>)> grad;
    std::optional<RadialProfile> radial; // set for radial functions
};

/// f(x) = g(|x|).
inline CartesianTestFunction radial_test_function(const RadialProfile& g, int n)
{
    if (n < 2 || n > 4) throw std::invalid_argument("Cartesian checks support n in {2, 3, 4}");
    if (g.is_zero()) throw std::invalid_argument("use zero_test_function for f = 0");
    CartesianTestFunction tf;
    tf.name = g.name();
    tf.n = n;
    tf.r_min = g.support_lo();
    tf.r_max = g.support_hi();
    tf.radial = g;
    tf.f = [g](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return g.value(std::sqrt(r2));
    };
    tf.grad = [g](std::span<const double> x, std::span<cplx> out) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        const double r = std::sqrt(r2);
        const cplx d = g.derivative(r);
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = d * x[k] / r;
    };
    return tf;
}

/// f(x) = bump_{a,b}(|x|) x_1 / |x|, a non-radial function.
inline CartesianTestFunction bump_angular(double a, double b, int n)
{
    if (n < 2 || n > 4) throw std::invalid_argument("Cartesian checks support n in {2, 3, 4}");
    const RadialProfile h = bump(a, b);
    CartesianTestFunction tf;
    tf.name = "bump-angular:" + detail::short_num(a) + "," + detail::short_num(b);
    tf.n = n;
    tf.r_min = a;
    tf.r_max = b;
    tf.f = [h](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        const double r = std::sqrt(r2);
        return h.value(r) * x[0] / r;
    };
    // grad = h'(r) (x/r)(x_1/r) + h(r) (e_1/r - x_1 x / r^3)
    tf.grad = [h](std::span<const double> x, std::span<cplx> out) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        const double r = std::sqrt(r2);
        const cplx hv = h.value(r), dh = h.derivative(r);
        for (std::size_t k = 0; k < x.size(); ++k) {
            out[k] = dh * (x[k] / r) * (x[0] / r) - hv * x[0] * x[k] / (r2 * r);
            if (k == 0) out[k] += hv / r;
        }
    };
    return tf;
}

inline CartesianTestFunction zero_test_function(int n)
{
    CartesianTestFunction tf;
    tf.name = "zero";
    tf.n = n;
    tf.r_min = 0.5;
    tf.r_max = 1.0;
    tf.f = [](std::span<const double>) { return cplx{}; };
    tf.grad = [](std::span<const double>, std::span<cplx> out) {
        for (auto& v : out) v = 0.0;
    };
    return tf;
}

/// "bump-angular:a,b" or any radial profile spec, e.g. "bump:0.1,0.5".
inline CartesianTestFunction parse_test_function(std::string_view text, int n)
{
    if (text == "zero") return zero_test_function(n);
    constexpr std::string_view ang = "bump-angular";
    if (text.starts_with(ang)) {
        double a = 0.2, b = 0.8;
        if (text.size() > ang.size()) {
            if (text[ang.size()] != ':') throw std::invalid_argument("bad test function '" + std::string(text) + "'");
            const auto p = parse_profile("bump" + std::string(text.substr(ang.size())));
            a = p.support_lo();
            b = p.support_hi();
        }
        return bump_angular(a, b, n);
    }
    return radial_test_function(parse_profile(text), n);
}

/// Max componentwise |grad - central difference| over the given points.
inline double gradient_fd_check(const CartesianTestFunction& tf, const std::vector<std::vector<double>>& points, double h)
{
    double worst = 0.0;
    std::vector<cplx> g(tf.n);
    for (const auto& x : points) {
        check_shape(make_group(std::vector<double>(tf.n, 1.0)), x);
        tf.grad(x, g);
        for (int k = 0; k < tf.n; ++k) {
            auto xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const cplx fd = (tf.f(xp) - tf.f(xm)) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - g[k]));
        }
    }
    return worst;
}

/**
 * Full-gradient check on R^n with the Euclidean norm. lhs is the left-hand
 * norm, rhs_radial uses x/|x| . grad f and rhs_full uses |grad f| (both with
 * the sharp constant). The *_sphere values divide the p-th powers by |S^{n-1}|
 * so they are directly comparable with the radial pipeline.
 */
struct FullGradientResult {
    std::string theorem; // "LH2_FULLGRAD" or "CKN"
    std::string function;
    int n = 2;
    double p = 2.0;
    double R = 1.0;
    double constant = 0.0;
    double lhs = 0.0, rhs_radial = 0.0, rhs_full = 0.0;
    double err_lhs = 0.0, err_rhs_radial = 0.0, err_rhs_full = 0.0;
    double lhs_sphere = 0.0, rhs_radial_sphere = 0.0, rhs_full_sphere = 0.0;
    bool statistical = false;
    bool pass_radial = true; // lhs <= rhs_radial
    bool pass_chain = true;  // rhs_radial <= rhs_full
    bool pass() const { return pass_radial && pass_chain; }
};

namespace detail {

    struct NormPart {
        double value = 0.0, error = 0.0;
    };

    /// p-th root of a sum of integrals, with error propagated and an optional sphere normalisation.
    inline NormPart norm_of(double integral, double error, double p, double divide = 1.0)
    {
        const double I = std::max(integral, 0.0) / divide;
        const double e = error / divide;
        const double v = std::pow(I, 1.0 / p);
        return {v, I > 0.0 ? v / (p * I) * e : std::pow(e, 1.0 / p)};
    }

    /// a <= b allowing the margin and, for Monte Carlo, 3 sigma.
    inline bool holds(double a, double ea, double b, double eb, double margin, bool statistical)
    {
        const double slack = statistical ? 3.0 * std::hypot(ea, eb) : 0.0;
        return a <= b * (1.0 + margin) + slack;
    }

    /// Splits [lo, hi] at an interior point.
    inline std::vector<std::pair<double, double>> radial_pieces(double lo, double hi, double at)
    {
        if (at > lo && at < hi) return {{lo, at}, {at, hi}};
        return {{lo, hi}};
    }

    /// Sums m polar integrands over the annulus pieces; each integrand gets
    /// (r, omega, x, jacobian) and writes m values without the Jacobian.
    template <class F>
    std::vector<BoxResult> polar_integrate(int n, const std::vector<std::pair<double, double>>& pieces, std::size_t m,
                                           F&& f, const BoxMethod& method)
    {
        std::vector<BoxResult> total(m);
        const Box ang = angle_box(n);
        for (auto [lo, hi] : pieces) {
            Box box;
            box.lo.push_back(lo);
            box.hi.push_back(hi);
            box.lo.insert(box.lo.end(), ang.lo.begin(), ang.lo.end());
            box.hi.insert(box.hi.end(), ang.hi.begin(), ang.hi.end());
            auto integrand = [&](std::span<const double> y, std::span<double> out) {
                const double r = y[0];
                std::array<double, 4> omega{}, x{};
                const double jac =
                    spherical_point(y.subspan(1), std::span<double>(omega.data(), static_cast<std::size_t>(n)));
                for (int k = 0; k < n; ++k) x[k] = r * omega[k];
                f(r, std::span<const double>(omega.data(), n), std::span<const double>(x.data(), n), out);
                const double w = std::pow(r, n - 1.0) * jac;
                for (auto& v : out) v *= w;
            };
            auto part = integrate_box_multi(integrand, m, box, method);
            for (std::size_t j = 0; j < m; ++j) {
                total[j].value += part[j].value;
                total[j].statistical = part[j].statistical;
                total[j].evaluations += part[j].evaluations;
                total[j].error = part[j].statistical ? std::hypot(total[j].error, part[j].error)
                                                     : total[j].error + part[j].error;
            }
        }
        return total;
    }

    inline void check_fullgrad_args(const CartesianTestFunction& tf, int n)
    {
        if (tf.n != n) throw ShapeError("test function lives in dimension " + std::to_string(tf.n));
        if (n < 2 || n > 4) throw std::invalid_argument("Cartesian checks support n in {2, 3, 4}");
        if (!(tf.r_min > 0.0)) throw std::domain_error("support must exclude a ball around the origin");
    }

} // namespace detail

inline FullGradientResult verify_lh2_fullgrad(const CartesianTestFunction& tf, double p, int n, double R,
                                              const BoxMethod& method, double tol_margin = 1e-6)
{
    detail::check_fullgrad_args(tf, n);
    if (!(p > 1.0)) throw std::invalid_argument("LH2 needs p > 1");
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    const double K = p / (p - 1.0);

    auto body = [&](double r, std::span<const double> omega, std::span<const double> x, std::span<double> out) {
        std::array<double, 4> xR{};
        for (int k = 0; k < n; ++k) xR[k] = R * omega[k];
        const cplx fR = tf.f(std::span<const double>(xR.data(), n));
        const double L = std::log(R / r);
        const double num = std::abs(tf.f(x) - fR);
        out[0] = L == 0.0 ? 0.0 : std::pow(num / std::abs(L), p) / std::pow(r, n);
        std::array<cplx, 4> g{};
        tf.grad(x, std::span<cplx>(g.data(), n));
        cplx dr = 0.0;
        double g2 = 0.0;
        for (int k = 0; k < n; ++k) {
            dr += omega[k] * g[k];
            g2 += std::norm(g[k]);
        }
        const double w = std::pow(r, p - n);
        out[1] = w * std::pow(std::abs(dr), p);
        out[2] = w * std::pow(g2, 0.5 * p);
    };
    auto parts = detail::polar_integrate(n, detail::radial_pieces(tf.r_min, tf.r_max, R), 3, body, method);

    // Where f = 0 (|x| outside the annulus) the integrand is |f_R|^p / (|x|^n log^p); integrate in r exactly.
    if (R > tf.r_min && R < tf.r_max) {
        const Box ang = angle_box(n);
        auto trace = integrate_box(
            [&](std::span<const double> a) {
                std::array<double, 4> omega{}, xR{};
                const double jac = spherical_point(a, std::span<double>(omega.data(), n));
                for (int k = 0; k < n; ++k) xR[k] = R * omega[k];
                return std::pow(std::abs(tf.f(std::span<const double>(xR.data(), n))), p) * jac;
            },
            ang, method);
        const double radial = (std::pow(std::log(R / tf.r_min), 1.0 - p) + std::pow(std::log(tf.r_max / R), 1.0 - p)) /
                              (p - 1.0);
        parts[0].value += radial * trace.value;
        parts[0].error = trace.statistical ? std::hypot(parts[0].error, radial * trace.error)
                                           : parts[0].error + radial * trace.error;
    }

    FullGradientResult res;
    res.theorem = "LH2_FULLGRAD";
    res.function = tf.name;
    res.n = n;
    res.p = p;
    res.R = R;
    res.constant = K;
    res.statistical = parts[0].statistical;
    const double S = sphere_area(n);
    auto l = detail::norm_of(parts[0].value, parts[0].error, p);
    auto rr = detail::norm_of(parts[1].value, parts[1].error, p);
    auto rf = detail::norm_of(parts[2].value, parts[2].error, p);
    res.lhs = l.value;
    res.err_lhs = l.error;
    res.rhs_radial = K * rr.value;
    res.err_rhs_radial = K * rr.error;
    res.rhs_full = K * rf.value;
    res.err_rhs_full = K * rf.error;
    res.lhs_sphere = detail::norm_of(parts[0].value, parts[0].error, p, S).value;
    res.rhs_radial_sphere = K * detail::norm_of(parts[1].value, parts[1].error, p, S).value;
    res.rhs_full_sphere = K * detail::norm_of(parts[2].value, parts[2].error, p, S).value;
    res.pass_radial = detail::holds(res.lhs, res.err_lhs, res.rhs_radial, res.err_rhs_radial, tol_margin, res.statistical);
    res.pass_chain =
        detail::holds(res.rhs_radial, res.err_rhs_radial, res.rhs_full, res.err_rhs_full, tol_margin, res.statistical);
    return res;
}

/// ||f/|x|||_n <= n ||log|x| (x/|x| . grad f)||_n <= n ||log|x| grad f||_n.
inline FullGradientResult verify_ckn_fullgrad(const CartesianTestFunction& tf, int n, const BoxMethod& method,
                                              double tol_margin = 1e-6)
{
    detail::check_fullgrad_args(tf, n);
    const double p = n;
    auto body = [&](double r, std::span<const double> omega, std::span<const double> x, std::span<double> out) {
        out[0] = std::pow(std::abs(tf.f(x)) / r, p);
        std::array<cplx, 4> g{};
        tf.grad(x, std::span<cplx>(g.data(), n));
        cplx dr = 0.0;
        double g2 = 0.0;
        for (int k = 0; k < n; ++k) {
            dr += omega[k] * g[k];
            g2 += std::norm(g[k]);
        }
        const double L = std::pow(std::abs(std::log(r)), p);
        out[1] = L * std::pow(std::abs(dr), p);
        out[2] = L * std::pow(g2, 0.5 * p);
    };
    auto parts = detail::polar_integrate(n, detail::radial_pieces(tf.r_min, tf.r_max, 1.0), 3, body, method);

    FullGradientResult res;
    res.theorem = "CKN";
    res.function = tf.name;
    res.n = n;
    res.p = p;
    res.R = std::numeric_limits<double>::infinity();
    res.constant = p;
    res.statistical = parts[0].statistical;
    const double S = sphere_area(n);
    auto l = detail::norm_of(parts[0].value, parts[0].error, p);
    auto rr = detail::norm_of(parts[1].value, parts[1].error, p);
    auto rf = detail::norm_of(parts[2].value, parts[2].error, p);
    res.lhs = l.value;
    res.err_lhs = l.error;
    res.rhs_radial = p * rr.value;
    res.err_rhs_radial = p * rr.error;
    res.rhs_full = p * rf.value;
    res.err_rhs_full = p * rf.error;
    res.lhs_sphere = detail::norm_of(parts[0].value, parts[0].error, p, S).value;
    res.rhs_radial_sphere = p * detail::norm_of(parts[1].value, parts[1].error, p, S).value;
    res.rhs_full_sphere = p * detail::norm_of(parts[2].value, parts[2].error, p, S).value;
    res.pass_radial = detail::holds(res.lhs, res.err_lhs, res.rhs_radial, res.err_rhs_radial, tol_margin, res.statistical);
    res.pass_chain =
        detail::holds(res.rhs_radial, res.err_rhs_radial, res.rhs_full, res.err_rhs_full, tol_margin, res.statistical);
    return res;
}

struct CauchySchwarzReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    double worst_excess = -std::numeric_limits<double>::infinity(); // max of |x/|x| . grad f| - |grad f|
};

/// Pointwise |x/|x| . grad f| <= |grad f| at uniform samples of the annulus box.
inline CauchySchwarzReport cauchy_schwarz_check(const CartesianTestFunction& tf, std::uint64_t samples,
                                                std::uint64_t seed)
{
    const int n = tf.n;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Box ang = angle_box(n);
    CauchySchwarzReport rep;
    rep.samples = samples;
    std::array<double, 4> a{}, omega{}, x{};
    std::array<cplx, 4> g{};
    for (std::uint64_t s = 0; s < samples; ++s) {
        const double r = tf.r_min + (tf.r_max - tf.r_min) * unit(gen);
        for (int k = 0; k + 1 < n; ++k) a[k] = ang.lo[k] + (ang.hi[k] - ang.lo[k]) * unit(gen);
        spherical_point(std::span<const double>(a.data(), n - 1), std::span<double>(omega.data(), n));
        for (int k = 0; k < n; ++k) x[k] = r * omega[k];
        tf.grad(std::span<const double>(x.data(), n), std::span<cplx>(g.data(), n));
        // Scale before squaring: near the support ends |grad f| underflows when squared.
        double top = 0.0;
        for (int k = 0; k < n; ++k) top = std::max(top, std::abs(g[k]));
        if (top == 0.0) {
            rep.worst_excess = std::max(rep.worst_excess, 0.0);
            continue;
        }
        cplx dr = 0.0;
        double g2 = 0.0;
        for (int k = 0; k < n; ++k) {
            dr += omega[k] * (g[k] / top);
            g2 += std::norm(g[k] / top);
        }
        const double full = std::sqrt(g2) * top;
        dr *= top;
        const double excess = std::abs(dr) - full;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        if (excess > 1e-12 * std::max(full, 1e-300)) ++rep.violations;
    }
    return rep;
}

struct DilationScaling {
    double ratio = 0.0;    // integral of F(D_lambda x) over integral of F(x)
    double expected = 0.0; // lambda^{-Q}
    double rel_deviation = 0.0;
};

/// Haar-measure scaling: the integral of F o D_lambda is lambda^{-Q} times the integral of F.
template <class F>
DilationScaling dilation_scaling_check(const GroupSpec& group, double lambda, F&& F_, const Box& box,
                                       const BoxMethod& method)
{
    if (box.dimension() != group.dimension()) throw ShapeError("box dimension differs from group dimension");
    auto plain = integrate_box([&](std::span<const double> x) { return F_(x); }, box, method);
    auto scaled = integrate_box(
        [&](std::span<const double> x) {
            const auto y = dilate(group, lambda, x);
            return F_(std::span<const double>(y));
        },
        box, method);
    DilationScaling d;
    d.ratio = scaled.value / plain.value;
    d.expected = std::pow(lambda, -group.homogeneous_dimension());
    d.rel_deviation = std::abs(d.ratio - d.expected) / d.expected;
    return d;
}

} // namespace hardy
