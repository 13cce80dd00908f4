#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

enum class BoundaryClass { vanishing, free };

namespace detail {

    inline std::string fmt_num(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    /// Shortest round-trip form, for names and keys.
    inline std::string short_num(double v)
    {
        char buf[40];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return ec == std::errc{} ? std::string(buf, end) : fmt_num(v);
    }

    // C-infinity step: 0 for x <= 0, 1 for x >= 1.
    inline double smooth_step(double x)
    {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        const double a = std::exp(-1.0 / x);
        const double b = std::exp(-1.0 / (1.0 - x));
        return a / (a + b);
    }

    inline double smooth_step_derivative(double x)
    {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        const double a = std::exp(-1.0 / x);
        const double b = std::exp(-1.0 / (1.0 - x));
        const double da = a / (x * x);
        const double db = b / ((1.0 - x) * (1.0 - x)); // d/dx of b(1-x) enters with a minus sign
        const double s = a + b;
        return (da * b + a * db) / (s * s);
    }

    /// Smooth window equal to 1 on [lo + ramp, hi - ramp] and 0 outside [lo, hi].
    struct Window {
        double lo, hi, ramp;

        double operator()(double x) const
        {
            return smooth_step((x - lo) / ramp) * smooth_step((hi - x) / ramp);
        }
        double derivative(double x) const
        {
            return smooth_step_derivative((x - lo) / ramp) / ramp * smooth_step((hi - x) / ramp) -
                   smooth_step((x - lo) / ramp) * smooth_step_derivative((hi - x) / ramp) / ramp;
        }
    };

    /// Immutable radial shape g, viewed both in r and in t = log r.
    class Shape {
    public:
        virtual ~Shape() = default;
        virtual cplx value_log(double t) const = 0;
        virtual cplx euler_log(double t) const = 0; // r g'(r) at r = e^t
        virtual cplx value(double r) const { return r > 0.0 ? value_log(std::log(r)) : cplx{}; }
        virtual cplx derivative(double r) const { return r > 0.0 ? euler_log(std::log(r)) / r : cplx{}; }
        virtual std::vector<double> knots() const = 0; // ascending, in t
    };

    class FunctionShape final : public Shape {
    public:
        using Fn = std::function<cplx(double)>;
        FunctionShape(Fn g, Fn dg, double a, double b, bool clip)
            : g_(std::move(g)), dg_(std::move(dg)), a_(a), b_(b), clip_(clip)
        {
        }
        cplx value(double r) const override { return inside(r) ? g_(r) : cplx{}; }
        cplx derivative(double r) const override { return inside(r) ? dg_(r) : cplx{}; }
        cplx value_log(double t) const override { return value(std::exp(t)); }
        cplx euler_log(double t) const override
        {
            const double r = std::exp(t);
            return r * derivative(r);
        }
        std::vector<double> knots() const override
        {
            const double lo = std::log(a_), hi = std::log(b_);
            const int panels = 8;
            std::vector<double> k(panels + 1);
            for (int i = 0; i <= panels; ++i) k[i] = lo + (hi - lo) * i / panels;
            k.back() = hi;
            return k;
        }

    private:
        bool inside(double r) const { return !clip_ || (r > a_ && r < b_); }
        Fn g_, dg_;
        double a_, b_;
        bool clip_;
    };

    /// r^alpha times a smooth window in t = log r.
    class PowerWindowShape final : public Shape {
    public:
        PowerWindowShape(double alpha, Window w) : alpha_(alpha), w_(w) {}
        cplx value_log(double t) const override
        {
            if (t <= w_.lo || t >= w_.hi) return {};
            return std::exp(alpha_ * t) * w_(t);
        }
        cplx euler_log(double t) const override
        {
            if (t <= w_.lo || t >= w_.hi) return {};
            return std::exp(alpha_ * t) * (alpha_ * w_(t) + w_.derivative(t));
        }
        std::vector<double> knots() const override { return uniform_knots(w_.lo, w_.hi, 0.5); }

        static std::vector<double> uniform_knots(double lo, double hi, double step)
        {
            const int n = std::max(4, static_cast<int>(std::ceil((hi - lo) / step)));
            std::vector<double> k(n + 1);
            for (int i = 0; i <= n; ++i) k[i] = lo + (hi - lo) * i / n;
            k.back() = hi;
            return k;
        }

    private:
        double alpha_;
        Window w_;
    };

    /// s^beta times a smooth window in log s, where s = anchor - t.
    /// With anchor = log R this is (log(R/r))^beta cut off in log log(R/r).
    class LogPowerWindowShape final : public Shape {
    public:
        LogPowerWindowShape(double anchor, double beta, Window w) : anchor_(anchor), beta_(beta), w_(w) {}
        cplx value_log(double t) const override
        {
            const double s = anchor_ - t;
            if (!(s > 0.0)) return {};
            const double tau = std::log(s);
            if (tau <= w_.lo || tau >= w_.hi) return {};
            return std::pow(s, beta_) * w_(tau);
        }
        cplx euler_log(double t) const override
        {
            const double s = anchor_ - t;
            if (!(s > 0.0)) return {};
            const double tau = std::log(s);
            if (tau <= w_.lo || tau >= w_.hi) return {};
            // dG/dt = -dG/ds
            return -std::pow(s, beta_ - 1.0) * (beta_ * w_(tau) + w_.derivative(tau));
        }
        std::vector<double> knots() const override
        {
            auto taus = PowerWindowShape::uniform_knots(w_.lo, w_.hi, 0.5);
            std::vector<double> k;
            k.reserve(taus.size());
            for (auto it = taus.rbegin(); it != taus.rend(); ++it) k.push_back(anchor_ - std::exp(*it));
            return k;
        }

    private:
        double anchor_, beta_;
        Window w_;
    };

    /// c * g(lambda r): a translation by log(lambda) in t.
    class TransformedShape final : public Shape {
    public:
        TransformedShape(std::shared_ptr<const Shape> base, cplx amplitude, double lambda)
            : base_(std::move(base)), c_(amplitude), lambda_(lambda), shift_(std::log(lambda))
        {
        }
        cplx value(double r) const override { return c_ * base_->value(lambda_ * r); }
        cplx derivative(double r) const override { return c_ * lambda_ * base_->derivative(lambda_ * r); }
        cplx value_log(double t) const override { return c_ * base_->value_log(t + shift_); }
        cplx euler_log(double t) const override { return c_ * base_->euler_log(t + shift_); }
        std::vector<double> knots() const override
        {
            auto k = base_->knots();
            for (double& v : k) v -= shift_;
            return k;
        }

    private:
        std::shared_ptr<const Shape> base_;
        cplx c_;
        double lambda_, shift_;
    };

} // namespace detail

/// Ramp width of the log-space windows, as a fraction of the window length.
inline constexpr double kRampFraction = 0.4;

/**
 * Radial test profile g(r), supported in [a, b] with 0 < a < b < inf (the
 * support is stored as t = log r so that extreme near-extremal members do not
 * underflow). Also exposes the log-coordinate view G(t) = g(e^t) and the
 * Euler form E(t) = r g'(r).
 */
class RadialProfile {
public:
    RadialProfile() = default;

    const std::string& name() const { return name_; }
    BoundaryClass boundary_class() const { return boundary_; }
    bool is_zero() const { return !shape_; }

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double support_lo() const { return std::exp(t_lo_); }
    double support_hi() const { return std::exp(t_hi_); }

    cplx value(double r) const { return shape_ ? shape_->value(r) : cplx{}; }
    cplx derivative(double r) const { return shape_ ? shape_->derivative(r) : cplx{}; }
    cplx value_log(double t) const { return shape_ ? shape_->value_log(t) : cplx{}; }
    cplx euler_log(double t) const { return shape_ ? shape_->euler_log(t) : cplx{}; }

    /// Quadrature breakpoints in t covering the support.
    std::vector<double> knots() const { return shape_ ? shape_->knots() : std::vector<double>{}; }

    /// c * g(r).
    RadialProfile scaled(cplx c) const { return transformed(c, 1.0, name_ + "*" + describe(c)); }

    /// g(lambda r).
    RadialProfile dilated(double lambda) const
    {
        if (!(lambda > 0.0)) throw std::domain_error("dilation factor must be positive");
        return transformed(1.0, lambda, name_ + "@" + detail::short_num(lambda));
    }

    static RadialProfile zero()
    {
        RadialProfile p;
        p.name_ = "zero";
        p.t_lo_ = 0.0;
        p.t_hi_ = 0.0;
        return p;
    }

    /// Profile from explicit g and g' on [a, b].
    static RadialProfile from_functions(std::string name, std::function<cplx(double)> g,
                                        std::function<cplx(double)> dg, double a, double b,
                                        BoundaryClass boundary)
    {
        check_interval(a, b);
        RadialProfile p;
        p.name_ = std::move(name);
        p.boundary_ = boundary;
        p.t_lo_ = std::log(a);
        p.t_hi_ = std::log(b);
        p.shape_ = std::make_shared<detail::FunctionShape>(std::move(g), std::move(dg), a, b,
                                                           boundary == BoundaryClass::vanishing);
        return p;
    }

    /// r^alpha on [a, b] with smooth cutoffs in log r.
    static RadialProfile power_window(double alpha, double a, double b, std::string name = {})
    {
        check_interval(a, b);
        return power_window_log(alpha, std::log(a), std::log(b),
                                name.empty() ? "powerlaw:" + detail::short_num(alpha) + "," + detail::short_num(a) +
                                                   "," + detail::short_num(b)
                                             : std::move(name));
    }

    static RadialProfile power_window_log(double alpha, double t0, double t1, std::string name)
    {
        if (!(t1 > t0)) throw std::invalid_argument("power window needs t0 < t1");
        RadialProfile p;
        p.name_ = std::move(name);
        p.t_lo_ = t0;
        p.t_hi_ = t1;
        p.shape_ = std::make_shared<detail::PowerWindowShape>(
            alpha, detail::Window{t0, t1, kRampFraction * (t1 - t0)});
        return p;
    }

    /// s^beta with s = anchor - t, windowed to s in [s_lo, s_hi] with smooth cutoffs in log s.
    static RadialProfile log_power_window(double anchor, double beta, double s_lo, double s_hi, std::string name)
    {
        if (!(s_lo > 0.0) || !(s_hi > s_lo) || !std::isfinite(s_hi))
            throw std::invalid_argument("log-power window needs 0 < s_lo < s_hi < inf");
        RadialProfile p;
        p.name_ = std::move(name);
        p.t_lo_ = anchor - s_hi;
        p.t_hi_ = anchor - s_lo;
        const double lo = std::log(s_lo), hi = std::log(s_hi);
        p.shape_ = std::make_shared<detail::LogPowerWindowShape>(
            anchor, beta, detail::Window{lo, hi, kRampFraction * (hi - lo)});
        return p;
    }

private:
    static void check_interval(double a, double b)
    {
        if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
            throw std::invalid_argument("profile support must satisfy 0 < a < b < inf");
    }

    static std::string describe(cplx c)
    {
        if (c.imag() == 0.0) return detail::short_num(c.real());
        return "(" + detail::short_num(c.real()) + "," + detail::short_num(c.imag()) + ")";
    }

    RadialProfile transformed(cplx c, double lambda, std::string name) const
    {
        if (!shape_) return zero();
        RadialProfile p = *this;
        p.name_ = std::move(name);
        const double shift = std::log(lambda);
        p.t_lo_ = t_lo_ - shift;
        p.t_hi_ = t_hi_ - shift;
        p.shape_ = std::make_shared<detail::TransformedShape>(shape_, c, lambda);
        return p;
    }

    std::shared_ptr<const detail::Shape> shape_;
    std::string name_ = "zero";
    BoundaryClass boundary_ = BoundaryClass::vanishing;
    double t_lo_ = 0.0, t_hi_ = 0.0;
};

// Built-in registry --------------------------------------------------------

/// exp(-1/((r-a)(b-r))) on (a, b).
inline RadialProfile bump(double a, double b)
{
    auto g = [a, b](double r) -> cplx { return std::exp(-1.0 / ((r - a) * (b - r))); };
    auto dg = [a, b](double r) -> cplx {
        const double q = (r - a) * (b - r);
        return std::exp(-1.0 / q) * (a + b - 2.0 * r) / (q * q);
    };
    return RadialProfile::from_functions("bump:" + detail::short_num(a) + "," + detail::short_num(b), g, dg, a, b,
                                         BoundaryClass::vanishing);
}

/// ((r-a)(b-r))^k on (a, b), k >= 2.
inline RadialProfile polybump(double a, double b, double k)
{
    if (!(k >= 2.0)) throw std::invalid_argument("polybump needs k >= 2");
    auto g = [a, b, k](double r) -> cplx { return std::pow((r - a) * (b - r), k); };
    auto dg = [a, b, k](double r) -> cplx {
        return k * std::pow((r - a) * (b - r), k - 1.0) * (a + b - 2.0 * r);
    };
    return RadialProfile::from_functions("polybump:" + detail::short_num(a) + "," + detail::short_num(b) + "," +
                                             detail::short_num(k),
                                         g, dg, a, b, BoundaryClass::vanishing);
}

/// (1+i) * bump(a, b).
inline RadialProfile complex_bump(double a, double b)
{
    const cplx c{1.0, 1.0};
    auto g = [a, b, c](double r) -> cplx { return c * std::exp(-1.0 / ((r - a) * (b - r))); };
    auto dg = [a, b, c](double r) -> cplx {
        const double q = (r - a) * (b - r);
        return c * std::exp(-1.0 / q) * (a + b - 2.0 * r) / (q * q);
    };
    return RadialProfile::from_functions("cbump:" + detail::short_num(a) + "," + detail::short_num(b), g, dg, a, b,
                                         BoundaryClass::vanishing);
}

/// r^alpha smoothly cut to [a, b].
inline RadialProfile powerlaw(double alpha, double a, double b) { return RadialProfile::power_window(alpha, a, b); }

/// (log(R/r))^beta smoothly cut to [a, b], 0 < a < b < R. The cutoffs act in log log(R/r).
inline RadialProfile logpower(double beta, double a, double b, double R)
{
    if (!(a > 0.0) || !(b > a) || !(R > b))
        throw std::invalid_argument("logpower needs 0 < a < b < R");
    return RadialProfile::log_power_window(std::log(R), beta, std::log(R / b), std::log(R / a),
                                           "logpower:" + detail::short_num(beta) + "," + detail::short_num(a) + "," +
                                               detail::short_num(b) + "," + detail::short_num(R));
}

struct ProfileRegistryEntry {
    std::string name;
    std::vector<std::string> parameters;
    std::string description;
};

inline const std::vector<ProfileRegistryEntry>& profile_registry()
{
    static const std::vector<ProfileRegistryEntry> entries{
        {"zero", {}, "identically zero"},
        {"bump", {"a", "b"}, "exp(-1/((r-a)(b-r))) on (a,b)"},
        {"polybump", {"a", "b", "k"}, "((r-a)(b-r))^k on (a,b), k >= 2"},
        {"powerlaw", {"alpha", "a", "b"}, "r^alpha with smooth cutoffs in log r to [a,b]"},
        {"logpower", {"beta", "a", "b", "R"}, "(log(R/r))^beta with smooth cutoffs to [a,b], b < R"},
        {"cbump", {"a", "b"}, "(1+i) bump(a,b), complex valued"},
    };
    return entries;
}

/// Parses "name:p1,p2,..." against the registry, e.g. "polybump:0.2,0.8,3".
inline RadialProfile parse_profile(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string name(text.substr(0, colon));
    std::vector<double> args;
    if (colon != std::string_view::npos) {
        std::string rest(text.substr(colon + 1));
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            char* end = nullptr;
            const double v = std::strtod(item.c_str(), &end);
            if (item.empty() || *end != '\0')
                throw std::invalid_argument("bad profile parameter '" + item + "' in '" + std::string(text) + "'");
            args.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    const auto& reg = profile_registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.name == name; });
    if (it == reg.end()) throw std::invalid_argument("unknown profile '" + name + "'");
    if (args.size() != it->parameters.size())
        throw std::invalid_argument("profile '" + name + "' takes " + std::to_string(it->parameters.size()) +
                                    " parameters, got " + std::to_string(args.size()));
    if (name == "zero") return RadialProfile::zero();
    if (name == "bump") return bump(args[0], args[1]);
    if (name == "polybump") return polybump(args[0], args[1], args[2]);
    if (name == "powerlaw") return powerlaw(args[0], args[1], args[2]);
    if (name == "logpower") return logpower(args[0], args[1], args[2], args[3]);
    return complex_bump(args[0], args[1]);
}

// Radial calculus ----------------------------------------------------------

/// d/d|x| of f(x) = g(|x|), i.e. g'(r).
inline cplx radial_derivative(const RadialProfile& profile, double r)
{
    if (!(r > 0.0)) throw std::domain_error("radial derivative needs r > 0");
    return profile.derivative(r);
}

/// |x| d/d|x|; eigenfunctions with eigenvalue mu are the mu-homogeneous functions.
inline cplx euler_apply(const RadialProfile& profile, double r)
{
    if (!(r > 0.0)) throw std::domain_error("Euler operator needs r > 0");
    return r * profile.derivative(r);
}

/// Max over the grid of |g'(r) - (g(r+h) - g(r-h)) / 2h|.
inline double finite_diff_check(const RadialProfile& profile, const std::vector<double>& grid, double h)
{
    if (!(h > 0.0)) throw std::domain_error("finite-difference step must be positive");
    const double a = profile.support_lo(), b = profile.support_hi();
    double worst = 0.0;
    for (double r : grid) {
        if (!(r - h > a) || !(r + h < b))
            throw std::domain_error("finite-difference point " + detail::short_num(r) + " +- h leaves the open support");
        const cplx central = (profile.value(r + h) - profile.value(r - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(profile.derivative(r) - central));
    }
    return worst;
}

/// {(R-r)/R <= log(R/r), log(R/r) <= (R-r)/r} for 0 < r < R.
inline std::pair<bool, bool> log_bound_lemmas(double R, double r)
{
    if (!(r > 0.0) || !(r < R)) throw std::domain_error("log bounds need 0 < r < R");
    const double L = std::log(R / r);
    return {(R - r) / R <= L, L <= (R - r) / r};
}

/// Sampled sup |g'| over the support.
inline double sup_derivative(const RadialProfile& profile, int samples = 20001)
{
    if (profile.is_zero()) return 0.0;
    const double a = profile.support_lo(), b = profile.support_hi();
    double m = 0.0;
    for (int i = 1; i < samples; ++i) m = std::max(m, std::abs(profile.derivative(a + (b - a) * i / samples)));
    return m;
}

struct BoundaryVanishingReport {
    double sup_derivative = 0.0;
    double worst_excess = 0.0; // max over the grid of |g(r)-g(R)| - C (R - r)
    bool holds = true;
};

/// Mean-value estimate |g(r) - g(R)| <= C (R - r) on grid points r in (a, R], C = sup |g'|.
inline BoundaryVanishingReport boundary_vanishing_check(const RadialProfile& profile, double R,
                                                        const std::vector<double>& grid)
{
    BoundaryVanishingReport rep;
    rep.sup_derivative = sup_derivative(profile);
    const double a = profile.support_lo();
    const cplx gR = profile.value(R);
    rep.worst_excess = -std::numeric_limits<double>::infinity();
    for (double r : grid) {
        if (!(r > a) || r > R) continue;
        const double excess = std::abs(profile.value(r) - gR) - rep.sup_derivative * (R - r);
        rep.worst_excess = std::max(rep.worst_excess, excess);
    }
    // The sampled sup can sit a hair under the true sup.
    rep.holds = rep.worst_excess <= 1e-9 * std::max(1.0, rep.sup_derivative);
    return rep;
}

} // namespace hardy
