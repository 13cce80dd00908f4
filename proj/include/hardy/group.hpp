#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

struct InvalidGroup : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigurationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/**
 * Homogeneous group in exponential coordinates.
 *
 * The dilation matrix is diag(weights); Q is its trace. Haar measure is
 * coordinate Lebesgue measure, so only dilations and inversion are needed.
 */
class GroupSpec {
public:
    GroupSpec() = default;

    std::size_t dimension() const { return weights_.size(); }
    std::span<const double> weights() const { return weights_; }
    double homogeneous_dimension() const { return Q_; }

    bool is_isotropic() const
    {
        return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
    }

    friend GroupSpec make_group(std::vector<double> weights);

private:
    std::vector<double> weights_;
    double Q_ = 0.0;
};

inline GroupSpec make_group(std::vector<double> weights)
{
    if (weights.empty())
        throw InvalidGroup("group needs at least one dilation weight");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw InvalidGroup("dilation weights must be positive and finite");

    GroupSpec g;
    g.Q_ = std::accumulate(weights.begin(), weights.end(), 0.0);
    g.weights_ = std::move(weights);
    return g;
}

inline void check_shape(const GroupSpec& group, std::span<const double> x)
{
    if (x.size() != group.dimension())
        throw ShapeError("coordinate vector has length " + std::to_string(x.size()) +
                         ", group dimension is " + std::to_string(group.dimension()));
}

/// Component k becomes lambda^{nu_k} x_k.
inline std::vector<double> dilate(const GroupSpec& group, double lambda, std::span<const double> x)
{
    check_shape(group, x);
    if (!(lambda > 0.0))
        throw std::domain_error("dilation parameter must be positive");
    std::vector<double> out(x.size());
    auto w = group.weights();
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = (lambda == 1.0) ? x[k] : std::pow(lambda, w[k]) * x[k];
    return out;
}

/// Group inverse. For every group handled here (abelian and the
/// Heisenberg-type (1,1,2) case) this is negation in exponential coordinates.
inline std::vector<double> inverse(const GroupSpec& group, std::span<const double> x)
{
    check_shape(group, x);
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v = -v;
    return out;
}

enum class QuasiNormKind { euclidean, weighted_max, weighted_power, koranyi };

struct QuasiNormSpec {
    QuasiNormKind kind = QuasiNormKind::weighted_max;
    double N = 1.0; // weighted_power only

    static QuasiNormSpec euclidean() { return {QuasiNormKind::euclidean, 1.0}; }
    static QuasiNormSpec weighted_max() { return {QuasiNormKind::weighted_max, 1.0}; }
    static QuasiNormSpec weighted_power(double N) { return {QuasiNormKind::weighted_power, N}; }
    static QuasiNormSpec koranyi() { return {QuasiNormKind::koranyi, 1.0}; }

    friend bool operator==(const QuasiNormSpec&, const QuasiNormSpec&) = default;
};

inline std::string to_string(const QuasiNormSpec& spec)
{
    switch (spec.kind) {
    case QuasiNormKind::euclidean: return "euclidean";
    case QuasiNormKind::weighted_max: return "weighted-max";
    case QuasiNormKind::koranyi: return "koranyi";
    case QuasiNormKind::weighted_power: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "weighted-power:%.17g", spec.N);
        return buf;
    }
    }
    return "?";
}

/// Accepts "euclidean", "weighted-max", "weighted-power:N", "koranyi".
inline QuasiNormSpec parse_quasi_norm(std::string_view text)
{
    if (text == "euclidean") return QuasiNormSpec::euclidean();
    if (text == "weighted-max") return QuasiNormSpec::weighted_max();
    if (text == "koranyi") return QuasiNormSpec::koranyi();
    constexpr std::string_view prefix = "weighted-power:";
    if (text.starts_with(prefix)) {
        std::string rest(text.substr(prefix.size()));
        char* end = nullptr;
        double N = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str() || *end != '\0' || !(N > 0.0))
            throw ConfigurationError("weighted-power needs a positive N, got '" + rest + "'");
        return QuasiNormSpec::weighted_power(N);
    }
    throw ConfigurationError("unknown quasi-norm '" + std::string(text) + "'");
}

/// Throws ConfigurationError if the quasi-norm kind is not admissible for the group.
inline void validate(const GroupSpec& group, const QuasiNormSpec& spec)
{
    auto w = group.weights();
    switch (spec.kind) {
    case QuasiNormKind::euclidean:
        if (!group.is_isotropic())
            throw ConfigurationError("euclidean quasi-norm requires all weights equal to 1");
        break;
    case QuasiNormKind::weighted_max:
        break;
    case QuasiNormKind::weighted_power:
        if (!(spec.N > 0.0))
            throw ConfigurationError("weighted-power needs N > 0");
        for (double nu : w)
            if (2.0 * spec.N / nu < 1.0)
                throw ConfigurationError("weighted-power requires 2N/nu_k >= 1 for every weight");
        break;
    case QuasiNormKind::koranyi:
        if (w.size() != 3 || w[0] != 1.0 || w[1] != 1.0 || w[2] != 2.0)
            throw ConfigurationError("koranyi quasi-norm is defined only for weights (1,1,2)");
        break;
    }
}

inline double quasi_norm(const GroupSpec& group, const QuasiNormSpec& spec, std::span<const double> x)
{
    check_shape(group, x);
    validate(group, spec);
    auto w = group.weights();
    switch (spec.kind) {
    case QuasiNormKind::euclidean: {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    case QuasiNormKind::weighted_max: {
        double m = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k)
            m = std::max(m, std::pow(std::abs(x[k]), 1.0 / w[k]));
        return m;
    }
    case QuasiNormKind::weighted_power: {
        // Factor out the largest term so high exponents do not overflow.
        std::vector<double> parts(x.size());
        double top = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            parts[k] = std::pow(std::abs(x[k]), 1.0 / w[k]);
            top = std::max(top, parts[k]);
        }
        if (top == 0.0) return 0.0;
        double s = 0.0;
        for (double v : parts) s += std::pow(v / top, 2.0 * spec.N);
        return top * std::pow(s, 1.0 / (2.0 * spec.N));
    }
    case QuasiNormKind::koranyi: {
        double h = x[0] * x[0] + x[1] * x[1];
        return std::pow(h * h + x[2] * x[2], 0.25);
    }
    }
    return 0.0;
}

} // namespace hardy
