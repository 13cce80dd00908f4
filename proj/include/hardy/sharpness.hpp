#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hardy/inequality.hpp"
#include "hardy/parallel.hpp"

namespace hardy {

enum class FamilyId { LH2_LOGPOWER, CRITLOG_LOGCUT, CLASSICAL_POWER, ET_LOGCONC };

inline std::string to_string(FamilyId id)
{
    switch (id) {
    case FamilyId::LH2_LOGPOWER: return "LH2_LOGPOWER";
    case FamilyId::CRITLOG_LOGCUT: return "CRITLOG_LOGCUT";
    case FamilyId::CLASSICAL_POWER: return "CLASSICAL_POWER";
    case FamilyId::ET_LOGCONC: return "ET_LOGCONC";
    }
    return "?";
}

/// Accepts the ids above and the short names logpower, logcut, power, logconc.
inline FamilyId parse_family(std::string_view text)
{
    if (text == "LH2_LOGPOWER" || text == "logpower") return FamilyId::LH2_LOGPOWER;
    if (text == "CRITLOG_LOGCUT" || text == "logcut") return FamilyId::CRITLOG_LOGCUT;
    if (text == "CLASSICAL_POWER" || text == "power") return FamilyId::CLASSICAL_POWER;
    if (text == "ET_LOGCONC" || text == "logconc") return FamilyId::ET_LOGCONC;
    throw ConfigurationError("unknown family '" + std::string(text) + "'");
}

/// The theorem whose constant a family probes.
inline TheoremId family_theorem(FamilyId id)
{
    switch (id) {
    case FamilyId::LH2_LOGPOWER: return TheoremId::LH2;
    case FamilyId::CRITLOG_LOGCUT: return TheoremId::CRITLOG;
    case FamilyId::CLASSICAL_POWER: return TheoremId::CLASSICAL_LP;
    case FamilyId::ET_LOGCONC: return TheoremId::EDMUNDS_TRIEBEL;
    }
    return TheoremId::LH2;
}

inline std::vector<double> default_eps_grid() { return {0.1, 0.03, 0.01, 0.003}; }

struct TestFamily {
    FamilyId id = FamilyId::LH2_LOGPOWER;
    std::vector<double> eps_grid = default_eps_grid();
    double R = 1.0;
    double p = 2.0;
    double Q = 2.0; // for ET_LOGCONC, the Euclidean dimension n
};

/// Inequality case (without profile) that members of the family are checked against.
inline InequalityCase family_case(const TestFamily& fam)
{
    InequalityCase c;
    c.theorem = family_theorem(fam.id);
    c.p = fam.p;
    c.R = fam.R;
    c.group = group_for_dimension(fam.Q);
    if (fam.id == FamilyId::CRITLOG_LOGCUT || fam.id == FamilyId::ET_LOGCONC) c.p = fam.Q;
    return c;
}

inline void validate_family(const TestFamily& fam)
{
    if (fam.eps_grid.empty()) throw ConfigurationError("epsilon grid is empty");
    for (std::size_t i = 0; i < fam.eps_grid.size(); ++i) {
        const double e = fam.eps_grid[i];
        if (!(e > 0.0 && e < 0.5)) throw ConfigurationError("epsilon values must lie in (0, 0.5)");
        if (i > 0 && !(e < fam.eps_grid[i - 1])) throw ConfigurationError("epsilon grid must be strictly decreasing");
    }
    if (!(fam.R > 0.0) || !std::isfinite(fam.R)) throw ConfigurationError("R must be positive and finite");
    switch (fam.id) {
    case FamilyId::LH2_LOGPOWER:
        if (!(fam.p > 1.0) || !std::isfinite(fam.p)) throw ConfigurationError("LH2_LOGPOWER needs 1 < p < inf");
        break;
    case FamilyId::CRITLOG_LOGCUT:
        if (!(fam.Q > 1.0)) throw ConfigurationError("CRITLOG_LOGCUT needs Q > 1");
        if (!(fam.R >= 1.0)) throw ConfigurationError("CRITLOG_LOGCUT concentrates at |x| = 1 and needs R >= 1");
        break;
    case FamilyId::CLASSICAL_POWER:
        if (!(fam.p > 1.0 && fam.p < fam.Q)) throw ConfigurationError("CLASSICAL_POWER needs 1 < p < Q");
        break;
    case FamilyId::ET_LOGCONC:
        if (!(fam.Q >= 2.0) || fam.Q != std::floor(fam.Q))
            throw ConfigurationError("ET_LOGCONC needs an integer dimension n >= 2");
        break;
    }
}

/**
 * Member profiles, one per epsilon. All cutoffs are smooth windows in a
 * logarithmic variable whose length grows like log(1/eps), so the cutoff cost
 * decays like 1/log(1/eps) and the ratio creeps towards the sharp constant.
 *
 *   LH2_LOGPOWER     s^{(p-1)/p},  s = log(R/r) in [eps^3, eps^-2]
 *   CRITLOG_LOGCUT   s^{-1/Q},     s = log(1/r) in [eps^4, eps^-5]
 *   CLASSICAL_POWER  r^{-(Q-p)/p}, r in [eps^2.5, eps^-2.5]
 *   ET_LOGCONC       u^{(n-1)/n},  u = 1 + log(1/r) in [1 + eps^4, eps^-4]
 */
inline std::vector<RadialProfile> build_family(const TestFamily& fam)
{
    validate_family(fam);
    std::vector<RadialProfile> out;
    for (double e : fam.eps_grid) {
        const std::string tag = to_string(fam.id) + ":eps=" + detail::short_num(e);
        switch (fam.id) {
        case FamilyId::LH2_LOGPOWER:
            out.push_back(RadialProfile::log_power_window(std::log(fam.R), (fam.p - 1.0) / fam.p, std::pow(e, 3.0),
                                                          std::pow(e, -2.0), tag));
            break;
        case FamilyId::CRITLOG_LOGCUT:
            out.push_back(
                RadialProfile::log_power_window(0.0, -1.0 / fam.Q, std::pow(e, 4.0), std::pow(e, -5.0), tag));
            break;
        case FamilyId::CLASSICAL_POWER: {
            const double L = 2.5 * std::log(1.0 / e);
            out.push_back(RadialProfile::power_window_log(-(fam.Q - fam.p) / fam.p, -L, L, tag));
            break;
        }
        case FamilyId::ET_LOGCONC:
            out.push_back(RadialProfile::log_power_window(1.0, (fam.Q - 1.0) / fam.Q, 1.0 + std::pow(e, 4.0),
                                                          std::pow(e, -4.0), tag));
            break;
        }
    }
    return out;
}

struct SweepPoint {
    double eps = 0.0;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();
    std::optional<std::string> error; // set when the member could not be evaluated
};

struct SweepResult {
    TestFamily family;
    TheoremId theorem = TheoremId::LH2;
    double constant = 0.0;
    std::vector<SweepPoint> points;
    double max_ratio = 0.0;
    bool tail_monotone = true; // warning only
    bool ceiling_ok = true;    // max_ratio <= 1 + tol_margin
    bool complete = true;      // no member failed

    bool pass() const { return ceiling_ok && complete; }
};

/// Evaluates every member against its theorem; members run concurrently and
/// are stored in epsilon order.
inline SweepResult sweep(const TestFamily& fam, double tol_margin = 1e-6,
                         const QuadratureSpec& spec = QuadratureSpec::suite(), unsigned jobs = 1)
{
    const auto members = build_family(fam);
    InequalityCase base = family_case(fam);
    base.tol_margin = tol_margin;
    base.quadrature = spec;

    SweepResult res;
    res.family = fam;
    res.theorem = base.theorem;
    res.points.resize(members.size());
    parallel_for(members.size(), jobs, [&](std::size_t i) {
        SweepPoint& pt = res.points[i];
        pt.eps = fam.eps_grid[i];
        InequalityCase c = base;
        c.profile = members[i];
        try {
            const auto v = verify(c);
            pt.ratio = v.ratio;
            pt.lhs = v.lhs;
            pt.rhs = v.rhs;
        } catch (const ConvergenceFailure& e) {
            pt.error = e.what();
        } catch (const NonFiniteIntegrand& e) {
            pt.error = e.what();
        }
    });

    switch (fam.id) {
    case FamilyId::LH2_LOGPOWER: res.constant = fam.p / (fam.p - 1.0); break;
    case FamilyId::CRITLOG_LOGCUT: res.constant = std::pow(fam.Q, fam.Q); break;
    case FamilyId::CLASSICAL_POWER: res.constant = fam.p / (fam.Q - fam.p); break;
    case FamilyId::ET_LOGCONC: res.constant = fam.Q / (fam.Q - 1.0); break;
    }

    for (const auto& pt : res.points) {
        if (pt.error) {
            res.complete = false;
            continue;
        }
        res.max_ratio = std::max(res.max_ratio, pt.ratio);
    }
    res.ceiling_ok = res.max_ratio <= 1.0 + tol_margin;
    const std::size_t n = res.points.size();
    for (std::size_t i = n >= 3 ? n - 2 : 1; i < n; ++i)
        if (!res.points[i].error && !res.points[i - 1].error && res.points[i].ratio < res.points[i - 1].ratio - 1e-4)
            res.tail_monotone = false;
    return res;
}

} // namespace hardy
