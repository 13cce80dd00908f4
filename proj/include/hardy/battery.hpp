#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "hardy/cartesian.hpp"
#include "hardy/inequality.hpp"
#include "hardy/sharpness.hpp"

namespace hardy {

inline const std::vector<std::string>& battery_profiles()
{
    static const std::vector<std::string> names{
        "bump:0.2,0.8", "polybump:0.2,0.8,3", "polybump:0.1,0.9,2", "powerlaw:-0.5,0.2,2", "cbump:0.2,0.8",
    };
    return names;
}

inline const std::vector<double>& battery_dimensions()
{
    static const std::vector<double> Qs{2.0, 3.0, 4.0, 5.5};
    return Qs;
}

inline const std::vector<double>& battery_radii()
{
    static const std::vector<double> Rs{0.5, 1.0, 4.0};
    return Rs;
}

/// p values for dimension Q: {1.5, 2, 3, Q}.
inline std::vector<double> battery_exponents(double Q)
{
    std::vector<double> ps{1.5, 2.0, 3.0, Q};
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

/// Case with parameters the theorem ignores pinned, so equal computations share a key.
inline InequalityCase canonical_case(InequalityCase c)
{
    switch (c.theorem) {
    case TheoremId::CRITLOG:
    case TheoremId::BALL_UP: c.p = c.Q(); break;
    case TheoremId::EDMUNDS_TRIEBEL:
        c.p = c.Q();
        c.R = 1.0;
        break;
    case TheoremId::HS1a:
    case TheoremId::HS1b:
    case TheoremId::Q2a:
    case TheoremId::Q2b: c.p = 2.0; break;
    case TheoremId::CLASSICAL_LP:
    case TheoremId::LH2_supR: c.R = 1.0; break;
    default: break;
    }
    return c;
}

inline std::string case_key(const InequalityCase& c)
{
    return to_string(c.theorem) + "|" + c.profile.name() + "|p=" + detail::short_num(c.p) +
           "|Q=" + detail::short_num(c.Q()) + "|R=" + detail::short_num(c.R);
}

/// Every admissible (theorem, profile, p, Q, R) combination of the soundness grid, deduplicated, sorted by key.
inline std::vector<InequalityCase> soundness_battery(double tol_margin = 1e-6,
                                                      const QuadratureSpec& spec = QuadratureSpec::suite())
{
    std::map<std::string, InequalityCase> cases;
    for (const auto& name : battery_profiles()) {
        const RadialProfile prof = parse_profile(name);
        for (double Q : battery_dimensions())
            for (double p : battery_exponents(Q))
                for (double R : battery_radii())
                    for (TheoremId id : kAllTheorems) {
                        InequalityCase c;
                        c.theorem = id;
                        c.p = p;
                        c.group = group_for_dimension(Q);
                        c.R = R;
                        c.profile = prof;
                        c.tol_margin = tol_margin;
                        c.quadrature = spec;
                        c = canonical_case(c);
                        if (admissible(c)) cases.emplace(case_key(c), c);
                    }
    }
    std::vector<InequalityCase> out;
    out.reserve(cases.size());
    for (auto& [key, c] : cases) out.push_back(std::move(c));
    return out;
}

struct SweepTarget {
    TestFamily family;
    double threshold = 0.0; // the smallest-eps ratio must reach this
};

inline std::vector<SweepTarget> acceptance_sweeps()
{
    std::vector<SweepTarget> t;
    for (double p : {2.0, 3.0, 4.0}) t.push_back({{FamilyId::LH2_LOGPOWER, default_eps_grid(), 1.0, p, 2.0}, 0.95});
    for (auto [p, Q] : {std::pair{2.0, 4.0}, {2.0, 3.0}, {3.0, 5.5}})
        t.push_back({{FamilyId::CLASSICAL_POWER, default_eps_grid(), 1.0, p, Q}, 0.95});
    for (double Q : {2.0, 3.0}) t.push_back({{FamilyId::CRITLOG_LOGCUT, default_eps_grid(), 1.0, Q, Q}, 0.9});
    return t;
}

struct CartesianCheck {
    std::string function;
    bool ckn = false; // else LH2 full gradient
    double p = 2.0;
    int n = 2;
    double R = 1.0;
};

/// Deterministic tensor-gauss cross checks run by the suite.
inline std::vector<CartesianCheck> cartesian_checks()
{
    return {
        {"bump:0.2,0.8", false, 2.0, 2, 0.5},   {"bump:0.2,0.8", false, 2.0, 2, 1.0},
        {"bump:0.2,0.8", false, 3.0, 2, 0.5},   {"bump-angular:0.2,0.8", false, 2.0, 2, 0.5},
        {"bump:0.1,0.5", true, 2.0, 2, 1.0},    {"bump-angular:0.2,0.8", true, 2.0, 2, 1.0},
    };
}

} // namespace hardy
