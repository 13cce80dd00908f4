#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/battery.hpp"
#include "hardy/parallel.hpp"
#include "hardy/report.hpp"

namespace hardy {

enum class Command { verify, sweep, remainder, suite };

namespace exit_status {
    inline constexpr int ok = 0;
    inline constexpr int failed = 1;
    inline constexpr int invalid = 2;
    inline constexpr int numerical = 3;
} // namespace exit_status

struct RunConfig {
    Command command = Command::verify;
    std::vector<double> weights;  // empty: derived from Q
    std::optional<double> Q;
    std::string quasi_norm;       // empty: weighted-max, or euclidean with --euclidean
    std::string theorem;          // empty: LH2 for --euclidean, the family's theorem for sweeps
    double p = 2.0;
    double R = 1.0;
    std::optional<double> q;      // UP1 only; must equal 2p/(p-2)
    std::string profile = "bump:0.2,0.8";
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    double tol_margin = 1e-6;
    unsigned jobs = 1;
    // Euclidean full-gradient checks
    bool euclidean = false;
    int n = 2;
    std::string function = "bump-angular";
    std::uint64_t mc_samples = 0; // 0: tensor-gauss
    std::uint64_t seed = 42;
    // sweeps
    std::string family = "logpower";
    std::vector<double> eps;
};

struct RunOutcome {
    std::vector<ReportRecord> records;
    int exit_code = exit_status::ok;
    bool single = true;  // one record rather than an array
    std::string message; // set for invalid configurations
};

inline GroupSpec config_group(const RunConfig& cfg)
{
    if (!cfg.weights.empty()) {
        GroupSpec g = make_group(cfg.weights);
        if (cfg.Q && std::abs(*cfg.Q - g.homogeneous_dimension()) > 1e-12)
            throw ConfigurationError("Q = " + detail::short_num(*cfg.Q) + " disagrees with the weights (trace " +
                                     detail::short_num(g.homogeneous_dimension()) + ")");
        return g;
    }
    return group_for_dimension(cfg.Q.value_or(2.0));
}

inline QuadratureSpec config_quadrature(const RunConfig& cfg)
{
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol >= 0.0)) throw ConfigurationError("tolerances must be positive");
    QuadratureSpec q = QuadratureSpec::suite();
    q.rel_tol = cfg.rel_tol;
    q.abs_tol = cfg.abs_tol;
    return q;
}

inline InequalityCase config_case(const RunConfig& cfg, TheoremId id)
{
    InequalityCase c;
    c.theorem = id;
    c.p = cfg.p;
    c.group = config_group(cfg);
    c.R = cfg.R;
    c.profile = parse_profile(cfg.profile);
    c.tol_margin = cfg.tol_margin;
    c.quadrature = config_quadrature(cfg);
    validate(c.group, cfg.quasi_norm.empty() ? QuasiNormSpec::weighted_max() : parse_quasi_norm(cfg.quasi_norm));
    if (id == TheoremId::CRITLOG || id == TheoremId::BALL_UP || id == TheoremId::EDMUNDS_TRIEBEL) c.p = c.Q();
    if (cfg.q) {
        if (id != TheoremId::UP1) throw ConfigurationError("--q only applies to UP1");
        if (c.p > 2.0 && std::abs(*cfg.q - c.q()) > 1e-12 * c.q())
            throw ConfigurationError("UP1 needs 1/p + 1/q = 1/2, i.e. q = " + detail::short_num(c.q()));
    }
    check_preconditions(c, id);
    return c;
}

namespace detail {

    /// Runs one evaluation; numerical failures become error records.
    template <class Fn>
    ReportRecord guarded(Fn&& fn, const std::string& theorem, std::vector<std::pair<std::string, ParamValue>> params,
                         bool& numerical_failure)
    {
        try {
            return fn();
        } catch (const ConvergenceFailure& e) {
            numerical_failure = true;
            return error_record(theorem, std::move(params), e.what(), e.partial_value().real());
        } catch (const NonFiniteIntegrand& e) {
            numerical_failure = true;
            return error_record(theorem, std::move(params), e.what());
        }
    }

    inline BoxMethod config_box_method(const RunConfig& cfg)
    {
        if (cfg.mc_samples > 0) return BoxMethod::monte_carlo(cfg.mc_samples, cfg.seed, cfg.jobs);
        return BoxMethod::tensor_gauss();
    }

    inline ReportRecord run_case(const InequalityCase& c)
    {
        if (c.theorem == TheoremId::EQ_REM) return to_record(remainder_identity(c));
        return to_record(verify(c));
    }

} // namespace detail

inline std::vector<ReportRecord> run_suite_records(const RunConfig& cfg, bool& numerical_failure)
{
    const auto spec = config_quadrature(cfg);
    const auto battery = soundness_battery(cfg.tol_margin, spec);
    const auto sweeps = acceptance_sweeps();
    const auto cart = cartesian_checks();
    const std::size_t total = battery.size() + sweeps.size() + cart.size();
    std::vector<ReportRecord> out(total);
    std::vector<char> failed(total, 0);
    parallel_for(total, cfg.jobs, [&](std::size_t i) {
        bool bad = false;
        if (i < battery.size()) {
            const auto& c = battery[i];
            out[i] = detail::guarded([&] { return detail::run_case(c); }, to_string(c.theorem), case_params(c), bad);
        } else if (i < battery.size() + sweeps.size()) {
            const auto& t = sweeps[i - battery.size()];
            out[i] = detail::guarded([&] { return to_record(sweep(t.family, cfg.tol_margin, spec), t.threshold); },
                                     to_string(family_theorem(t.family.id)), {{"family", to_string(t.family.id)}}, bad);
            if (!out[i].rows.empty())
                for (const auto& row : out[i].rows)
                    if (row.error) bad = true;
        } else {
            const auto& k = cart[i - battery.size() - sweeps.size()];
            const auto tf = parse_test_function(k.function, k.n);
            out[i] = detail::guarded(
                [&] {
                    return to_record(k.ckn ? verify_ckn_fullgrad(tf, k.n, BoxMethod::tensor_gauss(), cfg.tol_margin)
                                           : verify_lh2_fullgrad(tf, k.p, k.n, k.R, BoxMethod::tensor_gauss(),
                                                                 cfg.tol_margin));
                },
                k.ckn ? "CKN" : "LH2_FULLGRAD", {{"function", k.function}}, bad);
        }
        failed[i] = bad;
    });
    for (char f : failed)
        if (f) numerical_failure = true;
    return out;
}

/// Dispatches a configuration; the exit code follows the documented contract.
inline RunOutcome run(const RunConfig& cfg)
{
    RunOutcome out;
    bool numerical = false;
    try {
        switch (cfg.command) {
        case Command::verify: {
            if (cfg.euclidean) {
                if (!cfg.weights.empty() && !make_group(cfg.weights).is_isotropic())
                    throw ConfigurationError("--euclidean needs unit weights");
                if (!cfg.quasi_norm.empty() && cfg.quasi_norm != "euclidean")
                    throw ConfigurationError("--euclidean uses the Euclidean norm");
                const bool ckn = cfg.theorem == "CKN";
                if (!ckn && !cfg.theorem.empty() && cfg.theorem != "LH2" && cfg.theorem != "LH2_FULLGRAD")
                    throw ConfigurationError("--euclidean supports --theorem LH2 or CKN");
                const auto tf = parse_test_function(cfg.function, cfg.n);
                const auto method = detail::config_box_method(cfg);
                out.records.push_back(detail::guarded(
                    [&] {
                        return to_record(ckn ? verify_ckn_fullgrad(tf, cfg.n, method, cfg.tol_margin)
                                             : verify_lh2_fullgrad(tf, cfg.p, cfg.n, cfg.R, method, cfg.tol_margin));
                    },
                    ckn ? "CKN" : "LH2_FULLGRAD", {{"function", cfg.function}}, numerical));
                break;
            }
            if (cfg.theorem.empty()) throw ConfigurationError("verify needs --theorem");
            const TheoremId id = parse_theorem(cfg.theorem);
            const auto c = config_case(cfg, id);
            out.records.push_back(detail::guarded([&] { return detail::run_case(c); }, cfg.theorem, case_params(c),
                                                  numerical));
            break;
        }
        case Command::remainder: {
            const auto c = config_case(cfg, TheoremId::EQ_REM);
            out.records.push_back(detail::guarded([&] { return to_record(remainder_identity(c)); }, "EQ_REM",
                                                  case_params(c), numerical));
            break;
        }
        case Command::sweep: {
            TestFamily fam;
            fam.id = parse_family(cfg.family);
            if (!cfg.theorem.empty() && parse_theorem(cfg.theorem) != family_theorem(fam.id))
                throw ConfigurationError("family " + to_string(fam.id) + " probes " +
                                         to_string(family_theorem(fam.id)) + ", not " + cfg.theorem);
            if (!cfg.eps.empty()) fam.eps_grid = cfg.eps;
            fam.R = cfg.R;
            fam.p = cfg.p;
            fam.Q = cfg.Q.value_or(config_group(cfg).homogeneous_dimension());
            if (fam.id == FamilyId::CRITLOG_LOGCUT || fam.id == FamilyId::ET_LOGCONC) fam.p = fam.Q;
            validate_family(fam);
            const auto spec = config_quadrature(cfg);
            out.records.push_back(detail::guarded([&] { return to_record(sweep(fam, cfg.tol_margin, spec, cfg.jobs)); },
                                                  to_string(family_theorem(fam.id)),
                                                  {{"family", to_string(fam.id)}}, numerical));
            for (const auto& row : out.records.back().rows)
                if (row.error) numerical = true;
            break;
        }
        case Command::suite:
            out.single = false;
            out.records = run_suite_records(cfg, numerical);
            break;
        }
    } catch (const NonFiniteIntegrand& e) {
        out.records.push_back(error_record(cfg.theorem, {}, e.what()));
        out.exit_code = exit_status::numerical;
        return out;
    } catch (const std::invalid_argument& e) {
        out.message = e.what();
        out.exit_code = exit_status::invalid;
        return out;
    } catch (const std::domain_error& e) {
        out.message = e.what();
        out.exit_code = exit_status::invalid;
        return out;
    }

    if (numerical)
        out.exit_code = exit_status::numerical;
    else
        for (const auto& r : out.records)
            if (!r.pass) out.exit_code = exit_status::failed;
    return out;
}

} // namespace hardy
