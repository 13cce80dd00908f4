#include <chrono>
#include <cstdio>
#include <string>

#include "hardy/run.hpp"

using namespace hardy;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int n, bool ok, const std::string& detail)
{
    std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct BatteryOutcome {
    std::vector<InequalityCase> cases;
    std::vector<VerificationResult> results;
    std::vector<std::string> errors;
    double seconds = 0.0;
};

BatteryOutcome run_battery()
{
    BatteryOutcome b;
    const auto t0 = Clock::now();
    b.cases = soundness_battery();
    b.results.resize(b.cases.size());
    b.errors.resize(b.cases.size());
    parallel_for(b.cases.size(), default_jobs(), [&](std::size_t i) {
        try {
            b.results[i] = verify(b.cases[i]);
        } catch (const std::exception& e) {
            b.errors[i] = e.what();
        }
    });
    b.seconds = seconds_since(t0);
    return b;
}

void criterion_1(const BatteryOutcome& b)
{
    std::size_t passed = 0;
    double worst = 0.0;
    std::string first_bad;
    for (std::size_t i = 0; i < b.cases.size(); ++i) {
        const bool ok = b.errors[i].empty() && b.results[i].pass && b.results[i].ratio <= 1.0 + 1e-6;
        if (ok) ++passed;
        else if (first_bad.empty()) first_bad = case_key(b.cases[i]) + " " + b.errors[i];
        if (b.errors[i].empty() && b.cases[i].theorem != TheoremId::EQ_REM) worst = std::max(worst, b.results[i].ratio);
    }
    report(1, passed == b.cases.size() && b.seconds < 120.0,
           fmt("soundness battery %zu/%zu pass, worst ratio %.4f, %.2f s %s", passed, b.cases.size(), worst, b.seconds,
               first_bad.c_str()));
}

void criterion_2(const BatteryOutcome& b)
{
    std::size_t n = 0, ok = 0;
    double worst_rel = 0.0, worst_p2 = 0.0, min_rem = INFINITY;
    for (const auto& c : b.cases) {
        if (c.theorem != TheoremId::LH2 || c.p > 3.0) continue;
        ++n;
        InequalityCase k = c;
        k.theorem = TheoremId::EQ_REM;
        try {
            const auto rep = remainder_identity(k);
            const double scale = std::max(rep.term_u, rep.term_v);
            const double rel = scale > 0.0 ? rep.residual / scale : 0.0;
            worst_rel = std::max(worst_rel, rel);
            min_rem = std::min(min_rem, rep.term_rem);
            bool good = rel <= 1e-6 && rep.term_rem >= -1e-12;
            if (c.p == 2.0) {
                worst_p2 = std::max(worst_p2, rep.p2_identity_residual.value_or(INFINITY));
                good = good && rep.p2_identity_residual.value_or(INFINITY) <= 1e-8;
            }
            if (good) ++ok;
        } catch (const std::exception&) {
        }
    }
    report(2, n > 0 && ok == n,
           fmt("remainder identity %zu/%zu, worst relative residual %.2e, min remainder %.2e, p=2 identity %.2e", ok, n,
               worst_rel, min_rem, worst_p2));
}

std::string sweep_summary(const SweepResult& s)
{
    return fmt("%s(p=%g,Q=%g)=%.4f", to_string(s.family.id).c_str(), s.family.p, s.family.Q,
               s.points.empty() ? 0.0 : s.points.back().ratio);
}

bool sweep_ok(const SweepResult& s, double threshold)
{
    return s.pass() && !s.points.empty() && s.points.back().ratio >= threshold && s.max_ratio <= 1.0 + 1e-6;
}

void criteria_3_to_5()
{
    const auto t0 = Clock::now();
    bool ok3 = true, ok4 = true, ok5 = true;
    std::string d3, d4, d5;
    for (const auto& t : acceptance_sweeps()) {
        const auto s = sweep(t.family, 1e-6, QuadratureSpec::suite(), default_jobs());
        const bool ok = sweep_ok(s, t.threshold);
        switch (t.family.id) {
        case FamilyId::LH2_LOGPOWER:
            ok3 = ok3 && ok;
            d3 += sweep_summary(s) + " ";
            break;
        case FamilyId::CLASSICAL_POWER:
            ok4 = ok4 && ok;
            d4 += sweep_summary(s) + " ";
            break;
        case FamilyId::CRITLOG_LOGCUT:
            ok5 = ok5 && ok;
            d5 += sweep_summary(s) + " ";
            break;
        default: break;
        }
    }
    const double secs = seconds_since(t0);
    report(3, ok3 && secs < 30.0, d3 + fmt("(all sweeps %.2f s)", secs));
    report(4, ok4, d4);

    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back(std::exp(-6.0 + 12.0 * (i + 0.5) / 1000.0));
    double holder = 0.0;
    for (double p : {1.5, 2.0, 3.0})
        for (double Q : {2.0, 3.0, 4.0}) holder = std::max(holder, holder_equality_check(p, Q, grid));
    report(5, ok5 && holder <= 1e-12, d5 + fmt("Hoelder identity deviation %.2e", holder));
}

void criterion_6()
{
    double worst = 0.0;
    for (const auto& name : battery_profiles())
        for (double p : {1.5, 2.0, 3.0}) {
            InequalityCase c;
            c.p = p;
            c.group = group_for_dimension(4.0);
            c.R = 0.7;
            c.profile = parse_profile(name);
            c.quadrature = QuadratureSpec::oracle();
            const auto base = verify_lh2(c);
            for (double lambda : {0.1, 3.0, 20.0}) {
                InequalityCase k = c;
                k.profile = c.profile.dilated(lambda);
                k.R = c.R / lambda;
                const auto r = verify_lh2(k);
                worst = std::max({worst, std::abs(r.lhs - base.lhs) / base.lhs, std::abs(r.rhs - base.rhs) / base.rhs});
            }
        }
    report(6, worst <= 1e-8, fmt("LH2 scale invariance, worst relative deviation %.2e", worst));
}

void criterion_7()
{
    const auto spec = QuadratureSpec::oracle();
    QuadratureSpec log_zero = spec;
    log_zero.log_near_zero = true;
    const double a =
        integrate_radial([](double r) { return 1.0 / (r * std::pow(std::log(1.0 / r), 2)); }, 0.0, 0.5, log_zero).value;
    const double e1 = std::abs(a - 1.0 / std::log(2.0));
    const double b = integrate_radial([](double r) { return (1 - 2 * r) * (1 - 2 * r) * r; }, 0.0, 1.0, spec).value;
    const double e2 = std::abs(b - 1.0 / 6.0);
    double e3 = 0.0;
    for (double Q : {2.0, 3.5, 4.0})
        e3 = std::max(e3, std::abs(integrate_radial([Q](double r) { return std::pow(r, Q - 1); }, 0.0, 1.0, spec).value -
                                   1.0 / Q));
    report(7, e1 <= 1e-9 && e2 <= 1e-12 && e3 <= 1e-12,
           fmt("quadrature oracles, errors %.1e / %.1e / %.1e", e1, e2, e3));
}

void criterion_8()
{
    double worst = 0.0; // deviation over allowance, must stay <= 1
    std::string where;
    const std::pair<const char*, BoxMethod> methods[] = {{"tensor", BoxMethod::tensor_gauss()},
                                                         {"mc", BoxMethod::monte_carlo(1'000'000, 42, default_jobs())}};
    for (const auto& [label, method] : methods)
        for (const char* name : {"bump:0.2,0.8", "polybump:0.2,0.8,3"})
            for (double R : {0.5, 1.0}) {
                const auto g = parse_profile(name);
                const auto cart = verify_lh2_fullgrad(radial_test_function(g, 2), 2.0, 2, R, method);
                InequalityCase c;
                c.p = 2.0;
                c.group = group_for_dimension(2.0);
                c.R = R;
                c.profile = g;
                c.quadrature = QuadratureSpec::oracle();
                const auto rad = verify_lh2(c);
                const double S = std::sqrt(2.0 * std::numbers::pi);
                const std::tuple<double, double, double> norms[] = {{cart.lhs, cart.err_lhs, rad.lhs * S},
                                                                    {cart.rhs_radial, cart.err_rhs_radial, rad.rhs * S},
                                                                    {cart.rhs_full, cart.err_rhs_full, rad.rhs * S}};
                for (auto [v, err, ref] : norms) {
                    const double allow = std::max(1e-4 * ref, 3.0 * err);
                    const double dev = std::abs(v - ref) / allow;
                    if (dev > worst) {
                        worst = dev;
                        where = std::string(label) + " " + name;
                    }
                }
            }
    const auto cs = cauchy_schwarz_check(bump_angular(0.2, 0.8, 2), 100000, 42);
    report(8, worst <= 1.0 && cs.violations == 0,
           fmt("cross-pipeline worst deviation %.3f of allowance (%s), Cauchy-Schwarz violations %llu/%llu", worst,
               where.c_str(), static_cast<unsigned long long>(cs.violations),
               static_cast<unsigned long long>(cs.samples)));
}

void criterion_9(const BatteryOutcome& b)
{
    std::size_t up1 = 0, up2 = 0, ball = 0, bad = 0;
    for (std::size_t i = 0; i < b.cases.size(); ++i) {
        const auto& c = b.cases[i];
        const bool ok = b.errors[i].empty() && b.results[i].pass;
        if (c.theorem == TheoremId::UP1 && c.p == 4.0) {
            ++up1;
            bad += !ok;
        } else if (c.theorem == TheoremId::UP2 && c.p <= 3.0) {
            ++up2;
            bad += !ok;
        } else if (c.theorem == TheoremId::BALL_UP && (c.Q() == 3.0 || c.Q() == 4.0)) {
            ++ball;
            bad += !ok;
        }
    }
    report(9, bad == 0 && up1 > 0 && up2 > 0 && ball > 0,
           fmt("uncertainty cases UP1 %zu, UP2 %zu, ball %zu, failing %zu", up1, up2, ball, bad));
}

void criterion_10()
{
    RunConfig cfg;
    cfg.command = Command::suite;
    cfg.jobs = default_jobs();
    const auto a = run(cfg);
    const auto b = run(cfg);
    cfg.jobs = 1;
    const auto c = run(cfg);
    const std::string ja = to_json(a.records);
    const bool same = ja == to_json(b.records) && ja == to_json(c.records) && to_csv(a.records) == to_csv(c.records);
    report(10, same && a.exit_code == exit_status::ok,
           fmt("suite of %zu records byte-identical across runs and job counts, exit %d", a.records.size(), a.exit_code));
}

} // namespace

int main()
{
    const auto battery = run_battery();
    criterion_1(battery);
    criterion_2(battery);
    criteria_3_to_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(battery);
    criterion_10();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
