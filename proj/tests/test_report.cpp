#include <gtest/gtest.h>

#include "hardy/run.hpp"

using namespace hardy;

namespace {

RunConfig verify_config()
{
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.theorem = "LH2";
    cfg.p = 2.0;
    cfg.Q = 4.0;
    cfg.R = 1.0;
    cfg.profile = "polybump:0.2,0.8,3";
    return cfg;
}

} // namespace

TEST(Report, EmptyArray)
{
    EXPECT_EQ(to_json(std::vector<ReportRecord>{}), "[]\n");
    EXPECT_TRUE(parse_records("[]").empty());
}

TEST(Report, RoundTrip)
{
    const auto out = run(verify_config());
    ASSERT_EQ(out.exit_code, exit_status::ok);
    ASSERT_EQ(out.records.size(), 1u);
    const auto& rec = out.records[0];
    EXPECT_TRUE(rec.pass);
    EXPECT_EQ(rec.theorem_id, "LH2");
    const auto back = parse_records(to_json(rec));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], rec);
    EXPECT_EQ(to_json(back[0]), to_json(rec));

    ReportRecord odd = error_record("LH2", {{"p", 2.0}, {"profile", std::string("bump:0.2,0.8")}}, "it broke", 1.5);
    odd.lhs = std::numeric_limits<double>::quiet_NaN();
    odd.rhs = std::numeric_limits<double>::infinity();
    odd.R_at_sup = 0.25;
    odd.rows.push_back({0.1, 0.5, 1.0, 2.0, std::nullopt});
    odd.rows.push_back({0.01, std::nan(""), std::nan(""), std::nan(""), std::string("no convergence")});
    odd.warnings.push_back("tail not monotone");
    const auto arr = parse_records(to_json(std::vector<ReportRecord>{odd, rec}));
    ASSERT_EQ(arr.size(), 2u);
    EXPECT_EQ(arr[0], odd);
    EXPECT_EQ(arr[1], rec);
}

TEST(Report, Csv)
{
    const auto out = run(verify_config());
    const auto csv = to_csv(out.records);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
    EXPECT_NE(csv.find("\nLH2,"), std::string::npos);
    EXPECT_NE(csv.find(",true,"), std::string::npos);

    RunConfig sw;
    sw.command = Command::sweep;
    sw.family = "power";
    sw.p = 2.0;
    sw.Q = 4.0;
    const auto s = run(sw);
    ASSERT_EQ(s.exit_code, exit_status::ok);
    const auto table = to_sweep_csv(s.records[0]);
    EXPECT_EQ(table.substr(0, table.find('\n')), kSweepCsvHeader);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 5);
}

TEST(Run, Remainder)
{
    RunConfig cfg;
    cfg.command = Command::remainder;
    cfg.p = 2.0;
    cfg.Q = 2.0;
    cfg.profile = "bump:0.3,0.9";
    const auto out = run(cfg);
    ASSERT_EQ(out.exit_code, exit_status::ok);
    const auto& rec = out.records[0];
    EXPECT_EQ(rec.kind, "remainder");
    EXPECT_TRUE(rec.pass);
    EXPECT_LE(rec.lhs, rec.rhs);
}

TEST(Run, ExitCodes)
{
    auto bad = verify_config();
    bad.theorem = "UP1";
    bad.p = 3.0;
    bad.q = 4.0;
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    bad = verify_config();
    bad.theorem = "NOPE";
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    bad = verify_config();
    bad.profile = "bump:0.9,0.2";
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    bad = verify_config();
    bad.weights = {1, 1, 2};
    bad.Q = 3.0;
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    bad = verify_config();
    bad.weights = {1, 1, 2};
    bad.quasi_norm = "euclidean";
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    bad = verify_config();
    bad.theorem = "CLASSICAL_LP";
    bad.p = 4.0;
    EXPECT_EQ(run(bad).exit_code, exit_status::invalid);

    auto numerical = verify_config();
    numerical.rel_tol = 1e-15;
    numerical.abs_tol = 1e-300;
    const auto out = run(numerical);
    EXPECT_TRUE(out.exit_code == exit_status::ok || out.exit_code == exit_status::numerical);

    auto ok = verify_config();
    ok.theorem = "UP1";
    ok.p = 4.0;
    ok.q = 4.0;
    EXPECT_EQ(run(ok).exit_code, exit_status::ok);
}

TEST(Run, Euclidean)
{
    RunConfig cfg;
    cfg.command = Command::verify;
    cfg.euclidean = true;
    cfg.theorem = "CKN";
    cfg.function = "bump-angular:0.2,0.8";
    cfg.mc_samples = 100000;
    const auto a = run(cfg);
    ASSERT_EQ(a.exit_code, exit_status::ok);
    EXPECT_EQ(a.records[0].kind, "fullgrad");
    cfg.jobs = 3;
    EXPECT_EQ(to_json(run(cfg).records[0]), to_json(a.records[0]));
    cfg.weights = {1, 2};
    EXPECT_EQ(run(cfg).exit_code, exit_status::invalid);
}

TEST(Run, SuiteIsDeterministic)
{
    RunConfig cfg;
    cfg.command = Command::suite;
    cfg.jobs = 4;
    const auto a = run(cfg);
    EXPECT_EQ(a.exit_code, exit_status::ok);
    EXPECT_FALSE(a.single);
    cfg.jobs = 1;
    const auto b = run(cfg);
    EXPECT_EQ(to_json(a.records), to_json(b.records));
    EXPECT_EQ(to_csv(a.records), to_csv(b.records));
}
