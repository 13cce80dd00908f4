#include <gtest/gtest.h>

#include "hardy/sharpness.hpp"

using namespace hardy;

namespace {

TestFamily family(FamilyId id, double p, double Q)
{
    TestFamily f;
    f.id = id;
    f.p = p;
    f.Q = Q;
    if (id == FamilyId::CRITLOG_LOGCUT || id == FamilyId::ET_LOGCONC) f.p = Q;
    return f;
}

void expect_sharp(const SweepResult& s, double threshold)
{
    ASSERT_TRUE(s.complete);
    EXPECT_TRUE(s.ceiling_ok);
    EXPECT_TRUE(s.tail_monotone);
    EXPECT_TRUE(s.pass());
    for (std::size_t i = 1; i < s.points.size(); ++i) EXPECT_GT(s.points[i].ratio, s.points[i - 1].ratio);
    EXPECT_GE(s.points.back().ratio, threshold);
    EXPECT_LE(s.max_ratio, 1.0 + 1e-6);
}

} // namespace

TEST(Sharpness, LogPowerApproachesHardyConstant)
{
    for (double p : {2.0, 3.0, 4.0}) {
        SCOPED_TRACE(p);
        const auto s = sweep(family(FamilyId::LH2_LOGPOWER, p, 4.0));
        EXPECT_DOUBLE_EQ(s.constant, p / (p - 1.0));
        expect_sharp(s, 0.95);
    }
}

TEST(Sharpness, PowerLawApproachesClassicalConstant)
{
    const std::pair<double, double> cases[] = {{2.0, 4.0}, {2.0, 3.0}, {3.0, 5.5}};
    for (auto [p, Q] : cases) {
        SCOPED_TRACE(Q);
        const auto s = sweep(family(FamilyId::CLASSICAL_POWER, p, Q));
        EXPECT_DOUBLE_EQ(s.constant, p / (Q - p));
        expect_sharp(s, 0.95);
    }
}

TEST(Sharpness, LogCutApproachesCriticalConstant)
{
    for (double Q : {2.0, 3.0}) {
        SCOPED_TRACE(Q);
        const auto s = sweep(family(FamilyId::CRITLOG_LOGCUT, Q, Q));
        EXPECT_DOUBLE_EQ(s.constant, std::pow(Q, Q));
        expect_sharp(s, 0.9);
    }
}

TEST(Sharpness, LogConcentrationApproachesEdmundsTriebel)
{
    for (double n : {2.0, 3.0}) {
        SCOPED_TRACE(n);
        expect_sharp(sweep(family(FamilyId::ET_LOGCONC, n, n)), 0.85);
    }
}

TEST(Sharpness, OracleToleranceAgrees)
{
    const auto fam = family(FamilyId::LH2_LOGPOWER, 3.0, 4.0);
    const auto a = sweep(fam);
    const auto b = sweep(fam, 1e-6, QuadratureSpec::oracle());
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_NEAR(a.points[i].ratio, b.points[i].ratio, 1e-7);
}

TEST(Sharpness, JobsDoNotChangeResults)
{
    const auto fam = family(FamilyId::CLASSICAL_POWER, 2.0, 4.0);
    const auto a = sweep(fam, 1e-6, QuadratureSpec::suite(), 1);
    const auto b = sweep(fam, 1e-6, QuadratureSpec::suite(), 4);
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].ratio, b.points[i].ratio);
}

TEST(Sharpness, FamilyValidation)
{
    auto f = family(FamilyId::LH2_LOGPOWER, 2.0, 4.0);
    f.eps_grid = {};
    EXPECT_THROW(build_family(f), ConfigurationError);
    f.eps_grid = {0.01, 0.1};
    EXPECT_THROW(build_family(f), ConfigurationError);
    f.eps_grid = {0.7};
    EXPECT_THROW(build_family(f), ConfigurationError);
    EXPECT_THROW(build_family(family(FamilyId::CLASSICAL_POWER, 4.0, 4.0)), ConfigurationError);
    auto c = family(FamilyId::CRITLOG_LOGCUT, 2.0, 2.0);
    c.R = 0.5;
    EXPECT_THROW(build_family(c), ConfigurationError);
    EXPECT_THROW(build_family(family(FamilyId::ET_LOGCONC, 2.5, 2.5)), ConfigurationError);
    EXPECT_EQ(build_family(family(FamilyId::ET_LOGCONC, 3.0, 3.0)).size(), 4u);
}

TEST(Sharpness, Parsing)
{
    EXPECT_EQ(parse_family("logpower"), FamilyId::LH2_LOGPOWER);
    EXPECT_EQ(parse_family("CRITLOG_LOGCUT"), FamilyId::CRITLOG_LOGCUT);
    EXPECT_EQ(family_theorem(FamilyId::ET_LOGCONC), TheoremId::EDMUNDS_TRIEBEL);
    EXPECT_THROW(parse_family("bogus"), std::invalid_argument);
}
