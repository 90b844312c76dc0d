#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "irsroute/sweep.hpp"
#include "test_support.hpp"

namespace irsroute {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_number(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

TEST(SweepTable, CsvRoundTripKeepsSpecialValues) {
  SweepTable t;
  t.num_users = 2;
  t.rows.push_back({4.0, "proposed", -53.25, {-50.5, kNan}, true, 1.5, 7});
  t.rows.push_back({8.0, "max-cpb", kNan, {kNan, kNan}, false, 0.0, 7});
  t.rows.push_back({0.1, "sequential", -kInf, {kInf, -1e-300}, true, 0.0, 9});
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "axis_value,scheme,objective_db,user1_gain_db,user2_gain_db,"
            "feasible,runtime_ms,seed");
  const SweepTable back = SweepTable::from_csv(csv);
  ASSERT_EQ(back.num_users, 2);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const SweepRow& a = t.rows[r];
    const SweepRow& b = back.rows[r];
    EXPECT_EQ(a.axis_value, b.axis_value);
    EXPECT_EQ(a.scheme, b.scheme);
    EXPECT_TRUE(same_number(a.objective_db, b.objective_db));
    for (int k = 0; k < 2; ++k) {
      EXPECT_TRUE(same_number(a.user_gain_db[k], b.user_gain_db[k]));
    }
    EXPECT_EQ(a.feasible, b.feasible);
    EXPECT_EQ(a.runtime_ms, b.runtime_ms);
    EXPECT_EQ(a.seed, b.seed);
  }
  EXPECT_EQ(back.to_csv(), csv);
}

TEST(SweepTable, FromCsvRejectsMalformedText) {
  EXPECT_THROW(SweepTable::from_csv(""), std::invalid_argument);
  EXPECT_THROW(SweepTable::from_csv("a,b,c,d,e,f\n"), std::invalid_argument);
  SweepTable t;
  t.num_users = 1;
  const std::string head = t.header() + "\n";
  EXPECT_THROW(SweepTable::from_csv(head + "1,proposed,2,3,1,0\n"),
               std::invalid_argument);
  EXPECT_THROW(SweepTable::from_csv(head + "1,proposed,x,3,1,0,1\n"),
               std::invalid_argument);
  EXPECT_EQ(SweepTable::from_csv(head).rows.size(), 0u);
}

TEST(Sweep, EmptyValuesGiveHeaderOnly) {
  const Scenario s = bundled_scenario();
  SweepConfig cfg;
  const SweepTable t = run_sweep(s, cfg);
  EXPECT_EQ(t.num_users, 4);
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.to_csv(), t.header() + "\n");
}

TEST(Sweep, AxisNamesAndSchemes) {
  for (SweepAxis a :
       {SweepAxis::kM0, SweepAxis::kB0, SweepAxis::kAlpha, SweepAxis::kQ}) {
    EXPECT_EQ(sweep_axis_from_string(to_string(a)), a);
  }
  EXPECT_THROW(sweep_axis_from_string("snr"), std::invalid_argument);
  EXPECT_EQ(default_schemes(SweepAxis::kQ).size(), 5u);
  EXPECT_EQ(default_schemes(SweepAxis::kAlpha).size(), 3u);
}

TEST(Sweep, QAxisRowsMatchDirectSolvesAndRepeatExactly) {
  const Scenario s = bundled_scenario();
  SweepConfig cfg;
  cfg.axis = SweepAxis::kQ;
  cfg.values = {1, 3};
  cfg.schemes = {"proposed", "min-pathloss"};
  cfg.seed = 4;
  cfg.record_timing = false;
  const SweepTable t = run_sweep(s, cfg);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_FALSE(t.rows[0].feasible);
  EXPECT_TRUE(std::isnan(t.rows[0].objective_db));
  const RoutingSolution q3 = run_scheme(s, "proposed", 3);
  EXPECT_EQ(t.rows[2].scheme, "proposed");
  EXPECT_EQ(t.rows[2].objective_db, q3.objective_db());
  for (const SweepRow& r : t.rows) {
    EXPECT_EQ(r.runtime_ms, 0.0);
    EXPECT_EQ(r.seed, 4u);
  }
  EXPECT_EQ(run_sweep(s, cfg).to_csv(), t.to_csv());
}

TEST(Sweep, RejectsBadValuesAndSchemes) {
  const Scenario s = bundled_scenario();
  SweepConfig cfg;
  cfg.axis = SweepAxis::kM0;
  cfg.values = {2.5};
  EXPECT_THROW(run_sweep(s, cfg), std::invalid_argument);
  cfg.axis = SweepAxis::kAlpha;
  cfg.values = {2.0};
  cfg.schemes = {"proposed"};
  EXPECT_THROW(run_sweep(s, cfg), std::invalid_argument);
}

TEST(Sweep, AlphaAxisReportsPerUserPowers) {
  const Scenario s = bundled_scenario();
  SweepConfig cfg;
  cfg.axis = SweepAxis::kAlpha;
  cfg.values = {2.0, 4.0};
  cfg.realizations = 5;
  cfg.record_timing = false;
  const SweepTable t = run_sweep(s, cfg);
  ASSERT_EQ(t.rows.size(), 6u);
  for (const SweepRow& r : t.rows) {
    ASSERT_EQ(r.user_gain_db.size(), 4u);
    for (double g : r.user_gain_db) EXPECT_TRUE(std::isfinite(g));
  }
  // Interference rows fall with the exponent.
  EXPECT_LT(t.rows[5].objective_db, t.rows[2].objective_db);
  EXPECT_EQ(t.rows[0].user_gain_db, t.rows[3].user_gain_db);
}

}  // namespace
}  // namespace irsroute
