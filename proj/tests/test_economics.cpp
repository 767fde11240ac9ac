#include <gtest/gtest.h>

#include "hres/economics.hpp"
#include "hres/problem.hpp"
#include "support/oracles.hpp"

using namespace hres;

namespace {

const ScenarioData& scenario() {
  static const ScenarioData s = synth_scenario({}, {}, 1);
  return s;
}

const PreparedScenario& prepared() {
  static const PreparedScenario p(scenario(), ComponentCatalog{});
  return p;
}

// Reference optimal row of the pelican optimizer.
const DesignVector kPoaRow{69, 19, 3343, 31.4, 11.3, 9};

}  // namespace

TEST(SystemCost, DigesterTermAlwaysPresent) {
  ComponentCatalog c;
  c.biogas.digester_maint_per_year_usd = 0.0;
  c.battery.maint_per_year_usd = 0.0;
  EconConfig e;
  e.cost_model = CostModel::paper_literal;
  EXPECT_DOUBLE_EQ(system_cost({0, 0, 0, 0.0, 0.0, 0}, c, e), 2550.0);
  e.cost_model = CostModel::corrected;
  EXPECT_DOUBLE_EQ(system_cost({0, 0, 0, 0.0, 0.0, 0}, c, e), 2550.0);
}

TEST(SystemCost, SingleModuleLiteral) {
  ComponentCatalog c;
  c.biogas.digester_maint_per_year_usd = 0.0;
  // The literal form charges battery maintenance once regardless of the count,
  // so it is zeroed for the single-module case.
  c.battery.maint_per_year_usd = 0.0;
  EconConfig e;
  e.cost_model = CostModel::paper_literal;
  EXPECT_NEAR(oracle::one_module_cost(), 3350.0, 1e-9);
  EXPECT_DOUBLE_EQ(system_cost({1, 0, 0, 0.0, 0.0, 0}, c, e), 3350.0);
}

// Term-by-term evaluation for the reference pelican row under the defaults:
//   PV        69 * (640 + 25 * 6.4)                           =     55,200
//   turbines  19 * (2400 + 25*24 + 11.3*55 + 25*11.3*0.55)    =     71,760.625
//   batteries 6686 * (1239 * (1 + 1) + 25 * 12.39)            = 18,638,896.5
//   engines   9 * (720 + 25 * 7.2)                            =      8,100
//   digester  2550 + 25 * 25.5                                =      3,187.5
TEST(SystemCost, ReferenceRowCorrectedModel) {
  const double expected = 55200.0 + 71760.625 + 18638896.5 + 8100.0 + 3187.5;
  EXPECT_NEAR(system_cost(kPoaRow, {}, {}), expected, 1e-6);
  EXPECT_NEAR(expected, 18777144.625, 1e-9);
}

TEST(SystemCost, LiteralModelBatteryTerm) {
  // Literal: N_bat * (C_bat + V_bat * C_bat) + (H - Y - 1) * M_bat.
  const ComponentCatalog c;
  EconConfig e;
  e.cost_model = CostModel::paper_literal;
  const double with = system_cost({0, 0, 5, 0.0, 0.0, 0}, c, e);
  const double without = system_cost({0, 0, 0, 0.0, 0.0, 0}, c, e);
  EXPECT_NEAR(with - without, 10 * (1239.0 + 12.0 * 1239.0), 1e-6);
  EXPECT_EQ(parse_cost_model("paper-literal"), CostModel::paper_literal);
  EXPECT_THROW(parse_cost_model("cheap"), std::invalid_argument);
}

TEST(SystemCost, MonotoneInEveryCount) {
  const ComponentCatalog c;
  const EconConfig e;
  const DesignVector base{10, 2, 3, 20.0, 20.0, 1};
  const double c0 = system_cost(base, c, e);
  for (int i = 0; i < 5; ++i) {
    DesignVector d = base;
    if (i == 0) d.n_pv++;
    if (i == 1) d.n_wg++;
    if (i == 2) d.n_bat_parallel++;
    if (i == 3) d.n_bio++;
    if (i == 4) d.hub_height_m += 1.0;
    EXPECT_GT(system_cost(d, c, e), c0) << i;
  }
  EXPECT_THROW(system_cost({-1, 0, 0, 0.0, 0.0, 0}, c, e), std::invalid_argument);
}

TEST(BatteryReplacements, DefaultFromLife) {
  EXPECT_EQ(default_battery_replacements(25, 10.0), 1);
  EXPECT_EQ(default_battery_replacements(25, 5.0), 4);
  EXPECT_EQ(default_battery_replacements(5, 10.0), 0);
}

TEST(Constraints, ReferenceRowsAreFeasible) {
  const DesignVector rows[] = {{125, 15, 3427, 18, 22, 6},    {168, 14, 3381, 13.1, 16, 10}, kPoaRow,
                               {267, 18, 3338, 8.2, 12.4, 8}, {46, 19, 3362, 51.6, 12.6, 10},
                               {159, 12, 3547, 14.4, 13, 3},  {79, 63, 3367, 23.6, 14.7, 5}};
  for (const auto& d : rows) EXPECT_TRUE(check_constraints(d, {}).feasible);
}

TEST(Constraints, NamedViolations) {
  auto v = check_constraints({10, 1, 1, 10.0, 50.0, 1}, {});
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0], "h above 40");
  EXPECT_DOUBLE_EQ(v.magnitude, 10.0);
  v = check_constraints({10, 1, 1, -5.0, 20.0, 1}, {});
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0], "β below 0");
  v = check_constraints({0, 0, 1, 10.0, 20.0, 1}, {});
  EXPECT_EQ(v.violations.size(), 2u);
  EXPECT_FALSE(v.feasible);
}

TEST(Fitness, FeasibleZeroLpspIsCost) {
  const DesignVector d{2500, 60, 400, 10.0, 30.0, 3};
  const auto f = evaluate_fitness(d, prepared(), {}, {}, {});
  EXPECT_EQ(f.lpsp, 0.0);
  EXPECT_TRUE(f.feasible);
  EXPECT_EQ(f.fitness, system_cost(d, {}, {}));
}

TEST(Fitness, ShortfallIsPenalisedLinearly) {
  const DesignVector d{40, 4, 3, 20.0, 25.0, 1};
  FitnessConfig fc;
  fc.penalty_scale_usd = 1e6;
  const auto f = evaluate_fitness(d, prepared(), {}, {}, fc);
  ASSERT_GT(f.lpsp, 0.0);
  EXPECT_FALSE(f.feasible);
  EXPECT_DOUBLE_EQ(f.fitness, f.cost + 1e6 * f.lpsp);
  fc.lpsp_tolerance = 0.5;
  EXPECT_EQ(evaluate_fitness(d, prepared(), {}, {}, fc).fitness, f.cost);
}

TEST(Fitness, InfeasibleHeightWorseThanLargestFeasibleDesign) {
  const ComponentCatalog c;
  const DesignBounds b;
  const DesignVector largest{static_cast<long>(b.n_pv_max), static_cast<long>(b.n_wg_max),
                             static_cast<long>(b.n_bat_max), 90.0, c.wind.h_high_m, static_cast<long>(b.n_bio_max)};
  const double worst_feasible = system_cost(largest, c, {});
  const double bad = fitness({2500, 60, 400, 10.0, 50.0, 3}, prepared(), c, {}, {});
  EXPECT_GT(bad, worst_feasible);
}

TEST(Fitness, UnrunnableDesignsStillScore) {
  const auto f = evaluate_fitness({-3, 1, 1, 10.0, 20.0, 1}, prepared(), {}, {}, {});
  EXPECT_FALSE(f.simulated);
  EXPECT_EQ(f.lpsp, 1.0);
  EXPECT_TRUE(std::isfinite(f.fitness));
}

TEST(Payback, WorkedValues) {
  EXPECT_DOUBLE_EQ(*payback_period(1000.0, 1000.0, 1.0), 365.0);
  EXPECT_FALSE(payback_period(1000.0, 1000.0, 0.0).has_value());
  EXPECT_FALSE(payback_period(1000.0, 0.0, 0.1).has_value());
}

TEST(Payback, BackOutReferencePeriod) {
  // 20 years 7 months 16 days, about 7528.9 days, repaying the best reference cost.
  const double days = 20 * 365 + 7 * 30.42 + 16;
  const double cost = 4276504.73;
  const double revenue = 365.0 * cost / days;
  EXPECT_NEAR(revenue, 207300.0, 100.0);
  EXPECT_NEAR(*payback_period(cost, revenue, 1.0), oracle::payback_days(cost, revenue, 1.0), 1e-9);
  EXPECT_NEAR(*payback_period(cost, revenue, 1.0), days, 1e-6);
}
