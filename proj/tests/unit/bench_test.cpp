#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "dualvc/bench.hpp"

using namespace dualvc;

TEST(BenchPlan, ExpandsLists) {
  const auto plan = parse_bench_plan(R"({"threads": 3, "cells": [
      {"family": "hard", "variant": ["E+", "W-"], "algorithm": ["rls", "ea"], "m": [4, 6], "trials": 2}]})");
  EXPECT_EQ(plan.threads, 3);
  ASSERT_EQ(plan.cells.size(), 8U);
  EXPECT_EQ(plan.cells[0].variant, Variant::kEdgePlus);
  EXPECT_EQ(plan.cells[7].variant, Variant::kWeightMinus);
  for (const auto& c : plan.cells) EXPECT_EQ(c.trials, 2);
  EXPECT_EQ(parse_bench_plan(R"({"m": 5})").cells.size(), 1U);
  EXPECT_EQ(parse_bench_plan(R"([{"m": 5}, {"m": [6, 7]}])").cells.size(), 3U);
}

TEST(BenchPlan, RejectsBadInput) {
  EXPECT_THROW(parse_bench_plan("{"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"bogus": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"algorithm": "sa"})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"m": "ten"})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"m": 0, "budget": 10})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"m": 4, "budget": -1})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"m": []})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"family": "random", "m": 10, "budget": 10})"), std::invalid_argument);
  EXPECT_EQ(parse_bench_plan(R"({"m": 4})").cells[0].budget, kDefaultBudget);
  EXPECT_THROW(parse_bench_plan(R"({"family": "random", "m": 10, "wmax": 8, "D": 0})"), std::invalid_argument);
  EXPECT_THROW(parse_bench_plan(R"({"alpha": 1})"), std::invalid_argument);
}

TEST(BenchPlan, CellConfigOverlaysDefaults) {
  BenchCell base;
  base.m = 12;
  const auto c = parse_cell_config(R"({"algorithm": "EA_FIFTH", "alpha": 3})", base);
  EXPECT_EQ(c.algorithm, Algorithm::kEaFifth);
  EXPECT_EQ(c.alpha, 3);
  EXPECT_EQ(c.m, 12);
}

TEST(BenchCsv, RoundTrip) {
  BenchRecord r{"E+", "rls", 10, 1, 2, 1024, 7, 183, true, 1.25};
  EXPECT_EQ(r.csv_row(), "E+,rls,10,1,2,1024,7,183,1,1.250");
  const std::string text = std::string(kCsvHeader) + "\n" + r.csv_row() + "\n# comment\n";
  const auto back = read_bench_csv(text);
  ASSERT_EQ(back.size(), 1U);
  EXPECT_EQ(back[0].csv_row(), r.csv_row());
  EXPECT_THROW(read_bench_csv("nope\n"), std::invalid_argument);
  EXPECT_THROW(read_bench_csv(std::string(kCsvHeader) + "\nE+,rls,x\n"), std::invalid_argument);
}

TEST(BenchBounds, Shapes) {
  EXPECT_NEAR(table_bound(2, 10, 1, 1024), 2.0 * 10 * 10 * std::log(2048.0), 1e-9);
  EXPECT_NEAR(table_bound(2, 10, 1, 1), 20.0 * std::log(20.0), 1e-9);
  EXPECT_NEAR(hard_budget_shape(2, 10, 1024), 200.0 * std::log(200.0), 1e-9);
}

TEST(RunBench, HundredRowsAndDeterminism) {
  const auto plan = parse_bench_plan(R"({"family": "hard", "variant": "E+", "algorithm": ["rls", "ea"],
                                         "m": 6, "trials": 50, "budget": 100000, "seed": 11})");
  std::ostringstream a;
  std::ostringstream b;
  const auto rows = run_bench(plan, a, 2, TrialOptions{false});
  run_bench(plan, b, 1, TrialOptions{false});
  ASSERT_EQ(rows.size(), 100U);
  EXPECT_EQ(a.str(), b.str());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].success);
    EXPECT_EQ(rows[i].seed, 11 + i % 50);
    EXPECT_EQ(rows[i].w_max, 64);
  }
  EXPECT_EQ(read_bench_csv(a.str()).size(), 100U);
}

TEST(RunBench, TrialMatchesSolveSeed) {
  BenchCell cell;
  cell.m = 5;
  cell.seed = 3;
  cell.budget = 100000;
  const auto r0 = run_trial(cell, 2, TrialOptions{false});
  cell.seed = 5;
  const auto r1 = run_trial(cell, 0, TrialOptions{false});
  EXPECT_EQ(r0.csv_row(), r1.csv_row());
}

TEST(RunBench, FloatBackend) {
  BenchCell cell;
  cell.family = Family::kRandom;
  cell.variant = Variant::kWeight;
  cell.m = 30;
  cell.d = 4;
  cell.w_max = 1 << 16;
  cell.budget = 1000000;
  cell.backend = Backend::kFloat;
  for (int t = 0; t < 5; ++t) EXPECT_TRUE(run_trial(cell, t, TrialOptions{false}).success);
}

TEST(ThreadCap, ReadsEnvironment) {
  ::setenv("DUALVC_THREADS", "3", 1);
  EXPECT_EQ(thread_cap_from_env(), 3);
  ::setenv("DUALVC_THREADS", "0", 1);
  EXPECT_THROW(thread_cap_from_env(), std::invalid_argument);
  ::setenv("DUALVC_THREADS", "abc", 1);
  EXPECT_THROW(thread_cap_from_env(), std::invalid_argument);
  ::unsetenv("DUALVC_THREADS");
  EXPECT_GE(thread_cap_from_env(), 1);
}

TEST(Scaling, ReportOnSyntheticRows) {
  std::vector<BenchRecord> rows;
  for (const std::int64_t m : {8, 16, 32}) {
    const double bound = table_bound(2, m, 1, 256);
    for (std::uint64_t s = 0; s < 5; ++s) {
      rows.push_back({"E", "rls", m, 1, 2, 256, s, static_cast<std::int64_t>(0.5 * bound) + static_cast<std::int64_t>(s), true, 0});
    }
  }
  const auto report = scaling_report(rows);
  ASSERT_EQ(report.groups.size(), 1U);
  EXPECT_TRUE(report.pass());
  EXPECT_NEAR(report.groups[0].fitted_constant, 0.5, 0.01);
  EXPECT_LT(report.groups[0].spread, 1.05);
  EXPECT_FALSE(report.text().empty());

  std::vector<BenchRecord> single(rows.begin(), rows.begin() + 5);
  EXPECT_THROW(scaling_report(single), std::invalid_argument);
}
