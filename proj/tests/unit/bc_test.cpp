// Copyright 2026 The fadecap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fadecap/bc.hpp"
#include "fadecap/error.hpp"
#include "fadecap/mac.hpp"
#include "fadecap/montecarlo.hpp"
#include "fadecap/single_user.hpp"
#include "oracle.hpp"

namespace fadecap::bc {
namespace {

namespace su = fadecap::single_user;

const FadingModel kRay = FadingModel::rayleigh();
const FadingModel kLl = FadingModel::log_logistic();
const FadingModel kStrong = FadingModel::rayleigh(db_to_linear(3.0));

double rel(double x, double ref) { return std::abs(x / ref - 1.0); }

TEST(Bc, ProblemValidation) {
  EXPECT_THROW((BcProblem{{}, 1.0}.validate()), DomainError);
  EXPECT_THROW((BcProblem{{kRay}, 0.0}.validate()), DomainError);
  EXPECT_NO_THROW((BcProblem{{kRay, kLl}, 1e-3}.validate()));
}

TEST(Bc, SplitVector) {
  EXPECT_THROW(SplitVector({}), DomainError);
  EXPECT_THROW(SplitVector({0.5, 0.6}), DomainError);
  EXPECT_THROW(SplitVector({1.5, -0.5}), DomainError);
  EXPECT_NO_THROW(SplitVector({0.2, 0.3, 0.5}));
  EXPECT_NO_THROW(SplitVector({1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

TEST(Bc, DefaultSplits) {
  const auto s = default_splits();
  ASSERT_EQ(s.size(), 101u);
  EXPECT_EQ(s.front().alphas(), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(s.back().alphas(), (std::vector<double>{1.0, 0.0}));
  EXPECT_DOUBLE_EQ(s[50][0], 0.5);
  EXPECT_EQ(default_splits(2).size(), 2u);
  EXPECT_THROW(default_splits(1), DomainError);
}

TEST(Bc, RegionTraceExamples) {
  const BcProblem problem{{kRay, kStrong}, 1e-2};
  const std::vector<SplitVector> splits = {SplitVector({1.0, 0.0}), SplitVector({0.0, 1.0})};
  const auto r = bc_region_trace(problem, splits);
  EXPECT_EQ(r.kind, mac::RegionKind::kBcDual);
  EXPECT_EQ(r.points[0].rates, (std::vector<double>{su::capacity_csit(kRay, 1e-2), 0.0}));
  EXPECT_EQ(r.points[1].rates, (std::vector<double>{0.0, su::capacity_csit(kStrong, 1e-2)}));

  const BcProblem sym{{kRay, kRay}, 1e-3};
  const std::vector<SplitVector> half = {SplitVector({0.5, 0.5})};
  const auto mid = bc_region_trace(sym, half).points[0];
  EXPECT_EQ(mid.rates[0], mid.rates[1]);
  EXPECT_LT(rel(mid.rates[0], oracle::rayleigh_capacity(su::solve_water_level(kRay, 5e-4).lambda)),
            1e-7);

  const std::vector<SplitVector> bad = {SplitVector({0.2, 0.3, 0.5})};
  EXPECT_THROW(bc_region_trace(problem, bad), DomainError);
}

TEST(Bc, WaterLevels) {
  const BcProblem problem{{kRay, kLl}, 1e-3};
  const auto l = bc_water_levels(problem, SplitVector({0.25, 0.75}));
  EXPECT_EQ(l[0], su::solve_water_level(kRay, 2.5e-4).lambda);
  EXPECT_EQ(l[1], su::solve_water_level(kLl, 7.5e-4).lambda);
  const auto off = bc_water_levels(problem, SplitVector({0.0, 1.0}));
  EXPECT_TRUE(std::isinf(off[0]));
}

TEST(Bc, PowerPolicyExamples) {
  const double l1[] = {2.0};
  const double g1[] = {5.0};
  const auto one = bc_power_policy(l1, g1);
  ASSERT_TRUE(one.user.has_value());
  EXPECT_DOUBLE_EQ(one.power, 0.5 - 0.2);

  const double l[] = {2.0, 4.0};
  const double g[] = {3.0, 5.0};
  const auto a = bc_power_policy(l, g);
  ASSERT_TRUE(a.user.has_value());
  EXPECT_EQ(*a.user, 0u);
  EXPECT_DOUBLE_EQ(a.power, 1.0 / 6.0);

  const double weak[] = {1.5, 3.5};
  EXPECT_FALSE(bc_power_policy(l, weak).user.has_value());
  EXPECT_EQ(bc_power_policy(l, weak).power, 0.0);

  // Equal gain-to-level ratios go to the lowest index.
  const double tie[] = {4.0, 8.0};
  EXPECT_EQ(*bc_power_policy(l, tie).user, 0u);

  const double off[] = {INFINITY, 4.0};
  EXPECT_EQ(*bc_power_policy(off, g).user, 1u);

  const double short_gains[] = {1.0};
  EXPECT_THROW(bc_power_policy(l, short_gains), DomainError);
}

TEST(Bc, TimesharingRegion) {
  const BcProblem sym{{kRay, kRay}, 1e-2};
  const std::vector<SplitVector> splits = {SplitVector({1.0, 0.0}), SplitVector({0.5, 0.5})};
  const auto ts = timesharing_region(sym, splits);
  const auto dual = bc_region_trace(sym, splits);
  const double c = su::capacity_csit(kRay, 1e-2);
  EXPECT_EQ(ts.kind, mac::RegionKind::kTimeshare);
  EXPECT_EQ(ts.points[0].rates, dual.points[0].rates);
  EXPECT_EQ(ts.points[1].rates, (std::vector<double>{0.5 * c, 0.5 * c}));
}

TEST(Bc, TimesharingInsideDualRegion) {
  const auto splits = default_splits(41);
  for (const auto& users : {std::vector<FadingModel>{kRay, kRay},
                            std::vector<FadingModel>{kRay, kLl},
                            std::vector<FadingModel>{kStrong, FadingModel::nakagami(2.0)}}) {
    for (double p : {1.0, 1e-3, 1e-6}) {
      const BcProblem problem{users, p};
      const auto ts = timesharing_region(problem, splits);
      const auto dual = bc_region_trace(problem, splits);
      for (std::size_t i = 0; i < splits.size(); ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
          EXPECT_LE(ts.points[i].rates[k], dual.points[i].rates[k] * (1 + 1e-12));
        }
      }
    }
  }
}

TEST(Bc, OptimalityTestRayleigh) {
  const std::vector<double> budgets = {1e-2, 1e-4, 1e-6, 1e-8};
  const auto report = timesharing_optimality_test(kRay, 0.5, budgets);
  ASSERT_EQ(report.rows.size(), budgets.size());
  double prev = INFINITY;
  for (const auto& row : report.rows) {
    EXPECT_GT(row.ratio_capacity, 1.0);
    EXPECT_LT(row.ratio_capacity, prev);
    prev = row.ratio_capacity;
  }
  // 1 + ln 2 / ln(1/P) to leading order.
  EXPECT_NEAR(prev, 1.0 + std::log(2.0) / std::log(1e8), 0.02);
  EXPECT_GE(prev, 1.0);
  EXPECT_LE(prev, 1.06);
  EXPECT_TRUE(report.optimal);
  EXPECT_EQ(report.verdict, "optimal");
}

TEST(Bc, OptimalityTestLogLogistic) {
  const std::vector<double> budgets = {1e-4, 1e-5, 1e-6};
  const auto report = timesharing_optimality_test(kLl, 0.5, budgets);
  EXPECT_LT(rel(report.rows.back().ratio_lambda, std::sqrt(2.0)), 0.02);
  EXPECT_FALSE(report.optimal);
  EXPECT_EQ(report.verdict.rfind("suboptimal", 0), 0u);
  EXPECT_LT(rel(report.limiting_ratio, std::sqrt(2.0)), 0.02);
}

TEST(Bc, OptimalityTestFullShare) {
  const std::vector<double> budgets = {1e-2, 1e-3};
  for (const auto& row : timesharing_optimality_test(kLl, 1.0, budgets).rows) {
    EXPECT_EQ(row.ratio_lambda, 1.0);
    EXPECT_EQ(row.ratio_capacity, 1.0);
  }
}

TEST(Bc, OptimalityTestErrors) {
  const std::vector<double> ok = {1e-2, 1e-3};
  EXPECT_THROW(timesharing_optimality_test(kRay, 0.0, ok), DomainError);
  EXPECT_THROW(timesharing_optimality_test(kRay, 1.5, ok), DomainError);
  EXPECT_THROW(timesharing_optimality_test(kRay, 0.5, {}), DomainError);
  const std::vector<double> rising = {1e-3, 1e-2};
  EXPECT_THROW(timesharing_optimality_test(kRay, 0.5, rising), DomainError);
  const std::vector<double> big = {2.0};
  EXPECT_THROW(timesharing_optimality_test(kRay, 0.5, big), DomainError);
}

TEST(Bc, MonteCarloAccounting) {
  const double p = 1e-3;
  const BcProblem problem{{kRay, kRay}, p};
  const auto lambdas = bc_water_levels(problem, SplitVector({0.5, 0.5}));
  montecarlo::SimConfig cfg;
  cfg.n_samples = 1'000'000;
  cfg.seed = 1;
  const auto rep = montecarlo::simulate(problem.users, montecarlo::policies::bc(lambdas), cfg);
  EXPECT_EQ(rep.multi_active_fraction, 0.0);
  double total = 0.0;
  double total_var = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& u = rep.users[k];
    const double exact_rate = mac::coupled_rate(problem.users, lambdas, k);
    const double exact_power = mac::coupled_power(problem.users, lambdas, k);
    EXPECT_LT(std::abs(u.empirical_rate - exact_rate), 3 * u.standard_error_rate);
    EXPECT_LT(std::abs(u.empirical_power - exact_power), 3 * u.standard_error_power);
    EXPECT_LT(std::abs(u.empirical_rate - su::capacity_csit(kRay, 0.5 * p)),
              3 * u.standard_error_rate);
    total += u.empirical_power;
    total_var += u.standard_error_power * u.standard_error_power;
  }
  EXPECT_LT(std::abs(total - p), 3 * std::sqrt(total_var));
}

}  // namespace
}  // namespace fadecap::bc
