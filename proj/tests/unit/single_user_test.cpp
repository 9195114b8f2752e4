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

#include "fadecap/error.hpp"
#include "fadecap/fading.hpp"
#include "fadecap/single_user.hpp"
#include "oracle.hpp"

namespace fadecap::single_user {
namespace {

const FadingModel kRay = FadingModel::rayleigh();
const FadingModel kLl = FadingModel::log_logistic();
const double kLevels[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};

double rel(double x, double ref) { return std::abs(x / ref - 1.0); }

std::vector<FadingModel> models() {
  return {kRay, FadingModel::nakagami(2.0), FadingModel::rician(3.0), kLl};
}

TEST(SingleUser, ClosedFormsRayleigh) {
  for (double lam : kLevels) {
    EXPECT_LT(rel(g_function(kRay, lam), oracle::rayleigh_g(lam)), 1e-9) << lam;
    EXPECT_LT(rel(capacity_at_level(kRay, lam), oracle::rayleigh_capacity(lam)), 1e-9) << lam;
  }
  EXPECT_NEAR(g_function(kRay, 2.0), 0.018767, 1e-6);
}

TEST(SingleUser, ClosedFormsLogLogistic) {
  for (double lam : kLevels) {
    EXPECT_LT(rel(g_function(kLl, lam), oracle::loglogistic_g(lam)), 1e-9) << lam;
    EXPECT_LT(rel(capacity_at_level(kLl, lam), oracle::loglogistic_capacity(lam)), 1e-9) << lam;
  }
  EXPECT_NEAR(g_function(kLl, 1.0), 0.306853, 1e-6);
}

TEST(SingleUser, GVanishesAtTailCutoff) {
  for (const auto& m : models()) {
    if (!m.gfr_limit().is_infinite()) continue;
    EXPECT_LT(g_function(m, m.quantile(1.0 - 1e-14)), 1e-12) << m.describe();
  }
  EXPECT_LT(g_function(kLl, 1e7), 1e-12);
}

TEST(SingleUser, SolveWaterLevelExamples) {
  EXPECT_NEAR(solve_water_level(kRay, oracle::rayleigh_g(2.0)).lambda, 2.0, 1e-9);
  EXPECT_NEAR(solve_water_level(kRay, 0.018767).lambda, 2.0, 1e-4);
  const double v = solve_water_level(kLl, 1e-6).lambda * std::sqrt(2e-6);
  EXPECT_GE(v, 0.995);
  EXPECT_LE(v, 1.001);
  // Next-order correction 1 - sqrt(2P)/3.
  EXPECT_NEAR(v, 1.0 - std::sqrt(2e-6) / 3.0, 1e-6);
  const auto w = solve_water_level(kRay, 0.3);
  EXPECT_EQ(w.budget, 0.3);
  EXPECT_LT(rel(g_function(kRay, w.lambda), 0.3), 1e-10);
}

TEST(SingleUser, WaterLevelGrowsWithoutBound) {
  for (const auto& m : models()) {
    double prev = 0.0;
    for (int e = 1; e >= -10; --e) {
      const double lam = solve_water_level(m, std::pow(10.0, e)).lambda;
      EXPECT_GT(lam, prev) << m.describe() << " 1e" << e;
      prev = lam;
    }
    EXPECT_GT(prev, 5.0) << m.describe();
  }
}

TEST(SingleUser, SolveErrors) {
  EXPECT_THROW(solve_water_level(kRay, 0.0), DomainError);
  EXPECT_THROW(solve_water_level(kRay, -1.0), DomainError);
  EXPECT_THROW(g_function(kRay, 0.0), DomainError);
}

TEST(SingleUser, CapacityExamples) {
  EXPECT_LT(rel(capacity_csit(kRay, oracle::rayleigh_g(2.0)), oracle::expint_e1(2.0)), 1e-9);
  EXPECT_NEAR(capacity_csit(kRay, oracle::rayleigh_g(2.0)), 0.048901, 1e-6);
  EXPECT_LT(rel(capacity_csit(kLl, oracle::loglogistic_g(2.0)), std::log(1.5)), 1e-9);
  EXPECT_LT(capacity_csit(kRay, 1e-12), 1e-10);
  EXPECT_GT(capacity_csit(kRay, 1e-12), 0.0);
}

TEST(SingleUser, DualRouteEquality) {
  for (const auto& m : models()) {
    for (int e = -8; e <= 0; ++e) {
      const double p = std::pow(10.0, e);
      EXPECT_LT(rel(capacity_via_g_inverse(m, p), capacity_csit(m, p)), 1e-6)
          << m.describe() << " P=" << p;
    }
  }
  EXPECT_LT(rel(capacity_via_g_inverse(kLl, oracle::loglogistic_g(2.0)), std::log(1.5)), 1e-6);
  EXPECT_LT(capacity_via_g_inverse(kRay, 1e-14), 1e-12);
}

TEST(SingleUser, ConcaveIncreasingCapacity) {
  for (const auto& m : models()) {
    double prev = 0.0;
    for (double a = 1e-6; a < 10.0; a *= 3.0) {
      const double b = 3.0 * a;
      const double ca = capacity_csit(m, a);
      const double cb = capacity_csit(m, b);
      EXPECT_GT(ca, prev);
      EXPECT_GE(capacity_csit(m, 0.5 * (a + b)), 0.5 * (ca + cb) - 1e-9 * cb)
          << m.describe() << " a=" << a;
      prev = ca;
    }
  }
}

TEST(SingleUser, LogLogisticAsymptoteExpansion) {
  // C / (2 lambda P) = 1 + 1/(6 lambda) + O(lambda^-2).
  const double p = 1e-6;
  const double lam = solve_water_level(kLl, p).lambda;
  const double ratio = capacity_csit(kLl, p) / asymptotic_capacity(kLl, p);
  EXPECT_NEAR(asymptotic_capacity(kLl, p), 2.0 * lam * p, 1e-18);
  EXPECT_NEAR(ratio - 1.0, 1.0 / (6.0 * lam), 0.05 / (6.0 * lam));
}

TEST(SingleUser, RayleighAsymptoteConvergesFromAbove) {
  double prev = INFINITY;
  for (int e = -3; e >= -8; --e) {
    const double p = std::pow(10.0, e);
    const double r = capacity_csit(kRay, p) / asymptotic_capacity(kRay, p);
    EXPECT_GE(r, 1.0);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1.1);
}

TEST(SingleUser, RayleighLevelTrend) {
  double prev = INFINITY;
  for (double p : {1e-6, 1e-8, 1e-10}) {
    const double big_l = std::log(1.0 / p);
    const double r = solve_water_level(kRay, p).lambda / (big_l - 2.0 * std::log(big_l));
    EXPECT_LT(r, prev);
    EXPECT_GT(r, 1.0);
    prev = r;
  }
  EXPECT_LE(prev, 1.05);
}

TEST(SingleUser, OnOffPolicyShape) {
  for (double p : {1e-1, 1e-4, 1e-7}) {
    const auto ray = onoff_policy_1u(kRay, p);
    EXPECT_EQ(ray.threshold, solve_water_level(kRay, p).lambda);
    EXPECT_EQ(ray.on_power, p / kRay.tail(ray.threshold));
    const auto ll = onoff_policy_1u(kLl, p);
    EXPECT_EQ(ll.threshold, 2.0 * solve_water_level(kLl, p).lambda);
    EXPECT_EQ(ll.on_power, p / kLl.tail(ll.threshold));
  }
  double prev = INFINITY;
  for (int e = -2; e >= -12; e -= 2) {
    const double q = onoff_policy_1u(kRay, std::pow(10.0, e)).on_power;
    EXPECT_LT(q, prev);
    prev = q;
  }
  // Q decays like 1/lambda^2.
  EXPECT_LT(prev, 3e-3);
}

TEST(SingleUser, OnOffRates) {
  for (const auto& m : models()) {
    for (int e = 0; e >= -8; --e) {
      const double p = std::pow(10.0, e);
      EXPECT_LE(onoff_rate_1u(m, p), capacity_csit(m, p)) << m.describe();
    }
  }
  // Not monotone at high budgets; the convergence to 1 is from 1e-2 down.
  double prev = 0.0;
  for (int e = -2; e >= -8; --e) {
    const double p = std::pow(10.0, e);
    const double r = onoff_rate_1u(kRay, p) / capacity_csit(kRay, p);
    EXPECT_GT(r, prev) << p;
    prev = r;
  }
  EXPECT_GE(onoff_rate_1u(kRay, 1e-6) / capacity_csit(kRay, 1e-6), 0.9);
  // Finite GFR limit: tau * Q tends to 2, not 0, so the ratio settles at
  // int_2^inf ln(1+u)/u^2 du = ln(3)/2 + ln(3/2).
  const double ll_limit = 0.5 * std::log(3.0) + std::log(1.5);
  EXPECT_NEAR(onoff_rate_1u(kLl, 1e-8) / capacity_csit(kLl, 1e-8), ll_limit, 1e-4);
  const auto policy = onoff_policy_1u(kRay, 1e-3);
  EXPECT_EQ(onoff_rate(kRay, policy), onoff_rate_1u(kRay, 1e-3));
}

TEST(SingleUser, ReceiverOnlyCsi) {
  EXPECT_LT(rel(capacity_csir(kRay, 1.0), oracle::rayleigh_csir(1.0)), 1e-9);
  EXPECT_NEAR(capacity_csir(kRay, 1.0), 0.596347, 1e-6);
  for (double p : {1e-3, 0.1, 3.0}) {
    EXPECT_LT(rel(capacity_csir(kRay, p), oracle::rayleigh_csir(p)), 1e-9) << p;
  }
  const auto strong = FadingModel::rayleigh(2.0);
  EXPECT_NEAR(capacity_csir(strong, 1e-9) / (2.0 * 1e-9), 1.0, 1e-8);
  for (const auto& m : models()) {
    for (double p : {1e-6, 1e-3, 1.0, 10.0}) {
      EXPECT_LE(capacity_csir(m, p), capacity_csit(m, p)) << m.describe();
    }
  }
}

TEST(SingleUser, Awgn) {
  EXPECT_DOUBLE_EQ(capacity_awgn(1.0, M_E - 1.0), 1.0);
  EXPECT_DOUBLE_EQ(capacity_awgn(1.0, 1.0), std::log(2.0));
  EXPECT_NEAR(capacity_awgn(3.0, 1e-10) / 3e-10, 1.0, 1e-9);
}

// Shape of G on [0.05, 50] and its tail ratio limits.
TEST(SingleUser, GFunctionProperties) {
  std::vector<double> grid;
  for (double lam = 0.05; lam <= 50.0; lam *= 1.25) grid.push_back(lam);
  for (const auto& m : models()) {
    double prev = INFINITY;
    for (double lam : grid) {
      const double g = g_function(m, lam);
      EXPECT_GT(g, 0.0) << m.describe() << " " << lam;
      EXPECT_LT(g, prev) << m.describe() << " " << lam;
      prev = g;
    }
    // lambda G(lambda) -> 0.
    EXPECT_LT(grid.back() * g_function(m, grid.back()),
              0.5 * grid.front() * g_function(m, grid.front()));
  }
  // lambda G / (1 - F) -> 1/(1 + l).
  const double big = grid.back();
  EXPECT_NEAR(big * g_function(kLl, big) / kLl.tail(big), 0.5, 0.02 * 0.5);
  EXPECT_LT(big * g_function(kRay, big) / kRay.tail(big), 0.05);
  double prev = INFINITY;
  for (double lam : {5.0, 10.0, 20.0, 50.0}) {
    const double v = lam * g_function(kRay, lam) / kRay.tail(lam);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(SingleUser, Deterministic) {
  EXPECT_EQ(capacity_csit(kRay, 0.123), capacity_csit(kRay, 0.123));
  EXPECT_EQ(capacity_via_g_inverse(kLl, 1e-5), capacity_via_g_inverse(kLl, 1e-5));
}

}  // namespace
}  // namespace fadecap::single_user
