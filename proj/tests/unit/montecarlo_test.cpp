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

#include <array>
#include <cmath>
#include <cstring>
#include <vector>

#include "fadecap/error.hpp"
#include "fadecap/mac.hpp"
#include "fadecap/montecarlo.hpp"
#include "fadecap/single_user.hpp"

namespace fadecap::montecarlo {
namespace {

namespace su = fadecap::single_user;

const FadingModel kRay = FadingModel::rayleigh();

SimConfig config(std::uint64_t n, std::uint64_t seed = 3) {
  SimConfig c;
  c.n_samples = n;
  c.seed = seed;
  return c;
}

bool same_report(const SimReport& a, const SimReport& b) {
  if (a.users.size() != b.users.size()) return false;
  for (std::size_t k = 0; k < a.users.size(); ++k) {
    if (std::memcmp(&a.users[k], &b.users[k], sizeof(UserStats)) != 0) return false;
  }
  return a.multi_active_fraction == b.multi_active_fraction && a.warnings == b.warnings;
}

TEST(Philox, KnownAnswers) {
  using W = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (W{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu}),
            (W{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u}),
            (W{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, OpenUnitIntervalAndDeterminism) {
  const CounterRng a(42);
  const CounterRng b(42);
  const CounterRng c(43);
  std::array<double, 5> x{};
  std::array<double, 5> y{};
  std::array<double, 5> z{};
  double sum = 0.0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    a.uniforms(i, x);
    b.uniforms(i, y);
    c.uniforms(i, z);
    EXPECT_EQ(x, y);
    EXPECT_NE(x, z);
    for (double v : x) {
      ASSERT_GT(v, 0.0);
      ASSERT_LT(v, 1.0);
      sum += v;
    }
  }
  EXPECT_NEAR(sum / (5 * 20000), 0.5, 0.005);
  // A prefix of a longer draw is the shorter draw.
  std::array<double, 3> s{};
  a.uniforms(7, s);
  a.uniforms(7, x);
  EXPECT_EQ(s[0], x[0]);
  EXPECT_EQ(s[2], x[2]);
  // High index bits reach the counter.
  a.uniforms(1ull << 40, s);
  a.uniforms(0, y);
  EXPECT_NE(s[0], y[0]);
}

TEST(Simulate, ConfigValidation) {
  const FadingModel models[] = {kRay};
  EXPECT_THROW(simulate(models, policies::zero(), config(9999)), DomainError);
  SimConfig bad = config(50000);
  bad.batch = 30000;
  EXPECT_THROW(simulate(models, policies::zero(), bad), DomainError);
  bad.batch = 0;
  EXPECT_THROW(simulate(models, policies::zero(), bad), DomainError);
  EXPECT_THROW(simulate({}, policies::zero(), config(10000)), DomainError);
}

TEST(Simulate, ZeroPolicy) {
  const FadingModel models[] = {kRay, FadingModel::log_logistic()};
  const auto rep = simulate(models, policies::zero(), config(20000));
  for (const auto& u : rep.users) {
    EXPECT_EQ(u.empirical_rate, 0.0);
    EXPECT_EQ(u.empirical_power, 0.0);
    EXPECT_EQ(u.standard_error_rate, 0.0);
    EXPECT_EQ(u.standard_error_power, 0.0);
    EXPECT_EQ(u.activation_fraction, 0.0);
  }
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(Simulate, NegativePowerRejected) {
  const FadingModel models[] = {kRay};
  const PowerPolicy negative = [](std::span<const double>, std::span<double> p) { p[0] = -1.0; };
  EXPECT_THROW(simulate(models, negative, config(10000)), PolicyError);
  const PowerPolicy nan = [](std::span<const double>, std::span<double> p) { p[0] = NAN; };
  EXPECT_THROW(simulate(models, nan, config(10000)), PolicyError);
}

TEST(Simulate, ConstantPowerMatchesCsir) {
  const FadingModel models[] = {kRay};
  const PowerPolicy constant = [](std::span<const double>, std::span<double> p) { p[0] = 0.5; };
  const auto rep = simulate(models, constant, config(200000));
  const auto& u = rep.users[0];
  EXPECT_EQ(u.empirical_power, 0.5);
  EXPECT_EQ(u.activation_fraction, 1.0);
  EXPECT_LT(std::abs(u.empirical_rate - su::capacity_csir(kRay, 0.5)), 4 * u.standard_error_rate);
}

TEST(Simulate, SingleUserOnOff) {
  const double p = 1e-3;
  const auto policy = su::onoff_policy_1u(kRay, p);
  const FadingModel models[] = {kRay};
  const auto rep = simulate(models, policies::onoff_single_user(policy), config(1'000'000));
  const auto& u = rep.users[0];
  EXPECT_GT(u.standard_error_rate, 0.0);
  EXPECT_LT(std::abs(u.empirical_rate - su::onoff_rate(kRay, policy)), 3 * u.standard_error_rate);
  EXPECT_LT(std::abs(u.empirical_power - p), 3 * u.standard_error_power);
  EXPECT_LT(std::abs(u.activation_fraction - kRay.tail(policy.threshold)),
            4 * std::sqrt(kRay.tail(policy.threshold) / 1e6));
}

TEST(Simulate, MacOnOff) {
  const double p = 1e-3;
  const mac::MacProblem problem({{kRay, p}, {kRay, p}});
  const auto policy = mac::onoff_mac_policy(problem);
  const auto exact = mac::onoff_mac_rates(problem, policy);
  const auto models = problem.models();
  const auto rep = simulate(models, policies::onoff_mac(policy), config(1'000'000));
  EXPECT_EQ(rep.multi_active_fraction, 0.0);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& u = rep.users[k];
    EXPECT_LT(std::abs(u.empirical_rate - exact.rates[k]), 3 * u.standard_error_rate);
    EXPECT_LT(std::abs(u.empirical_power - p), 3 * u.standard_error_power);
  }
}

TEST(Simulate, MultiActiveCounted) {
  const FadingModel models[] = {kRay, kRay};
  const PowerPolicy both = [](std::span<const double>, std::span<double> p) {
    p[0] = 1.0;
    p[1] = 1.0;
  };
  EXPECT_EQ(simulate(models, both, config(10000)).multi_active_fraction, 1.0);
}

TEST(Simulate, DeterministicAcrossWorkers) {
  const mac::MacProblem problem({{kRay, 1e-2}, {FadingModel::rician(2.0), 1e-2}});
  const auto policy = policies::onoff_mac(mac::onoff_mac_policy(problem));
  const auto models = problem.models();
  SimConfig cfg = config(100000, 99);
  cfg.batch = 5000;
  cfg.workers = 1;
  const auto one = simulate(models, policy, cfg);
  for (unsigned w : {2u, 4u, 0u}) {
    cfg.workers = w;
    EXPECT_TRUE(same_report(one, simulate(models, policy, cfg))) << w;
  }
  cfg.seed = 100;
  EXPECT_FALSE(same_report(one, simulate(models, policy, cfg)));
}

TEST(Simulate, StandardErrorScaling) {
  const auto policy = su::onoff_policy_1u(kRay, 1e-2);
  const FadingModel models[] = {kRay};
  const auto small = simulate(models, policies::onoff_single_user(policy), config(100000));
  const auto large = simulate(models, policies::onoff_single_user(policy), config(400000));
  const double ratio_rate = small.users[0].standard_error_rate / large.users[0].standard_error_rate;
  const double ratio_power = small.users[0].standard_error_power / large.users[0].standard_error_power;
  EXPECT_GE(ratio_rate, 1.6);
  EXPECT_LE(ratio_rate, 2.4);
  EXPECT_GE(ratio_power, 1.6);
  EXPECT_LE(ratio_power, 2.4);
}

TEST(Simulate, RareEventWarning) {
  const auto policy = su::onoff_policy_1u(kRay, 1e-7);
  ASSERT_LT(kRay.tail(policy.threshold), kRareEventThreshold);
  const FadingModel models[] = {kRay};
  const auto rep = simulate(models, policies::onoff_single_user(policy), config(1'000'000));
  ASSERT_GT(rep.users[0].activation_fraction, 0.0);
  ASSERT_EQ(rep.warnings.size(), 1u);
  EXPECT_NE(rep.warnings[0].find("conditional"), std::string::npos);

  const auto common = su::onoff_policy_1u(kRay, 1e-2);
  EXPECT_TRUE(
      simulate(models, policies::onoff_single_user(common), config(100000)).warnings.empty());
}

TEST(ConditionalSampler, MatchesQuadrature) {
  for (double p : {1e-3, 1e-6, 1e-9}) {
    const auto policy = su::onoff_policy_1u(kRay, p);
    const auto rep = simulate_onoff_conditional(kRay, policy, config(100000));
    const auto& u = rep.users[0];
    const double exact = su::onoff_rate(kRay, policy);
    EXPECT_GT(u.standard_error_rate, 0.0);
    EXPECT_LT(std::abs(u.empirical_rate - exact), 3 * u.standard_error_rate) << p;
    EXPECT_LT(u.standard_error_rate / exact, 1e-2);
    EXPECT_NEAR(u.empirical_power / p, 1.0, 1e-12);
    EXPECT_EQ(u.activation_fraction, kRay.tail(policy.threshold));
  }
}

TEST(ConditionalSampler, DegenerateThreshold) {
  const su::OnOffPolicy1U far{1e4, 1.0};
  EXPECT_THROW(simulate_onoff_conditional(kRay, far, config(10000)), DegenerateActivation);
}

}  // namespace
}  // namespace fadecap::montecarlo
