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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fadecap/fading.hpp"
#include "fadecap/mac.hpp"
#include "fadecap/single_user.hpp"

namespace fadecap::montecarlo {

// Philox4x32-10 block cipher (Salmon et al., SC'11), the counter-based
// generator behind every random draw in the simulator.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Uniform variates in (0, 1) addressed by (seed, sample index, slot). The
// same address always yields the same value, whatever thread asks.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  // Fills `out` with the uniforms of sample `index`, two per Philox block.
  void uniforms(std::uint64_t index, std::span<double> out) const;

 private:
  std::array<std::uint32_t, 2> key_;
};

// Maps a K-vector of channel gains to K transmit powers (written into the
// second argument, which arrives zeroed).
using PowerPolicy =
    std::function<void(std::span<const double> gains, std::span<double> powers)>;

struct SimConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t batch = 10'000;
  // Worker threads; 0 uses the hardware count. Never changes the result.
  unsigned workers = 1;

  // n_samples >= 1e4 and batch divides n_samples.
  void validate() const;
};

struct UserStats {
  double empirical_rate = 0.0;
  double empirical_power = 0.0;
  double standard_error_rate = 0.0;
  double standard_error_power = 0.0;
  double activation_fraction = 0.0;
};

struct SimReport {
  std::vector<UserStats> users;
  // Fraction of states in which two or more users transmitted.
  double multi_active_fraction = 0.0;
  std::vector<std::string> warnings;
};

// Below this activation probability a warning suggests conditional
// sampling.
inline constexpr double kRareEventThreshold = 1e-4;

// Draws n_samples independent gain vectors by inverse-cdf sampling and
// averages log(1 + gamma_k p_k) and p_k. Throws PolicyError on a negative or
// non-finite power.
SimReport simulate(std::span<const FadingModel> models,
                   const PowerPolicy& policy, const SimConfig& config);

// Single-user on-off with gamma drawn only from the tail beyond the
// threshold and reweighted by its mass; the power is exact by construction.
SimReport simulate_onoff_conditional(const FadingModel& model,
                                     const single_user::OnOffPolicy1U& policy,
                                     const SimConfig& config);

namespace policies {

PowerPolicy zero();
PowerPolicy onoff_single_user(single_user::OnOffPolicy1U policy);
PowerPolicy onoff_mac(mac::OnOffMacPolicy policy);
// BC allocation at the given single-user water levels.
PowerPolicy bc(std::vector<double> lambdas);

}  // namespace policies

}  // namespace fadecap::montecarlo
