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
#include <string>
#include <vector>

namespace fadecap::acceptance {

struct Band {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Every threshold the battery checks against. Defaults are the published
// acceptance values; the CLI can override any of them from JSON.
struct Tolerances {
  double closed_form_rel_tol = 1e-7;
  double dual_route_rel_tol = 1e-6;
  Band loglogistic_asymptote{0.999, 1.0};
  Band water_level_law{0.995, 1.001};
  double rayleigh_level_ratio_max = 1.05;
  Band eta_0db{0.87, 0.93};
  double eta_m10db_min = 0.93;
  Band eta_m30db{0.93, 0.97};
  double sumrate_ratio_min = 0.98;
  double equivalence_tol = 0.01;
  Band timeshare_capacity{1.0, 1.06};
  double timeshare_lambda_tol = 0.02;
  double mc_sigmas = 3.0;
  std::uint64_t mc_samples = 1'000'000;
  double mc_seconds_max = 60.0;
  std::uint64_t seed = 1;
};

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

inline constexpr int kCriterionCount = 12;

std::string criterion_name(int id);

// Throws std::out_of_range for an id outside 1..12.
CriterionResult run_criterion(int id, const Tolerances& tol);

// Runs the listed criteria (all when empty) in id order, reporting each
// result through `on_result` as soon as it is known.
std::vector<CriterionResult> run_battery(
    const Tolerances& tol, const std::vector<int>& only = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fadecap::acceptance
