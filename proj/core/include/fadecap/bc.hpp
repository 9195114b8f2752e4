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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fadecap/fading.hpp"
#include "fadecap/mac.hpp"

// K-user fading broadcast channel at low power, through its dual MAC.
namespace fadecap::bc {

using mac::RatePoint;
using mac::RegionBoundary;
using single_user::SolverOptions;

struct BcProblem {
  std::vector<FadingModel> users;
  double total_budget;

  // Throws DomainError if there are no users or the budget is not positive.
  void validate() const;
};

// Power split across users; alphas are nonnegative and sum to 1 (1e-12).
class SplitVector {
 public:
  explicit SplitVector(std::vector<double> alphas);
  const std::vector<double>& alphas() const { return alphas_; }
  std::size_t size() const { return alphas_.size(); }
  double operator[](std::size_t k) const { return alphas_[k]; }

 private:
  std::vector<double> alphas_;
};

// Evenly spaced alpha_1 grid on [0, 1] for two users (alpha_2 = 1 - alpha_1).
std::vector<SplitVector> default_splits(std::size_t points = 101);

// Points (C_1(a_1 P), ..., C_K(a_K P)), one per split.
RegionBoundary bc_region_trace(const BcProblem& problem,
                               std::span<const SplitVector> splits,
                               const SolverOptions& opts = {});

// Single-user levels G_k(lambda_k) = a_k P; a zero share gives +inf (user
// never served).
std::vector<double> bc_water_levels(const BcProblem& problem,
                                    const SplitVector& split,
                                    const SolverOptions& opts = {});

struct BcAllocation {
  std::optional<std::size_t> user;
  double power = 0.0;
};

// Serve the user maximizing gamma_k / lambda_k (compared cross-multiplied,
// lowest index on ties) if gamma_k > lambda_k, at power 1/lambda_k -
// 1/gamma_k. At most one user is ever active.
BcAllocation bc_power_policy(std::span<const double> lambdas,
                             std::span<const double> gains);

// Points (a_1 C_1(P), ..., a_K C_K(P)).
RegionBoundary timesharing_region(const BcProblem& problem,
                                  std::span<const SplitVector> splits,
                                  const SolverOptions& opts = {});

struct TimesharingRow {
  double budget;
  double ratio_lambda;    // lambda(a P) / lambda(P)
  double ratio_capacity;  // C(a P) / (a C(P))
};

struct TimesharingReport {
  std::vector<TimesharingRow> rows;
  bool optimal;
  // Extrapolated limit of ratio_lambda as P -> 0.
  double limiting_ratio;
  std::string verdict;
};

// Checks whether the water level is asymptotically scale invariant, which
// is when time-sharing reaches the boundary. The limit is extrapolated
// linearly in 1/log(1/P) from the last two budgets.
TimesharingReport timesharing_optimality_test(const FadingModel& model,
                                              double alpha,
                                              std::span<const double> budgets,
                                              const SolverOptions& opts = {});

}  // namespace fadecap::bc
