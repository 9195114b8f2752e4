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
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fadecap/fading.hpp"
#include "fadecap/single_user.hpp"

// K-user fading multiple-access channel with full CSI. Users fade
// independently; nothing here models joint statistics.
namespace fadecap::mac {

using single_user::SolverOptions;

struct UserChannel {
  FadingModel model;
  double budget;
};

class MacProblem {
 public:
  // Throws DomainError if empty or if any budget is not positive.
  explicit MacProblem(std::vector<UserChannel> users);

  std::size_t size() const { return users_.size(); }
  const UserChannel& user(std::size_t k) const { return users_.at(k); }
  const std::vector<UserChannel>& users() const { return users_; }
  std::vector<FadingModel> models() const;
  std::vector<double> budgets() const;

 private:
  std::vector<UserChannel> users_;
};

struct MacWaterLevels {
  std::vector<double> lambdas;
  int sweeps = 0;
  double residual = 0.0;  // max_k |G_k - P_k| / P_k
};

struct RatePoint {
  std::vector<double> rates;
};

enum class RegionKind {
  kRectangle,
  kOnOff,
  kTdma,
  kSumRate,
  kAwgnPentagon,
  kCsir,
  kBcDual,
  kTimeshare,
};

std::string_view to_string(RegionKind kind);

// sum_{k in mask} R_k <= bound.
struct SubsetConstraint {
  std::uint32_t mask;
  double bound;
  double standard_error = 0.0;  // nonzero only for Monte Carlo bounds
};

// Ordered boundary trace; the region is the downward closure of `points`
// intersected with `constraints` (when present).
struct RegionBoundary {
  RegionKind kind;
  std::vector<RatePoint> points;
  std::vector<SubsetConstraint> constraints;
};

// G_k(x_1..x_K) = int_{x_k}^inf (1/x_k - 1/h) prod_{i!=k} F_i(x_i h / x_k)
// f_k(h) dh. A level of +inf marks a user that never transmits (F_i = 1).
double coupled_power(std::span<const FadingModel> models,
                     std::span<const double> lambdas, std::size_t k,
                     const SolverOptions& opts = {});

// Rate counterpart: int log(h/x_k) prod F_i(x_i h / x_k) f_k(h) dh.
double coupled_rate(std::span<const FadingModel> models,
                    std::span<const double> lambdas, std::size_t k,
                    const SolverOptions& opts = {});

double coupled_g(const MacProblem& problem, std::size_t k,
                 std::span<const double> lambdas,
                 const SolverOptions& opts = {});

struct GaussSeidelOptions {
  double residual_tol = 1e-10;
  int max_sweeps = 200;
};

// Gauss-Seidel over users, each step a scalar root solve of G_k = P_k with
// the other levels frozen, seeded from the single-user levels. Throws
// NonConvergence once max_sweeps is spent.
MacWaterLevels solve_mac_water_levels(const MacProblem& problem,
                                      const SolverOptions& opts = {},
                                      const GaussSeidelOptions& gs = {});

// Sum-rate maximizing point of the capacity region.
RatePoint mac_sumrate_point(const MacProblem& problem,
                            const SolverOptions& opts = {});

// Single-user capacities C_k(P_k) as the corner of a box.
RegionBoundary rectangle_region(const MacProblem& problem,
                                const SolverOptions& opts = {});

struct UserOnOff {
  double threshold;
  double on_power;
  double activation_probability;
};

struct OnOffMacPolicy {
  std::vector<UserOnOff> users;
};

// Index of the largest gain, lowest index on ties.
std::size_t strongest_user(std::span<const double> gains);

OnOffMacPolicy onoff_mac_policy(const MacProblem& problem,
                                const SolverOptions& opts = {});

// Instantaneous powers of the on-off MAC policy: only the strongest user,
// and only if it clears its own threshold.
void onoff_mac_powers(const OnOffMacPolicy& policy,
                      std::span<const double> gains, std::span<double> powers);

// Rates of the on-off policy, one quadrature per user.
RatePoint onoff_mac_rates(const MacProblem& problem,
                          const SolverOptions& opts = {});
RatePoint onoff_mac_rates(const MacProblem& problem,
                          const OnOffMacPolicy& policy,
                          const SolverOptions& opts = {});

struct TdmaResult {
  double lambda;
  double rate_per_user;
  // E[P(gamma_max)] / (K P); 1 by construction up to solver tolerance.
  double power_ratio;
};

// Symmetric TDMA: water-filling on the strongest of K i.i.d. users with
// total average power K * budget.
TdmaResult tdma_symmetric(const FadingModel& model, std::size_t users,
                          double budget, const SolverOptions& opts = {});

// Spectral efficiency per unit power: every point divided componentwise by
// the budgets. Constraint lists are not carried over.
RegionBoundary sepup_region(const RegionBoundary& boundary,
                            std::span<const double> budgets);

// Non-fading Gaussian MAC with gains `mean_gains`. K = 1 gives the interval,
// K = 2 the five pentagon vertices from the origin; K > 2 gives only the
// subset constraints.
RegionBoundary awgn_mac_region(std::span<const double> mean_gains,
                               std::span<const double> budgets);

struct CsirOptions {
  std::uint64_t samples = 200000;
  std::uint64_t seed = 0x5eed;
};

// Receiver-only CSI region, sum_{S} R <= E[log(1 + sum_{S} gamma_k P_k)].
// Nested quadrature for K <= 2, Monte Carlo (with standard errors) above.
RegionBoundary csir_mac_region(const MacProblem& problem,
                               const SolverOptions& opts = {},
                               const CsirOptions& mc = {});

// Traces the K = 2 polymatroid from its three bounds; vertex order is
// (0,0), (C1,0), (C1,C12-C1), (C12-C2,C2), (0,C2).
std::vector<RatePoint> pentagon_vertices(double c1, double c2, double c12);

// True if every constraint and every corner of `inner` is dominated by
// `outer` (rectangles and polymatroids only), with slack `tol`.
bool region_contains(const RegionBoundary& outer, const RegionBoundary& inner,
                     double tol = 0.0);

}  // namespace fadecap::mac
