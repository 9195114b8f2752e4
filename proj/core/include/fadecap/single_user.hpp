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

#include "fadecap/fading.hpp"
#include "fadecap/numerics.hpp"

// Point-to-point fading channel with full CSI at both ends. All rates are in
// nats per channel use, powers are normalized to unit noise.
namespace fadecap::single_user {

struct SolverOptions {
  numerics::QuadratureSpec quadrature{};
  numerics::RootSpec root{};
};

// Water level (power price) lambda together with the budget it meets.
struct WaterLevel {
  double lambda;
  double budget;
};

// Threshold policy: transmit `on_power` whenever gamma >= threshold.
struct OnOffPolicy1U {
  double threshold;
  double on_power;
};

// G(lambda) = E[(1/lambda - 1/gamma)^+], the average power spent by
// water-filling at level lambda. Strictly decreasing, tends to 0.
double g_function(const FadingModel& model, double lambda,
                  const SolverOptions& opts = {});

// E[log(gamma/lambda)^+], the water-filling rate at level lambda.
double capacity_at_level(const FadingModel& model, double lambda,
                         const SolverOptions& opts = {});

// Solves G(lambda) = budget. The bracket starts at [0.5, 2] and grows
// geometrically in both directions.
WaterLevel solve_water_level(const FadingModel& model, double budget,
                             const SolverOptions& opts = {});

double capacity_csit(const FadingModel& model, double budget,
                     const SolverOptions& opts = {});

// C(P) = integral over (0, P] of G^-1(t) dt, computed without ever forming
// the rate integral. The range below delta = 1e-9 P is replaced by a local
// power-law fit of G^-1.
double capacity_via_g_inverse(const FadingModel& model, double budget,
                              const SolverOptions& opts = {});

// Low-power law (1 + 1/l) lambda(P) P.
double asymptotic_capacity(const FadingModel& model, double budget,
                           const SolverOptions& opts = {});

OnOffPolicy1U onoff_policy_1u(const FadingModel& model, double budget,
                              const SolverOptions& opts = {});

// Rate of a given on-off policy, E[log(1 + gamma Q) ; gamma >= tau].
double onoff_rate(const FadingModel& model, const OnOffPolicy1U& policy,
                  const SolverOptions& opts = {});

double onoff_rate_1u(const FadingModel& model, double budget,
                     const SolverOptions& opts = {});

// Receiver-only CSI: E[log(1 + gamma P)].
double capacity_csir(const FadingModel& model, double budget,
                     const SolverOptions& opts = {});

// log(1 + gain * P).
double capacity_awgn(double mean_gain, double budget);

}  // namespace fadecap::single_user
