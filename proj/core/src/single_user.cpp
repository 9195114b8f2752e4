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

#include "fadecap/single_user.hpp"

#include <cmath>
#include <sstream>

#include "fadecap/error.hpp"

namespace fadecap::single_user {
namespace {

void require_budget(double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    std::ostringstream os;
    os << "budget must be positive and finite, got " << budget;
    throw DomainError(os.str());
  }
}

void require_level(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("water level must be positive and finite");
  }
}

numerics::ScalarFn tail_of(const FadingModel& model) {
  return [&model](double x) { return model.tail(x); };
}

}  // namespace

double g_function(const FadingModel& model, double lambda,
                  const SolverOptions& opts) {
  require_level(lambda);
  auto integrand = [&model, lambda](double h) {
    return (h - lambda) / (lambda * h) * model.pdf(h);
  };
  return numerics::integrate_semiinf(integrand, lambda, tail_of(model),
                                     opts.quadrature);
}

double capacity_at_level(const FadingModel& model, double lambda,
                         const SolverOptions& opts) {
  require_level(lambda);
  auto integrand = [&model, lambda](double h) {
    return std::log(h / lambda) * model.pdf(h);
  };
  return numerics::integrate_semiinf(integrand, lambda, tail_of(model),
                                     opts.quadrature);
}

WaterLevel solve_water_level(const FadingModel& model, double budget,
                             const SolverOptions& opts) {
  require_budget(budget);
  auto g = [&](double lambda) { return g_function(model, lambda, opts); };
  const double lambda = numerics::find_root_positive(
      g, budget, {0.5, 2.0}, numerics::Monotonicity::kDecreasing, opts.root);
  return {lambda, budget};
}

double capacity_csit(const FadingModel& model, double budget,
                     const SolverOptions& opts) {
  const WaterLevel level = solve_water_level(model, budget, opts);
  return capacity_at_level(model, level.lambda, opts);
}

double capacity_via_g_inverse(const FadingModel& model, double budget,
                              const SolverOptions& opts) {
  require_budget(budget);
  auto g_inverse = [&](double t) {
    return solve_water_level(model, t, opts).lambda;
  };
  const double delta = budget * 1e-9;

  // t = e^u flattens the logarithmic (or power-law) blow-up of G^-1 at 0.
  auto integrand = [&](double u) {
    const double t = std::exp(u);
    return g_inverse(t) * t;
  };
  const double body = numerics::integrate(integrand, std::log(delta),
                                          std::log(budget), opts.quadrature);

  // Head over (0, delta]: G^-1(t) ~ c t^-a locally, so the integral is
  // delta G^-1(delta) / (1 - a).
  const double at_delta = g_inverse(delta);
  const double at_half = g_inverse(0.5 * delta);
  const double exponent = std::log(at_half / at_delta) / std::log(2.0);
  if (!(exponent < 1.0)) {
    throw NonConvergence("G^-1 is not integrable near zero for this model");
  }
  const double head = delta * at_delta / (1.0 - exponent);
  return body + head;
}

double asymptotic_capacity(const FadingModel& model, double budget,
                           const SolverOptions& opts) {
  const WaterLevel level = solve_water_level(model, budget, opts);
  return model.gfr_limit().threshold_factor() * level.lambda * budget;
}

OnOffPolicy1U onoff_policy_1u(const FadingModel& model, double budget,
                              const SolverOptions& opts) {
  const WaterLevel level = solve_water_level(model, budget, opts);
  const double threshold = model.gfr_limit().threshold_factor() * level.lambda;
  const double active = model.tail(threshold);
  if (!(active > 0.0)) {
    throw DegenerateActivation("activation probability underflows to zero");
  }
  return {threshold, budget / active};
}

double onoff_rate(const FadingModel& model, const OnOffPolicy1U& policy,
                  const SolverOptions& opts) {
  auto integrand = [&model, q = policy.on_power](double h) {
    return std::log1p(h * q) * model.pdf(h);
  };
  return numerics::integrate_semiinf(integrand, policy.threshold,
                                     tail_of(model), opts.quadrature);
}

double onoff_rate_1u(const FadingModel& model, double budget,
                     const SolverOptions& opts) {
  return onoff_rate(model, onoff_policy_1u(model, budget, opts), opts);
}

double capacity_csir(const FadingModel& model, double budget,
                     const SolverOptions& opts) {
  require_budget(budget);
  auto integrand = [&model, budget](double h) {
    return std::log1p(h * budget) * model.pdf(h);
  };
  return numerics::integrate_semiinf(integrand, 0.0, tail_of(model),
                                     opts.quadrature);
}

double capacity_awgn(double mean_gain, double budget) {
  require_budget(budget);
  if (!(mean_gain > 0.0)) throw DomainError("AWGN gain must be positive");
  return std::log1p(mean_gain * budget);
}

}  // namespace fadecap::single_user
