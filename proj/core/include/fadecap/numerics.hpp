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

#include <functional>

namespace fadecap::numerics {

using ScalarFn = std::function<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  // Upper tail mass (relative to the mass above the lower limit) below which
  // the integration range is truncated.
  double tail_mass_cutoff = 1e-14;
  int max_subdivisions = 4000;

  // Throws DomainError on out-of-range fields.
  void validate() const;
};

struct RootSpec {
  double rel_tol = 1e-11;
  // Floor for the residual test when the target is (near) zero.
  double abs_floor = 1e-300;
  int max_iterations = 200;
  double bracket_expansion_factor = 2.0;
  // Expansion steps allowed on each side before BracketFailure.
  int max_expansions = 2000;

  void validate() const;
};

enum class Monotonicity { kIncreasing, kDecreasing };

struct Bracket {
  double lo;
  double hi;
};

// Adaptive G7/K15 quadrature of f over the finite interval [a, b].
double integrate(const ScalarFn& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integral of f over [lower, inf). `weight_tail` is the complementary cdf of
// the density that weights f; the range is cut at the first T with
// weight_tail(T) < tail_mass_cutoff * weight_tail(lower), and the initial
// panels are laid out where the tail mass drops by a constant factor.
//
// Throws DomainError if lower < 0, NonConvergence if the subdivision budget
// runs out.
double integrate_semiinf(const ScalarFn& f, double lower,
                         const ScalarFn& weight_tail,
                         const QuadratureSpec& spec = {});

// Smallest abscissa (to ~1e-6 relative) with tail(T) < threshold, for a
// nonincreasing tail. Searches upward from `start`.
double tail_cutoff_abscissa(const ScalarFn& tail, double start,
                            double threshold);

// Solves g(x) = target for strictly monotone g. The bracket is widened
// geometrically (for positive brackets) or additively until the target is
// straddled, then refined by Illinois false position with bisection
// safeguards. The result satisfies |g(x) - target| <= rel_tol *
// max(|target|, abs_floor), or the bracket has collapsed to adjacent doubles.
//
// If target equals g at a bracket endpoint, that endpoint is returned.
// Throws BracketFailure or NonConvergence.
double find_root_monotone(const ScalarFn& g, double target,
                          Bracket initial_bracket, Monotonicity direction,
                          const RootSpec& spec = {});

// As above, restricted to x > 0 and with multiplicative bracket expansion,
// which is the natural form for water levels and quantiles.
double find_root_positive(const ScalarFn& g, double target,
                          Bracket initial_bracket, Monotonicity direction,
                          const RootSpec& spec = {});

}  // namespace fadecap::numerics
