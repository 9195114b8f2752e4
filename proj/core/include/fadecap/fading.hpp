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

#include <string>
#include <string_view>
#include <variant>

namespace fadecap {

// Limit of the generalized failure rate t f(t) / (1 - F(t)) as t -> inf.
// Infinity is carried as an explicit flag so that 1/l never sees a float
// sentinel.
class GfrLimit {
 public:
  static GfrLimit finite(double value);
  static GfrLimit infinite() { return GfrLimit(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Only meaningful when finite.
  double value() const { return value_; }
  // 1/l with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
  // (1 + 1/l), the on-off threshold factor.
  double threshold_factor() const { return 1.0 + reciprocal(); }

 private:
  GfrLimit(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_;
  bool infinite_;
};

enum class FadingKind { kRayleigh, kNakagami, kRician, kLogLogistic };

std::string_view to_string(FadingKind kind);

// Distribution of the channel power gain gamma = |h|^2. Immutable; every
// accessor is a pure function of its argument.
class FadingModel {
 public:
  // Exponential power gain with mean `mean_power`.
  static FadingModel rayleigh(double mean_power = 1.0);
  // Gamma(shape m, mean `mean_power`) power gain; m >= 0.5.
  static FadingModel nakagami(double m = 1.0, double mean_power = 1.0);
  // Noncentral chi-square (2 dof) power gain with K-factor `k_factor` >= 0.
  static FadingModel rician(double k_factor = 0.0, double mean_power = 1.0);
  // f(x) = 1/(1+x)^2, no parameters; infinite mean.
  static FadingModel log_logistic();

  FadingKind kind() const;
  // Mean power gain; +inf for log-logistic.
  double mean() const;

  double pdf(double x) const;
  double cdf(double x) const;
  // 1 - F(x), computed directly so that far-tail values keep full precision.
  double tail(double x) const;
  // F^-1(p) for p in (0, 1).
  double quantile(double p) const;

  // t f(t) / (1 - F(t)). Throws DomainError for t <= 0 or when the tail has
  // underflowed to zero.
  double gfr(double t) const;
  GfrLimit gfr_limit() const;

  // Inverse-cdf draw; u must lie in (0, 1).
  double sample(double u) const;

  // Draw conditioned on gamma >= threshold: F^-1(F(threshold) + u (1 -
  // F(threshold))), evaluated through the tail for precision.
  double sample_above(double threshold, double u) const;

  std::string describe() const;

  struct Rayleigh {
    double mean;
  };
  struct Nakagami {
    double m;
    double mean;
  };
  struct Rician {
    double k;
    double mean;
  };
  struct LogLogistic {};
  using Params = std::variant<Rayleigh, Nakagami, Rician, LogLogistic>;

  const Params& params() const { return params_; }

 private:
  explicit FadingModel(Params p) : params_(p) {}
  Params params_;
};

// dB to linear power ratio, 10^(db/10).
double db_to_linear(double db);
double linear_to_db(double linear);

// First-order Marcum Q-function Q_1(a, b), by the Poisson-weighted
// incomplete-gamma series to relative tolerance 1e-12.
double marcum_q1(double a, double b);

}  // namespace fadecap
