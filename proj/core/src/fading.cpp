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

#include "fadecap/fading.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fadecap/error.hpp"
#include "fadecap/numerics.hpp"

namespace fadecap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive_finite(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

// I0(z) e^{-z}.
double bessel_i0_scaled(double z) {
  if (z < 700.0) return boost::math::cyl_bessel_i(0, z) * std::exp(-z);
  // Hankel expansion; at z >= 700 four terms are far below 1e-16.
  const double r = 1.0 / (8.0 * z);
  const double series = 1.0 + r * (1.0 + r * (9.0 / 2.0 + r * (225.0 / 6.0)));
  return series / std::sqrt(2.0 * M_PI * z);
}

// Poisson(mu)-weighted regularized incomplete gamma sum, sum_j w_j P(j+1, y)
// (lower) or sum_j w_j Q(j+1, y) (upper): the two halves of the noncentral
// chi-square (2 dof) distribution. Per-term version, valid everywhere.
double poisson_gamma_sum_direct(double mu, double y, bool upper) {
  constexpr double kRelTol = 1e-12;
  double sum = 0.0;
  const double log_mu = std::log(mu);
  const int j_max = static_cast<int>(mu + 60.0 * std::sqrt(mu) + 400.0);
  for (int j = 0; j <= j_max; ++j) {
    const double w = std::exp(-mu + j * log_mu - std::lgamma(j + 1.0));
    const double a = j + 1.0;
    // P(a, y) decreases and Q(a, y) increases with a, so the current factor
    // bounds every later one for the lower sum and 1 bounds them for the
    // upper sum.
    const double factor =
        upper ? boost::math::gamma_q(a, y) : boost::math::gamma_p(a, y);
    sum += w * factor;
    if (j > mu) {
      const double ratio = mu / (j + 2.0);
      const double rest_weight = w * ratio / (1.0 - ratio);
      const double rest = upper ? rest_weight : rest_weight * factor;
      if (rest <= kRelTol * sum || rest < std::numeric_limits<double>::min()) {
        break;
      }
    }
  }
  return sum;
}

// Upper sum by the recurrence Q(j+2, y) = Q(j+1, y) + y^(j+1) e^-y / (j+1)!.
// The remaining Poisson mass bounds the truncation error; it must fall below
// 1e-17 absolutely (so 1 - sum is usable) and 1e-13 relative to the sum.
double poisson_gamma_upper_recursive(double mu, double y) {
  double w = std::exp(-mu);
  double d = std::exp(-y);
  double q = d;
  double sum = 0.0;
  for (int j = 0;; ++j) {
    sum += w * q;
    const double ratio = mu / (j + 2.0);
    const double rest = w * ratio / (1.0 - ratio);
    if (j > mu && ((rest < 1e-17 && rest <= 1e-13 * sum) ||
                   rest < std::numeric_limits<double>::min())) {
      break;
    }
    w *= mu / (j + 1.0);
    d *= y / (j + 1.0);
    q += d;
  }
  return std::min(sum, 1.0);
}

double poisson_gamma_sum(double mu, double y, bool upper) {
  if (y <= 0.0) return upper ? 1.0 : 0.0;
  if (mu == 0.0) return upper ? std::exp(-y) : -std::expm1(-y);
  // The recurrence needs e^-mu and e^-y to stay normal.
  if (mu > 600.0 || y > 600.0) {
    const double u = poisson_gamma_sum_direct(mu, y, true);
    if (upper || u > 0.5) return upper ? u : poisson_gamma_sum_direct(mu, y, false);
    return 1.0 - u;
  }
  const double u = poisson_gamma_upper_recursive(mu, y);
  if (upper) return u;
  // 1 - u loses at most three digits here.
  if (u <= 0.999) return 1.0 - u;
  return poisson_gamma_sum_direct(mu, y, false);
}

// Solves tail(x) = q on (0, inf) through log tail, which is close to linear
// in x for light tails.
double invert_tail_numerically(const FadingModel& model, double q,
                               double scale) {
  numerics::RootSpec spec;
  spec.rel_tol = 1e-13;
  const double target = std::log(q);
  auto g = [&model](double x) {
    const double t = model.tail(x);
    return t > 0.0 ? std::log(t) : -std::numeric_limits<double>::max();
  };
  return numerics::find_root_positive(g, target, {0.5 * scale, 2.0 * scale},
                                      numerics::Monotonicity::kDecreasing, spec);
}

double invert_cdf_numerically(const FadingModel& model, double p,
                              double scale) {
  numerics::RootSpec spec;
  spec.rel_tol = 1e-13;
  auto g = [&model](double x) { return model.cdf(x); };
  return numerics::find_root_positive(g, p, {0.5 * scale, 2.0 * scale},
                                      numerics::Monotonicity::kIncreasing, spec);
}

// x with tail(x) = q.
double inverse_tail(const FadingModel& model, double q) {
  return std::visit(
      Overloaded{
          [&](const FadingModel::Rayleigh& r) { return -r.mean * std::log(q); },
          [&](const FadingModel::Nakagami& n) {
            const double scale = n.mean / n.m;
            return q <= 0.5 ? boost::math::gamma_q_inv(n.m, q) * scale
                            : boost::math::gamma_p_inv(n.m, 1.0 - q) * scale;
          },
          [&](const FadingModel::Rician& r) {
            return q <= 0.5 ? invert_tail_numerically(model, q, r.mean)
                            : invert_cdf_numerically(model, 1.0 - q, r.mean);
          },
          [&](const FadingModel::LogLogistic&) { return 1.0 / q - 1.0; },
      },
      model.params());
}

}  // namespace

GfrLimit GfrLimit::finite(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("finite GFR limit must be positive");
  }
  return GfrLimit(value, false);
}

std::string_view to_string(FadingKind kind) {
  switch (kind) {
    case FadingKind::kRayleigh:
      return "rayleigh";
    case FadingKind::kNakagami:
      return "nakagami_m";
    case FadingKind::kRician:
      return "rician";
    case FadingKind::kLogLogistic:
      return "log_logistic";
  }
  return "unknown";
}

FadingModel FadingModel::rayleigh(double mean_power) {
  require_positive_finite(mean_power, "rayleigh mean power");
  return FadingModel(Rayleigh{mean_power});
}

FadingModel FadingModel::nakagami(double m, double mean_power) {
  require_positive_finite(mean_power, "nakagami mean power");
  if (!(m >= 0.5) || !std::isfinite(m)) {
    throw DomainError("nakagami shape m must be >= 0.5");
  }
  return FadingModel(Nakagami{m, mean_power});
}

FadingModel FadingModel::rician(double k_factor, double mean_power) {
  require_positive_finite(mean_power, "rician mean power");
  if (!(k_factor >= 0.0) || !std::isfinite(k_factor)) {
    throw DomainError("rician K-factor must be >= 0");
  }
  return FadingModel(Rician{k_factor, mean_power});
}

FadingModel FadingModel::log_logistic() { return FadingModel(LogLogistic{}); }

FadingKind FadingModel::kind() const {
  return std::visit(
      Overloaded{
          [](const Rayleigh&) { return FadingKind::kRayleigh; },
          [](const Nakagami&) { return FadingKind::kNakagami; },
          [](const Rician&) { return FadingKind::kRician; },
          [](const LogLogistic&) { return FadingKind::kLogLogistic; },
      },
      params_);
}

double FadingModel::mean() const {
  return std::visit(
      Overloaded{
          [](const Rayleigh& r) { return r.mean; },
          [](const Nakagami& n) { return n.mean; },
          [](const Rician& r) { return r.mean; },
          [](const LogLogistic&) { return kInf; },
      },
      params_);
}

double FadingModel::pdf(double x) const {
  if (x < 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [x](const Rayleigh& r) { return std::exp(-x / r.mean) / r.mean; },
          [x](const Nakagami& n) {
            const double scale = n.mean / n.m;
            if (x == 0.0) {
              if (n.m < 1.0) return kInf;
              return n.m == 1.0 ? 1.0 / scale : 0.0;
            }
            return boost::math::gamma_p_derivative(n.m, x / scale) / scale;
          },
          [x](const Rician& r) {
            const double c = (r.k + 1.0) / r.mean;
            const double z = 2.0 * std::sqrt(r.k * c * x);
            return c * std::exp(-r.k - c * x + z) * bessel_i0_scaled(z);
          },
          [x](const LogLogistic&) { return 1.0 / ((1.0 + x) * (1.0 + x)); },
      },
      params_);
}

double FadingModel::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [x](const Rayleigh& r) { return -std::expm1(-x / r.mean); },
          [x](const Nakagami& n) {
            return boost::math::gamma_p(n.m, x * n.m / n.mean);
          },
          [x](const Rician& r) {
            return poisson_gamma_sum(r.k, (r.k + 1.0) * x / r.mean, false);
          },
          [x](const LogLogistic&) { return x / (1.0 + x); },
      },
      params_);
}

double FadingModel::tail(double x) const {
  if (x <= 0.0) return 1.0;
  return std::visit(
      Overloaded{
          [x](const Rayleigh& r) { return std::exp(-x / r.mean); },
          [x](const Nakagami& n) {
            return boost::math::gamma_q(n.m, x * n.m / n.mean);
          },
          [x](const Rician& r) {
            return poisson_gamma_sum(r.k, (r.k + 1.0) * x / r.mean, true);
          },
          [x](const LogLogistic&) { return 1.0 / (1.0 + x); },
      },
      params_);
}

double FadingModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile probability must lie in (0, 1)");
  }
  return std::visit(
      Overloaded{
          [p](const Rayleigh& r) { return -r.mean * std::log1p(-p); },
          [p](const Nakagami& n) {
            const double scale = n.mean / n.m;
            return p <= 0.5 ? boost::math::gamma_p_inv(n.m, p) * scale
                            : boost::math::gamma_q_inv(n.m, 1.0 - p) * scale;
          },
          [this, p](const Rician& r) {
            return p <= 0.5 ? invert_cdf_numerically(*this, p, r.mean)
                            : invert_tail_numerically(*this, 1.0 - p, r.mean);
          },
          [p](const LogLogistic&) { return p / (1.0 - p); },
      },
      params_);
}

double FadingModel::gfr(double t) const {
  if (!(t > 0.0)) throw DomainError("gfr needs t > 0");
  const double s = tail(t);
  if (!(s > 0.0)) {
    std::ostringstream os;
    os << "tail of " << describe() << " underflows at t = " << t;
    throw DomainError(os.str());
  }
  return t * pdf(t) / s;
}

GfrLimit FadingModel::gfr_limit() const {
  if (kind() == FadingKind::kLogLogistic) return GfrLimit::finite(1.0);
  return GfrLimit::infinite();
}

double FadingModel::sample(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("sample needs u in (0, 1)");
  return quantile(u);
}

double FadingModel::sample_above(double threshold, double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("sample_above needs u in (0, 1)");
  }
  const double mass = tail(threshold);
  if (!(mass > 0.0)) throw DomainError("no probability mass above threshold");
  const double x = inverse_tail(*this, mass * (1.0 - u));
  return std::max(x, threshold);
}

std::string FadingModel::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&os](const Rayleigh& r) { os << "rayleigh(mean=" << r.mean << ")"; },
                 [&os](const Nakagami& n) {
                   os << "nakagami_m(m=" << n.m << ", mean=" << n.mean << ")";
                 },
                 [&os](const Rician& r) {
                   os << "rician(K=" << r.k << ", mean=" << r.mean << ")";
                 },
                 [&os](const LogLogistic&) { os << "log_logistic"; },
             },
             params_);
  return os.str();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double marcum_q1(double a, double b) {
  if (a < 0.0 || b < 0.0) throw DomainError("marcum_q1 needs a, b >= 0");
  return poisson_gamma_sum(0.5 * a * a, 0.5 * b * b, true);
}

}  // namespace fadecap
