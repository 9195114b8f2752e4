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

#include "fadecap/mac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fadecap/error.hpp"
#include "fadecap/montecarlo.hpp"

namespace fadecap::mac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// prod_{i != k} F_i(lambda_i h / lambda_k).
double others_below(std::span<const FadingModel> models,
                    std::span<const double> lambdas, std::size_t k, double h) {
  double product = 1.0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (i == k || std::isinf(lambdas[i])) continue;
    product *= models[i].cdf(lambdas[i] / lambdas[k] * h);
  }
  return product;
}

void check_levels(std::span<const FadingModel> models,
                  std::span<const double> lambdas, std::size_t k) {
  if (models.size() != lambdas.size() || k >= models.size()) {
    throw DomainError("water-level vector does not match the user count");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) throw DomainError("water levels must be positive");
  }
  if (std::isinf(lambdas[k])) {
    throw DomainError("user k has an infinite water level");
  }
}

}  // namespace

MacProblem::MacProblem(std::vector<UserChannel> users)
    : users_(std::move(users)) {
  if (users_.empty()) throw DomainError("MAC needs at least one user");
  for (const auto& u : users_) {
    if (!(u.budget > 0.0) || !std::isfinite(u.budget)) {
      throw DomainError("every MAC budget must be positive and finite");
    }
  }
}

std::vector<FadingModel> MacProblem::models() const {
  std::vector<FadingModel> out;
  out.reserve(users_.size());
  for (const auto& u : users_) out.push_back(u.model);
  return out;
}

std::vector<double> MacProblem::budgets() const {
  std::vector<double> out;
  out.reserve(users_.size());
  for (const auto& u : users_) out.push_back(u.budget);
  return out;
}

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kRectangle:
      return "rectangle";
    case RegionKind::kOnOff:
      return "onoff";
    case RegionKind::kTdma:
      return "tdma";
    case RegionKind::kSumRate:
      return "sumrate";
    case RegionKind::kAwgnPentagon:
      return "awgn_pentagon";
    case RegionKind::kCsir:
      return "csir";
    case RegionKind::kBcDual:
      return "bc_dual";
    case RegionKind::kTimeshare:
      return "timeshare";
  }
  return "unknown";
}

double coupled_power(std::span<const FadingModel> models,
                     std::span<const double> lambdas, std::size_t k,
                     const SolverOptions& opts) {
  check_levels(models, lambdas, k);
  const double lk = lambdas[k];
  const FadingModel& mk = models[k];
  auto integrand = [&](double h) {
    return (h - lk) / (lk * h) * others_below(models, lambdas, k, h) * mk.pdf(h);
  };
  return numerics::integrate_semiinf(
      integrand, lk, [&mk](double x) { return mk.tail(x); }, opts.quadrature);
}

double coupled_rate(std::span<const FadingModel> models,
                    std::span<const double> lambdas, std::size_t k,
                    const SolverOptions& opts) {
  check_levels(models, lambdas, k);
  const double lk = lambdas[k];
  const FadingModel& mk = models[k];
  auto integrand = [&](double h) {
    return std::log(h / lk) * others_below(models, lambdas, k, h) * mk.pdf(h);
  };
  return numerics::integrate_semiinf(
      integrand, lk, [&mk](double x) { return mk.tail(x); }, opts.quadrature);
}

double coupled_g(const MacProblem& problem, std::size_t k,
                 std::span<const double> lambdas, const SolverOptions& opts) {
  const auto models = problem.models();
  return coupled_power(models, lambdas, k, opts);
}

MacWaterLevels solve_mac_water_levels(const MacProblem& problem,
                                      const SolverOptions& opts,
                                      const GaussSeidelOptions& gs) {
  const auto models = problem.models();
  const auto budgets = problem.budgets();
  const std::size_t n = models.size();

  MacWaterLevels out;
  out.lambdas.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.lambdas[k] =
        single_user::solve_water_level(models[k], budgets[k], opts).lambda;
  }

  auto residual = [&]() {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double g = coupled_power(models, out.lambdas, k, opts);
      worst = std::max(worst, std::abs(g - budgets[k]) / budgets[k]);
    }
    return worst;
  };

  out.residual = residual();
  while (out.residual >= gs.residual_tol) {
    if (out.sweeps >= gs.max_sweeps) {
      std::ostringstream os;
      os << "MAC water levels did not converge in " << gs.max_sweeps
         << " sweeps (residual " << out.residual << ")";
      throw NonConvergence(os.str());
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> trial = out.lambdas;
      auto g = [&](double x) {
        trial[k] = x;
        return coupled_power(models, trial, k, opts);
      };
      const double lk = out.lambdas[k];
      out.lambdas[k] = numerics::find_root_positive(
          g, budgets[k], {0.5 * lk, 2.0 * lk},
          numerics::Monotonicity::kDecreasing, opts.root);
    }
    ++out.sweeps;
    out.residual = residual();
  }
  return out;
}

RatePoint mac_sumrate_point(const MacProblem& problem,
                            const SolverOptions& opts) {
  const auto levels = solve_mac_water_levels(problem, opts);
  const auto models = problem.models();
  RatePoint point;
  for (std::size_t k = 0; k < models.size(); ++k) {
    point.rates.push_back(coupled_rate(models, levels.lambdas, k, opts));
  }
  return point;
}

RegionBoundary rectangle_region(const MacProblem& problem,
                                const SolverOptions& opts) {
  std::vector<double> corner;
  for (const auto& u : problem.users()) {
    corner.push_back(single_user::capacity_csit(u.model, u.budget, opts));
  }
  RegionBoundary region{RegionKind::kRectangle, {}, {}};
  if (corner.size() == 1) {
    region.points = {RatePoint{{0.0}}, RatePoint{corner}};
  } else if (corner.size() == 2) {
    region.points = {RatePoint{{0.0, corner[1]}}, RatePoint{corner},
                     RatePoint{{corner[0], 0.0}}};
  } else {
    region.points = {RatePoint{corner}};
  }
  return region;
}

std::size_t strongest_user(std::span<const double> gains) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < gains.size(); ++i) {
    if (gains[i] > gains[best]) best = i;
  }
  return best;
}

OnOffMacPolicy onoff_mac_policy(const MacProblem& problem,
                                const SolverOptions& opts) {
  const auto models = problem.models();
  OnOffMacPolicy policy;
  for (std::size_t k = 0; k < models.size(); ++k) {
    const FadingModel& mk = models[k];
    const double budget = problem.user(k).budget;
    // Threshold uses the single-user level, not the coupled one.
    const double lambda =
        single_user::solve_water_level(mk, budget, opts).lambda;
    const double threshold = mk.gfr_limit().threshold_factor() * lambda;
    auto integrand = [&](double g) {
      double product = 1.0;
      for (std::size_t i = 0; i < models.size(); ++i) {
        if (i != k) product *= models[i].cdf(g);
      }
      return product * mk.pdf(g);
    };
    const double activation = numerics::integrate_semiinf(
        integrand, threshold, [&mk](double x) { return mk.tail(x); },
        opts.quadrature);
    const double on_power = budget / activation;
    if (!(activation > 0.0) || !std::isfinite(on_power)) {
      std::ostringstream os;
      os << "activation probability of user " << k << " underflows ("
         << activation << ")";
      throw DegenerateActivation(os.str());
    }
    policy.users.push_back({threshold, on_power, activation});
  }
  return policy;
}

void onoff_mac_powers(const OnOffMacPolicy& policy,
                      std::span<const double> gains, std::span<double> powers) {
  std::fill(powers.begin(), powers.end(), 0.0);
  const std::size_t k = strongest_user(gains);
  if (gains[k] >= policy.users[k].threshold) powers[k] = policy.users[k].on_power;
}

RatePoint onoff_mac_rates(const MacProblem& problem,
                          const OnOffMacPolicy& policy,
                          const SolverOptions& opts) {
  const auto models = problem.models();
  RatePoint point;
  for (std::size_t k = 0; k < models.size(); ++k) {
    const FadingModel& mk = models[k];
    const double q = policy.users[k].on_power;
    auto integrand = [&](double g) {
      double product = 1.0;
      for (std::size_t i = 0; i < models.size(); ++i) {
        if (i != k) product *= models[i].cdf(g);
      }
      return std::log1p(g * q) * product * mk.pdf(g);
    };
    point.rates.push_back(numerics::integrate_semiinf(
        integrand, policy.users[k].threshold,
        [&mk](double x) { return mk.tail(x); }, opts.quadrature));
  }
  return point;
}

RatePoint onoff_mac_rates(const MacProblem& problem,
                          const SolverOptions& opts) {
  return onoff_mac_rates(problem, onoff_mac_policy(problem, opts), opts);
}

TdmaResult tdma_symmetric(const FadingModel& model, std::size_t users,
                          double budget, const SolverOptions& opts) {
  if (users == 0) throw DomainError("TDMA needs at least one user");
  if (!(budget > 0.0)) throw DomainError("TDMA budget must be positive");
  const double k = static_cast<double>(users);
  // gamma_max has cdf F^K; its tail 1 - F^K is formed without cancellation.
  auto max_tail = [&](double x) {
    const double s = model.tail(x);
    if (users == 1) return s;
    return -std::expm1(k * std::log1p(-s));
  };
  auto max_pdf = [&](double x) {
    return k * std::pow(model.cdf(x), k - 1.0) * model.pdf(x);
  };
  auto power_at = [&](double lambda) {
    auto integrand = [&](double h) {
      return (h - lambda) / (lambda * h) * max_pdf(h);
    };
    return numerics::integrate_semiinf(integrand, lambda, max_tail,
                                       opts.quadrature);
  };
  const double total = k * budget;
  const double lambda = numerics::find_root_positive(
      power_at, total, {0.5, 2.0}, numerics::Monotonicity::kDecreasing,
      opts.root);
  auto rate_integrand = [&](double h) {
    return std::log(h / lambda) * max_pdf(h);
  };
  const double sum_rate = numerics::integrate_semiinf(rate_integrand, lambda,
                                                      max_tail, opts.quadrature);
  return {lambda, sum_rate / k, power_at(lambda) / total};
}

RegionBoundary sepup_region(const RegionBoundary& boundary,
                            std::span<const double> budgets) {
  for (double b : budgets) {
    if (!(b > 0.0)) throw DomainError("SEPUP budgets must be positive");
  }
  RegionBoundary out{boundary.kind, {}, {}};
  for (const auto& p : boundary.points) {
    if (p.rates.size() != budgets.size()) {
      throw DomainError("SEPUP budget vector does not match the rate vector");
    }
    RatePoint scaled;
    for (std::size_t k = 0; k < budgets.size(); ++k) {
      scaled.rates.push_back(p.rates[k] / budgets[k]);
    }
    out.points.push_back(std::move(scaled));
  }
  return out;
}

std::vector<RatePoint> pentagon_vertices(double c1, double c2, double c12) {
  return {RatePoint{{0.0, 0.0}}, RatePoint{{c1, 0.0}},
          RatePoint{{c1, c12 - c1}}, RatePoint{{c12 - c2, c2}},
          RatePoint{{0.0, c2}}};
}

RegionBoundary awgn_mac_region(std::span<const double> mean_gains,
                               std::span<const double> budgets) {
  const std::size_t n = mean_gains.size();
  if (n == 0 || budgets.size() != n) {
    throw DomainError("AWGN MAC needs matching, nonempty gain and budget lists");
  }
  if (n > 31) throw DomainError("AWGN MAC subset enumeration limited to 31 users");
  for (std::size_t k = 0; k < n; ++k) {
    if (!(mean_gains[k] > 0.0) || !(budgets[k] > 0.0)) {
      throw DomainError("AWGN MAC gains and budgets must be positive");
    }
  }
  RegionBoundary region{RegionKind::kAwgnPentagon, {}, {}};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double snr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) snr += mean_gains[k] * budgets[k];
    }
    region.constraints.push_back({mask, std::log1p(snr), 0.0});
  }
  if (n == 1) {
    region.points = {RatePoint{{0.0}}, RatePoint{{region.constraints[0].bound}}};
  } else if (n == 2) {
    region.points =
        pentagon_vertices(region.constraints[0].bound,
                          region.constraints[1].bound, region.constraints[2].bound);
  }
  return region;
}

RegionBoundary csir_mac_region(const MacProblem& problem,
                               const SolverOptions& opts,
                               const CsirOptions& mc) {
  const auto models = problem.models();
  const auto budgets = problem.budgets();
  const std::size_t n = models.size();
  RegionBoundary region{RegionKind::kCsir, {}, {}};
  if (n == 1) {
    const double c = single_user::capacity_csir(models[0], budgets[0], opts);
    region.constraints.push_back({1u, c, 0.0});
    region.points = {RatePoint{{0.0}}, RatePoint{{c}}};
    return region;
  }
  if (n == 2) {
    const double c1 = single_user::capacity_csir(models[0], budgets[0], opts);
    const double c2 = single_user::capacity_csir(models[1], budgets[1], opts);
    SolverOptions inner = opts;
    inner.quadrature.rel_tol = std::min(opts.quadrature.rel_tol, 1e-10);
    SolverOptions outer = opts;
    outer.quadrature.rel_tol = std::max(opts.quadrature.rel_tol, 1e-8);
    auto outer_integrand = [&](double g1) {
      const double base = g1 * budgets[0];
      auto inner_integrand = [&](double g2) {
        return std::log1p(base + g2 * budgets[1]) * models[1].pdf(g2);
      };
      const double e = numerics::integrate_semiinf(
          inner_integrand, 0.0, [&](double x) { return models[1].tail(x); },
          inner.quadrature);
      return e * models[0].pdf(g1);
    };
    const double c12 = numerics::integrate_semiinf(
        outer_integrand, 0.0, [&](double x) { return models[0].tail(x); },
        outer.quadrature);
    region.constraints = {{1u, c1, 0.0}, {2u, c2, 0.0}, {3u, c12, 0.0}};
    region.points = pentagon_vertices(c1, c2, c12);
    return region;
  }
  if (n > 31) throw DomainError("CSI-R subset enumeration limited to 31 users");

  const std::uint32_t masks = (1u << n) - 1u;
  std::vector<double> sum(masks, 0.0);
  std::vector<double> sum_sq(masks, 0.0);
  const montecarlo::CounterRng rng(mc.seed);
  std::vector<double> u(n);
  std::vector<double> gains(n);
  for (std::uint64_t s = 0; s < mc.samples; ++s) {
    rng.uniforms(s, u);
    for (std::size_t k = 0; k < n; ++k) gains[k] = models[k].sample(u[k]);
    for (std::uint32_t mask = 1; mask <= masks; ++mask) {
      double snr = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) snr += gains[k] * budgets[k];
      }
      const double v = std::log1p(snr);
      sum[mask - 1] += v;
      sum_sq[mask - 1] += v * v;
    }
  }
  const double count = static_cast<double>(mc.samples);
  for (std::uint32_t mask = 1; mask <= masks; ++mask) {
    const double mean = sum[mask - 1] / count;
    const double var =
        std::max(0.0, sum_sq[mask - 1] / count - mean * mean) * count / (count - 1.0);
    region.constraints.push_back({mask, mean, std::sqrt(var / count)});
  }
  return region;
}

namespace {

bool point_in(const RegionBoundary& outer, const RatePoint& p, double tol) {
  for (double r : p.rates) {
    if (r < -tol) return false;
  }
  if (!outer.constraints.empty()) {
    for (const auto& c : outer.constraints) {
      double s = 0.0;
      for (std::size_t k = 0; k < p.rates.size(); ++k) {
        if (c.mask & (1u << k)) s += p.rates[k];
      }
      if (s > c.bound + tol) return false;
    }
    return true;
  }
  for (const auto& q : outer.points) {
    bool dominated = q.rates.size() == p.rates.size();
    for (std::size_t k = 0; dominated && k < p.rates.size(); ++k) {
      dominated = p.rates[k] <= q.rates[k] + tol;
    }
    if (dominated) return true;
  }
  return false;
}

}  // namespace

bool region_contains(const RegionBoundary& outer, const RegionBoundary& inner,
                     double tol) {
  for (const auto& p : inner.points) {
    if (!point_in(outer, p, tol)) return false;
  }
  if (inner.points.empty() && !outer.constraints.empty()) {
    // Constraint-only regions: compare bounds mask by mask.
    for (const auto& c : inner.constraints) {
      auto it = std::find_if(outer.constraints.begin(), outer.constraints.end(),
                             [&](const SubsetConstraint& o) { return o.mask == c.mask; });
      if (it == outer.constraints.end() || c.bound > it->bound + tol) return false;
    }
  }
  return true;
}

}  // namespace fadecap::mac
