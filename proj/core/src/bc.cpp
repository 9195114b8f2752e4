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

#include "fadecap/bc.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fadecap/error.hpp"

namespace fadecap::bc {

void BcProblem::validate() const {
  if (users.empty()) throw DomainError("BC needs at least one user");
  if (!(total_budget > 0.0) || !std::isfinite(total_budget)) {
    throw DomainError("BC total budget must be positive and finite");
  }
}

SplitVector::SplitVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw DomainError("split vector is empty");
  double sum = 0.0;
  for (double a : alphas_) {
    if (!(a >= 0.0)) throw DomainError("split coefficients must be >= 0");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "split coefficients sum to " << sum << ", not 1";
    throw DomainError(os.str());
  }
}

std::vector<SplitVector> default_splits(std::size_t points) {
  if (points < 2) throw DomainError("split grid needs at least 2 points");
  std::vector<SplitVector> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(points - 1);
    out.emplace_back(std::vector<double>{a, 1.0 - a});
  }
  return out;
}

namespace {

void check_split(const BcProblem& problem, const SplitVector& split) {
  if (split.size() != problem.users.size()) {
    throw DomainError("split length does not match the user count");
  }
}

}  // namespace

RegionBoundary bc_region_trace(const BcProblem& problem,
                               std::span<const SplitVector> splits,
                               const SolverOptions& opts) {
  problem.validate();
  RegionBoundary region{mac::RegionKind::kBcDual, {}, {}};
  for (const auto& split : splits) {
    check_split(problem, split);
    RatePoint p;
    for (std::size_t k = 0; k < split.size(); ++k) {
      const double share = split[k] * problem.total_budget;
      p.rates.push_back(share > 0.0 ? single_user::capacity_csit(
                                          problem.users[k], share, opts)
                                    : 0.0);
    }
    region.points.push_back(std::move(p));
  }
  return region;
}

std::vector<double> bc_water_levels(const BcProblem& problem,
                                    const SplitVector& split,
                                    const SolverOptions& opts) {
  problem.validate();
  check_split(problem, split);
  std::vector<double> lambdas;
  for (std::size_t k = 0; k < split.size(); ++k) {
    const double share = split[k] * problem.total_budget;
    lambdas.push_back(
        share > 0.0
            ? single_user::solve_water_level(problem.users[k], share, opts).lambda
            : std::numeric_limits<double>::infinity());
  }
  return lambdas;
}

BcAllocation bc_power_policy(std::span<const double> lambdas,
                             std::span<const double> gains) {
  if (lambdas.size() != gains.size() || lambdas.empty()) {
    throw DomainError("BC policy needs matching level and gain vectors");
  }
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < gains.size(); ++k) {
    if (std::isinf(lambdas[k])) continue;
    // gamma_k / lambda_k > gamma_best / lambda_best, without dividing.
    if (!best || gains[k] * lambdas[*best] > gains[*best] * lambdas[k]) best = k;
  }
  if (!best || !(gains[*best] > lambdas[*best])) return {};
  const std::size_t k = *best;
  return {k, 1.0 / lambdas[k] - 1.0 / gains[k]};
}

RegionBoundary timesharing_region(const BcProblem& problem,
                                  std::span<const SplitVector> splits,
                                  const SolverOptions& opts) {
  problem.validate();
  std::vector<double> full;
  for (const auto& m : problem.users) {
    full.push_back(single_user::capacity_csit(m, problem.total_budget, opts));
  }
  RegionBoundary region{mac::RegionKind::kTimeshare, {}, {}};
  for (const auto& split : splits) {
    check_split(problem, split);
    RatePoint p;
    for (std::size_t k = 0; k < split.size(); ++k) {
      p.rates.push_back(split[k] * full[k]);
    }
    region.points.push_back(std::move(p));
  }
  return region;
}

TimesharingReport timesharing_optimality_test(const FadingModel& model,
                                              double alpha,
                                              std::span<const double> budgets,
                                              const SolverOptions& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("time-sharing fraction must lie in (0, 1]");
  }
  if (budgets.empty()) throw DomainError("budget sequence is empty");
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (!(budgets[i] > 0.0 && budgets[i] < 1.0)) {
      throw DomainError("time-sharing test budgets must lie in (0, 1)");
    }
    if (i > 0 && !(budgets[i] < budgets[i - 1])) {
      throw DomainError("time-sharing test budgets must strictly decrease");
    }
  }
  TimesharingReport report{};
  for (double p : budgets) {
    TimesharingRow row{p, 1.0, 1.0};
    if (alpha < 1.0) {
      const double lam_full = single_user::solve_water_level(model, p, opts).lambda;
      const double lam_part =
          single_user::solve_water_level(model, alpha * p, opts).lambda;
      row.ratio_lambda = lam_part / lam_full;
      row.ratio_capacity = single_user::capacity_at_level(model, lam_part, opts) /
                           (alpha * single_user::capacity_at_level(model, lam_full, opts));
    }
    report.rows.push_back(row);
  }
  if (report.rows.size() == 1) {
    report.limiting_ratio = report.rows.back().ratio_lambda;
  } else {
    const auto& a = report.rows[report.rows.size() - 2];
    const auto& b = report.rows.back();
    const double xa = 1.0 / std::log(1.0 / a.budget);
    const double xb = 1.0 / std::log(1.0 / b.budget);
    const double slope = (b.ratio_lambda - a.ratio_lambda) / (xb - xa);
    report.limiting_ratio = b.ratio_lambda - slope * xb;
  }
  report.optimal = std::abs(report.limiting_ratio - 1.0) < 0.1;
  std::ostringstream os;
  if (report.optimal) {
    os << "optimal";
  } else {
    os << "suboptimal (limiting lambda ratio " << report.limiting_ratio << ")";
  }
  report.verdict = os.str();
  return report;
}

}  // namespace fadecap::bc
