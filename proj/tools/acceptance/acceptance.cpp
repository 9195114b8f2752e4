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

#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fadecap/bc.hpp"
#include "fadecap/error.hpp"
#include "fadecap/fading.hpp"
#include "fadecap/mac.hpp"
#include "fadecap/montecarlo.hpp"
#include "fadecap/single_user.hpp"
#include "oracle.hpp"

namespace fadecap::acceptance {
namespace {

namespace su = fadecap::single_user;

const double kLambdaGrid[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};

// Collects requirement failures; the first failure message leads the detail.
class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && failure_.empty()) failure_ = what;
    ok_ = ok_ && cond;
  }
  std::ostringstream& note() { return note_; }
  bool ok() const { return ok_; }
  std::string detail() const {
    if (ok_) return note_.str();
    return failure_ + "; " + note_.str();
  }

 private:
  bool ok_ = true;
  std::string failure_;
  std::ostringstream note_;
};

double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

mac::MacProblem symmetric(const FadingModel& m, double budget, std::size_t k = 2) {
  return mac::MacProblem(std::vector<mac::UserChannel>(k, {m, budget}));
}

void closed_form(Check& c, const FadingModel& model, double (*g_ref)(double),
                 double (*c_ref)(double), double tol) {
  double max_c = 0.0;
  double max_g = 0.0;
  double max_route = 0.0;
  for (double lam : kLambdaGrid) {
    max_c = std::max(max_c, rel_err(su::capacity_at_level(model, lam), c_ref(lam)));
    max_g = std::max(max_g, rel_err(su::g_function(model, lam), g_ref(lam)));
    // Through the root solver: the budget whose level is lam.
    max_route = std::max(max_route, rel_err(su::capacity_csit(model, g_ref(lam)), c_ref(lam)));
  }
  c.note() << "max rel err C=" << max_c << " G=" << max_g
           << " C(P(lambda))=" << max_route;
  c.require(max_c < tol, "capacity off the closed form");
  c.require(max_g < tol, "G off the closed form");
  c.require(max_route < tol, "capacity at solved level off the closed form");
}

Check c1(const Tolerances& t) {
  Check c;
  closed_form(c, FadingModel::rayleigh(), oracle::rayleigh_g, oracle::rayleigh_capacity,
              t.closed_form_rel_tol);
  return c;
}

Check c2(const Tolerances& t) {
  Check c;
  closed_form(c, FadingModel::log_logistic(), oracle::loglogistic_g,
              oracle::loglogistic_capacity, t.closed_form_rel_tol);
  return c;
}

Check c3(const Tolerances& t) {
  Check c;
  double worst = 0.0;
  double worst_p = 0.0;
  for (const auto& model : {FadingModel::rayleigh(), FadingModel::log_logistic()}) {
    for (int e = -8; e <= -1; ++e) {
      const double p = std::pow(10.0, e);
      const double err = rel_err(su::capacity_via_g_inverse(model, p), su::capacity_csit(model, p));
      if (err > worst) {
        worst = err;
        worst_p = p;
      }
    }
  }
  c.note() << "max rel diff " << worst << " at P=" << worst_p;
  c.require(worst < t.dual_route_rel_tol, "routes disagree");
  return c;
}

Check c4(const Tolerances& t) {
  Check c;
  const auto ll = FadingModel::log_logistic();
  const double ratio = su::capacity_csit(ll, 1e-6) / su::asymptotic_capacity(ll, 1e-6);
  c.note() << "log-logistic C/(2 lambda P) at 1e-6 = " << ratio;
  c.require(t.loglogistic_asymptote.contains(ratio),
            "log-logistic ratio outside [" + std::to_string(t.loglogistic_asymptote.lo) +
                ", " + std::to_string(t.loglogistic_asymptote.hi) + "]");
  // lambda P / C approaches 1 from below as the budget shrinks.
  const auto ray = FadingModel::rayleigh();
  double prev = 0.0;
  c.note() << "; rayleigh lambda P/C:";
  for (int e = -3; e >= -8; --e) {
    const double p = std::pow(10.0, e);
    const double r = su::asymptotic_capacity(ray, p) / su::capacity_csit(ray, p);
    c.note() << " " << r;
    c.require(r > prev && r <= 1.0, "rayleigh ratio not increasing toward 1");
    prev = r;
  }
  return c;
}

Check c5(const Tolerances& t) {
  Check c;
  const double p = 1e-6;
  const double v = su::solve_water_level(FadingModel::log_logistic(), p).lambda * std::sqrt(2.0 * p);
  c.note() << "lambda sqrt(2P) = " << v;
  c.require(t.water_level_law.contains(v), "water level off the square-root law");
  return c;
}

Check c6(const Tolerances& t) {
  Check c;
  const auto ray = FadingModel::rayleigh();
  double prev = INFINITY;
  double last = 0.0;
  c.note() << "lambda/(L - 2 ln L):";
  for (double p : {1e-6, 1e-8, 1e-10}) {
    const double big_l = std::log(1.0 / p);
    const double r = su::solve_water_level(ray, p).lambda / (big_l - 2.0 * std::log(big_l));
    c.note() << " " << r;
    c.require(r < prev, "ratio not strictly decreasing");
    prev = r;
    last = r;
  }
  c.require(last <= t.rayleigh_level_ratio_max, "ratio too large at 1e-10");
  return c;
}

Check c7(const Tolerances& t) {
  Check c;
  const auto ray = FadingModel::rayleigh();
  double prev = 0.0;
  c.note() << "eta:";
  for (int db = 0; db >= -60; db -= 5) {
    const double p = db_to_linear(db);
    const auto rates = mac::onoff_mac_rates(symmetric(ray, p));
    const double cap = su::capacity_csit(ray, p);
    const double eta = std::min(rates.rates[0], rates.rates[1]) / cap;
    c.note() << " " << db << "dB=" << eta;
    // Quadrature noise is far below 1e-9 of eta.
    c.require(eta >= prev * (1.0 - 1e-9), "eta decreases at " + std::to_string(db) + " dB");
    prev = eta;
    if (db == 0) c.require(t.eta_0db.contains(eta), "eta at 0 dB out of band");
    if (db == -10) c.require(eta >= t.eta_m10db_min, "eta at -10 dB too small");
    if (db == -30) c.require(t.eta_m30db.contains(eta), "eta at -30 dB out of band");
  }
  return c;
}

Check c8(const Tolerances& t) {
  Check c;
  const auto ray = FadingModel::rayleigh();
  std::vector<double> prev{0.0, 0.0};
  c.note() << "R*/C:";
  for (double p : {1.0, 1e-2, 1e-4, 1e-6}) {
    const auto problem = symmetric(ray, p);
    const auto levels = mac::solve_mac_water_levels(problem);
    const auto point = mac::mac_sumrate_point(problem);
    const double cap = su::capacity_csit(ray, p);
    for (std::size_t k = 0; k < 2; ++k) {
      const double r = point.rates[k] / cap;
      c.require(r >= prev[k], "ratio decreases at P=" + std::to_string(p));
      prev[k] = r;
    }
    c.note() << " " << prev[0];
    if (p == 1e-6) {
      c.require(prev[0] >= t.sumrate_ratio_min && prev[1] >= t.sumrate_ratio_min,
                "ratio below threshold at 1e-6");
      double worst = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        const double eq = mac::coupled_g(problem, k, levels.lambdas) /
                          su::g_function(ray, levels.lambdas[k]);
        worst = std::max(worst, std::abs(eq - 1.0));
      }
      c.note() << "; |coupled G/G - 1| at 1e-6 = " << worst;
      c.require(worst < t.equivalence_tol, "coupled G not equivalent to G");
    }
  }
  return c;
}

Check c9(const Tolerances&) {
  Check c;
  const auto ray = FadingModel::rayleigh();
  const std::vector<std::vector<FadingModel>> cases = {
      {ray, ray},
      {ray, FadingModel::rayleigh(db_to_linear(3.0))},
      {ray, FadingModel::log_logistic()},
      {FadingModel::nakagami(2.0), ray, FadingModel::rician(3.0)},
  };
  int n = 0;
  for (const auto& models : cases) {
    std::vector<double> prev(models.size(), 0.0);
    for (int e = 0; e >= -4; --e) {
      std::vector<mac::UserChannel> users;
      for (const auto& m : models) users.push_back({m, std::pow(10.0, e)});
      const auto levels = mac::solve_mac_water_levels(mac::MacProblem(users));
      for (std::size_t k = 0; k < models.size(); ++k) {
        c.require(levels.lambdas[k] > prev[k], "level not increasing in case " + std::to_string(n));
        prev[k] = levels.lambdas[k];
      }
    }
    c.note() << (n ? "; " : "levels at 1e-4:") << " case " << n << ":";
    for (double l : prev) c.note() << " " << l;
    ++n;
  }
  return c;
}

Check c10(const Tolerances& t) {
  Check c;
  const double ray_budgets[] = {1e-4, 1e-6, 1e-8, 1e-10};
  const auto ray = bc::timesharing_optimality_test(FadingModel::rayleigh(), 0.5, ray_budgets);
  double prev = INFINITY;
  c.note() << "rayleigh ratio_capacity:";
  for (const auto& row : ray.rows) {
    c.note() << " " << row.ratio_capacity;
    c.require(row.ratio_capacity < prev, "rayleigh ratio_capacity not decreasing");
    prev = row.ratio_capacity;
    if (row.budget == 1e-8) {
      c.require(t.timeshare_capacity.contains(row.ratio_capacity),
                "rayleigh ratio_capacity at 1e-8 out of band");
    }
  }
  const double ll_budgets[] = {1e-2, 1e-4, 1e-6};
  const auto ll = bc::timesharing_optimality_test(FadingModel::log_logistic(), 0.5, ll_budgets);
  const double r = ll.rows.back().ratio_lambda;
  c.note() << "; log-logistic ratio_lambda at 1e-6 = " << r << "; verdicts: " << ray.verdict
           << " / " << ll.verdict;
  c.require(std::abs(r / std::sqrt(2.0) - 1.0) <= t.timeshare_lambda_tol,
            "log-logistic ratio_lambda not near sqrt 2");
  c.require(ray.optimal && !ll.optimal, "time-sharing verdicts wrong");
  return c;
}

void within_sigmas(Check& c, const char* what, double emp, double se, double exact,
                   double sigmas) {
  const double z = se > 0.0 ? std::abs(emp - exact) / se : (emp == exact ? 0.0 : INFINITY);
  c.note() << " " << what << " z=" << z;
  c.require(z <= sigmas, std::string(what) + " outside the confidence band");
}

Check c11(const Tolerances& t) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  montecarlo::SimConfig cfg;
  cfg.n_samples = t.mc_samples;
  cfg.seed = t.seed;
  const auto ray = FadingModel::rayleigh();
  const double p = 1e-3;

  {
    const auto policy = su::onoff_policy_1u(ray, p);
    const FadingModel models[] = {ray};
    const auto rep = montecarlo::simulate(models, montecarlo::policies::onoff_single_user(policy), cfg);
    const auto& u = rep.users[0];
    c.note() << "single:";
    within_sigmas(c, "rate", u.empirical_rate, u.standard_error_rate, su::onoff_rate(ray, policy), t.mc_sigmas);
    within_sigmas(c, "power", u.empirical_power, u.standard_error_power, p, t.mc_sigmas);
  }
  {
    const auto problem = symmetric(ray, p);
    const auto policy = mac::onoff_mac_policy(problem);
    const auto exact = mac::onoff_mac_rates(problem, policy);
    const auto models = problem.models();
    const auto rep = montecarlo::simulate(models, montecarlo::policies::onoff_mac(policy), cfg);
    c.note() << "; mac:";
    for (std::size_t k = 0; k < 2; ++k) {
      within_sigmas(c, "rate", rep.users[k].empirical_rate, rep.users[k].standard_error_rate,
                    exact.rates[k], t.mc_sigmas);
      within_sigmas(c, "power", rep.users[k].empirical_power, rep.users[k].standard_error_power,
                    p, t.mc_sigmas);
    }
  }
  {
    const bc::BcProblem problem{{ray, ray}, p};
    const auto lambdas = bc::bc_water_levels(problem, bc::SplitVector({0.5, 0.5}));
    const auto rep = montecarlo::simulate(problem.users, montecarlo::policies::bc(lambdas), cfg);
    c.note() << "; bc:";
    for (std::size_t k = 0; k < 2; ++k) {
      // The policy integrals at the decoupled levels.
      const double rate = mac::coupled_rate(problem.users, lambdas, k);
      const double power = mac::coupled_power(problem.users, lambdas, k);
      within_sigmas(c, "rate", rep.users[k].empirical_rate, rep.users[k].standard_error_rate,
                    rate, t.mc_sigmas);
      within_sigmas(c, "power", rep.users[k].empirical_power, rep.users[k].standard_error_power,
                    power, t.mc_sigmas);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.note() << "; " << secs << " s";
  c.require(secs < t.mc_seconds_max, "too slow");
  return c;
}

Check c12(const Tolerances& t) {
  Check c;
  const auto ray = FadingModel::rayleigh();
  const auto ll = FadingModel::log_logistic();
  const auto strong = FadingModel::rayleigh(db_to_linear(3.0));

  // Sandwich at a lambda grid and at every solved level.
  std::vector<std::pair<std::vector<FadingModel>, std::vector<double>>> points;
  const std::vector<std::vector<FadingModel>> pairs = {{ray, ray}, {ray, ll}, {ll, strong}};
  for (const auto& models : pairs) {
    for (double l1 : {0.1, 1.0, 5.0, 20.0}) {
      for (double l2 : {0.1, 1.0, 5.0, 20.0}) points.push_back({models, {l1, l2}});
    }
    for (double p : {1.0, 1e-2, 1e-4, 1e-6}) {
      mac::MacProblem problem({{models[0], p}, {models[1], p}});
      points.push_back({models, mac::solve_mac_water_levels(problem).lambdas});
    }
  }
  int sandwich_bad = 0;
  for (const auto& [models, lambdas] : points) {
    for (std::size_t k = 0; k < models.size(); ++k) {
      const double mid = mac::coupled_power(models, lambdas, k);
      const double upper = su::g_function(models[k], lambdas[k]);
      double lower = upper;
      for (std::size_t i = 0; i < models.size(); ++i) {
        if (i != k) lower *= models[i].cdf(lambdas[i]);
      }
      if (!(lower <= mid * (1.0 + 1e-9) && mid <= upper * (1.0 + 1e-9))) ++sandwich_bad;
    }
  }
  c.note() << "sandwich checked at " << points.size() * 2 << " values";
  c.require(sandwich_bad == 0, std::to_string(sandwich_bad) + " sandwich violations");

  // Exclusive activation in every sampled state.
  montecarlo::SimConfig cfg;
  cfg.n_samples = 200'000;
  cfg.seed = t.seed;
  double multi = 0.0;
  for (double p : {1.0, 1e-3}) {
    const auto problem = symmetric(ray, p);
    const auto models = problem.models();
    multi += montecarlo::simulate(models, montecarlo::policies::onoff_mac(mac::onoff_mac_policy(problem)), cfg)
                 .multi_active_fraction;
    const bc::BcProblem bcp{{ray, strong}, p};
    const auto lambdas = bc::bc_water_levels(bcp, bc::SplitVector({0.5, 0.5}));
    multi += montecarlo::simulate(bcp.users, montecarlo::policies::bc(lambdas), cfg)
                 .multi_active_fraction;
  }
  c.note() << "; multi-active fraction " << multi;
  c.require(multi == 0.0, "two users active in some state");

  // Region nestings.
  const auto splits = bc::default_splits();
  for (double p : {1e-3, 1e-7}) {
    for (const auto& users : {std::vector<FadingModel>{ray, strong}, std::vector<FadingModel>{ll, ll}}) {
      const bc::BcProblem bcp{users, p};
      c.require(mac::region_contains(bc::bc_region_trace(bcp, splits),
                                     bc::timesharing_region(bcp, splits), 1e-15),
                "timeshare outside bc_dual");
    }
  }
  for (double p : {1e-4, 1e-6}) {
    for (const auto& m2 : {ray, strong}) {
      mac::MacProblem problem({{ray, p}, {m2, p}});
      const auto rect = mac::rectangle_region(problem);
      c.require(mac::region_contains(rect, mac::csir_mac_region(problem)),
                "csir outside rectangle");
    }
  }
  for (double p : {1.0, 1e-2, 1e-4, 1e-6}) {
    for (const auto& m2 : {ray, strong}) {
      mac::MacProblem problem({{ray, p}, {m2, p}});
      const auto corner = mac::rectangle_region(problem).points[1];
      const auto onoff = mac::onoff_mac_rates(problem);
      for (std::size_t k = 0; k < 2; ++k) {
        c.require(onoff.rates[k] <= corner.rates[k], "onoff corner outside rectangle");
      }
    }
  }
  c.note() << "; nestings checked";
  return c;
}

using CriterionFn = Check (*)(const Tolerances&);

struct Entry {
  const char* name;
  CriterionFn fn;
};

const std::array<Entry, kCriterionCount> kCriteria = {{
    {"rayleigh closed form", c1},
    {"log-logistic closed form", c2},
    {"dual-route capacity", c3},
    {"low-power capacity asymptote", c4},
    {"log-logistic water-level law", c5},
    {"rayleigh water-level trend", c6},
    {"on-off MAC eta", c7},
    {"sum-rate point convergence", c8},
    {"water levels grow as budgets shrink", c9},
    {"time-sharing dichotomy", c10},
    {"Monte Carlo agreement", c11},
    {"structural invariants", c12},
}};

}  // namespace

std::string criterion_name(int id) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no such criterion");
  return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const Tolerances& tol) {
  const std::string name = criterion_name(id);
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result{id, name, false, "", 0.0};
  try {
    const Check c = kCriteria[id - 1].fn(tol);
    result.passed = c.ok();
    result.detail = c.detail();
  } catch (const std::exception& e) {
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CriterionResult> run_battery(
    const Tolerances& tol, const std::vector<int>& only,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id, tol));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace fadecap::acceptance
