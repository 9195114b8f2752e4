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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "channel_spec.hpp"
#include "fadecap/bc.hpp"
#include "fadecap/error.hpp"
#include "fadecap/mac.hpp"
#include "fadecap/single_user.hpp"

namespace fadecap::cli {
namespace {

namespace su = fadecap::single_user;

std::vector<double> sweep_db(int from, int to, int step) {
  std::vector<double> out;
  for (int db = from; db >= to; db -= step) out.push_back(db);
  return out;
}

std::vector<FadingModel> load_models(const RunConfig& config,
                                     std::vector<FadingModel> fallback) {
  if (config.spec_path) return load_channel_spec(*config.spec_path);
  return fallback;
}

std::vector<double> budgets_db(const RunConfig& config, std::vector<double> fallback) {
  return config.budgets_db ? *config.budgets_db : fallback;
}

bool symmetric(const std::vector<FadingModel>& models) {
  return std::all_of(models.begin(), models.end(), [&](const FadingModel& m) {
    return m.describe() == models.front().describe();
  });
}

bool all_finite_means(const std::vector<FadingModel>& models) {
  return std::all_of(models.begin(), models.end(),
                     [](const FadingModel& m) { return std::isfinite(m.mean()); });
}

void require_users(const std::vector<FadingModel>& models, std::size_t k, const char* cmd) {
  if (models.size() != k) {
    throw SpecError(std::string(cmd) + " needs exactly " + std::to_string(k) +
                    " users, the spec has " + std::to_string(models.size()));
  }
}

std::vector<Column> rate_columns(const char* prefix, std::size_t k, Quantity q) {
  std::vector<Column> cols;
  for (std::size_t i = 1; i <= k; ++i) cols.push_back({prefix + std::to_string(i), q});
  return cols;
}

void add_points(Table& table, const mac::RegionBoundary& region,
                const std::vector<Cell>& prefix = {}) {
  for (const auto& p : region.points) {
    std::vector<Cell> row = prefix;
    for (double r : p.rates) row.emplace_back(r);
    row.emplace_back(std::string(mac::to_string(region.kind)));
    table.add_row(std::move(row));
  }
}

std::string subset_label(std::uint32_t mask) {
  std::string s;
  for (int k = 0; k < 32; ++k) {
    if (mask & (1u << k)) s += (s.empty() ? "" : "+") + std::to_string(k + 1);
  }
  return s;
}

mac::RegionBoundary single_point(mac::RegionKind kind, std::vector<double> rates) {
  return {kind, {mac::RatePoint{std::move(rates)}}, {}};
}

// Rectangle, on-off point, sum-rate point and, for identical users, TDMA.
std::vector<mac::RegionBoundary> fading_regions(const mac::MacProblem& problem,
                                                const std::vector<FadingModel>& models) {
  std::vector<mac::RegionBoundary> out;
  out.push_back(mac::rectangle_region(problem));
  out.push_back(single_point(mac::RegionKind::kOnOff, mac::onoff_mac_rates(problem).rates));
  out.push_back(single_point(mac::RegionKind::kSumRate, mac::mac_sumrate_point(problem).rates));
  const auto budgets = problem.budgets();
  const bool equal_budgets =
      std::all_of(budgets.begin(), budgets.end(), [&](double b) { return b == budgets[0]; });
  if (symmetric(models) && equal_budgets) {
    const auto tdma = mac::tdma_symmetric(models[0], models.size(), budgets[0]);
    out.push_back(single_point(mac::RegionKind::kTdma,
                               std::vector<double>(models.size(), tdma.rate_per_user)));
  }
  return out;
}

double double_field(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw SpecError("\"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

std::vector<double> parse_budget_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string::npos) {
    throw SpecError("budget list is empty");
  }
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(start, end - start);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    double x = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
    if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size() ||
        !std::isfinite(x)) {
      throw SpecError("bad budget value \"" + token + "\"");
    }
    out.push_back(x);
    start = end + 1;
  }
  return out;
}

ValidateConfig parse_validate_config(const std::string& text, ValidateConfig base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("tolerance config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("tolerance config must be a JSON object");
  ValidateConfig cfg = std::move(base);
  auto& t = cfg.tolerances;
  const std::map<std::string, double*> scalars = {
      {"closed_form_rel_tol", &t.closed_form_rel_tol},
      {"dual_route_rel_tol", &t.dual_route_rel_tol},
      {"rayleigh_level_ratio_max", &t.rayleigh_level_ratio_max},
      {"eta_m10db_min", &t.eta_m10db_min},
      {"sumrate_ratio_min", &t.sumrate_ratio_min},
      {"equivalence_tol", &t.equivalence_tol},
      {"timeshare_lambda_tol", &t.timeshare_lambda_tol},
      {"mc_sigmas", &t.mc_sigmas},
      {"mc_seconds_max", &t.mc_seconds_max},
  };
  const std::map<std::string, acceptance::Band*> bands = {
      {"loglogistic_asymptote", &t.loglogistic_asymptote},
      {"water_level_law", &t.water_level_law},
      {"eta_0db", &t.eta_0db},
      {"eta_m30db", &t.eta_m30db},
      {"timeshare_capacity", &t.timeshare_capacity},
  };
  const std::map<std::string, std::uint64_t*> counts = {
      {"mc_samples", &t.mc_samples},
      {"seed", &t.seed},
  };
  for (const auto& [key, value] : doc.items()) {
    if (auto it = scalars.find(key); it != scalars.end()) {
      *it->second = double_field(value, key);
    } else if (auto bt = bands.find(key); bt != bands.end()) {
      if (!value.is_array() || value.size() != 2) {
        throw SpecError("\"" + key + "\" must be [lo, hi]");
      }
      *bt->second = {double_field(value[0], key), double_field(value[1], key)};
    } else if (auto ct = counts.find(key); ct != counts.end()) {
      if (!value.is_number_unsigned()) throw SpecError("\"" + key + "\" must be a count");
      *ct->second = value.get<std::uint64_t>();
    } else if (key == "only") {
      if (!value.is_array()) throw SpecError("\"only\" must be an array of criterion ids");
      for (const auto& id : value) {
        if (!id.is_number_integer() || id.get<int>() < 1 ||
            id.get<int>() > acceptance::kCriterionCount) {
          throw SpecError("\"only\" entries must be criterion ids 1.." +
                          std::to_string(acceptance::kCriterionCount));
        }
        cfg.only.push_back(id.get<int>());
      }
    } else {
      throw SpecError("unknown tolerance field \"" + key + "\"");
    }
  }
  return cfg;
}

CommandResult cmd_single(const RunConfig& config) {
  const auto models = load_models(config, {FadingModel::rayleigh()});
  require_users(models, 1, "single");
  const auto& model = models[0];
  const auto dbs = budgets_db(config, sweep_db(0, -60, 5));

  Table table{"single",
              {{"P_dB"},
               {"P"},
               {"lambda"},
               {"C_csit", Quantity::kRate},
               {"C_onoff", Quantity::kRate},
               {"C_asymptotic", Quantity::kRate},
               {"C_csir", Quantity::kRate},
               {"C_awgn", Quantity::kRate},
               {"eta"}},
              {}};
  for (double db : dbs) {
    const double p = db_to_linear(db);
    const double lambda = su::solve_water_level(model, p).lambda;
    const double c = su::capacity_csit(model, p);
    const double onoff = su::onoff_rate_1u(model, p);
    table.add_row({db, p, lambda, c, onoff, su::asymptotic_capacity(model, p),
                   su::capacity_csir(model, p), su::capacity_awgn(model.mean(), p),
                   onoff / c});
  }
  return {{std::move(table)}, kOk, ""};
}

CommandResult cmd_mac_region(const RunConfig& config) {
  const auto models =
      load_models(config, {FadingModel::rayleigh(), FadingModel::rayleigh()});
  const std::size_t k = models.size();
  if (k < 2) {
    throw SpecError("mac-region needs K>=2 users, the spec has " + std::to_string(k));
  }
  const auto dbs = budgets_db(config, {0.0});
  if (dbs.size() != 1 && dbs.size() != k) {
    throw SpecError("mac-region takes one common budget or one budget per user");
  }
  std::vector<mac::UserChannel> users;
  for (std::size_t i = 0; i < k; ++i) {
    users.push_back({models[i], db_to_linear(dbs.size() == 1 ? dbs[0] : dbs[i])});
  }
  const mac::MacProblem problem(users);
  const auto budgets = problem.budgets();

  auto regions = fading_regions(problem, models);
  if (all_finite_means(models)) {
    std::vector<double> gains;
    for (const auto& m : models) gains.push_back(m.mean());
    regions.push_back(mac::awgn_mac_region(gains, budgets));
  }
  mac::CsirOptions csir;
  csir.seed = config.seed;
  regions.push_back(mac::csir_mac_region(problem, {}, csir));

  auto cols = rate_columns("R", k, Quantity::kRate);
  cols.push_back({"kind"});
  Table points{"mac_region", cols, {}};
  for (const auto& r : regions) {
    // Above two users the pentagon kinds are described by constraints only.
    if (k == 2 || r.constraints.empty()) add_points(points, r);
  }
  if (k == 2) return {{std::move(points)}, kOk, ""};

  Table constraints{"constraints",
                    {{"kind"}, {"users"}, {"bound", Quantity::kRate},
                     {"standard_error", Quantity::kRate}},
                    {}};
  for (const auto& r : regions) {
    for (const auto& c : r.constraints) {
      constraints.add_row({std::string(mac::to_string(r.kind)), subset_label(c.mask), c.bound,
                           c.standard_error});
    }
  }
  return {{std::move(points), std::move(constraints)}, kOk, ""};
}

CommandResult cmd_bc_region(const RunConfig& config) {
  const auto models =
      load_models(config, {FadingModel::rayleigh(), FadingModel::rayleigh()});
  require_users(models, 2, "bc-region");
  const auto dbs = budgets_db(config, {-30.0});
  if (dbs.size() != 1) throw SpecError("bc-region takes a single total budget");
  const bc::BcProblem problem{models, db_to_linear(dbs[0])};
  const auto splits = bc::default_splits(config.grid);

  Table table{"bc_region",
              {{"alpha1"}, {"R1", Quantity::kRate}, {"R2", Quantity::kRate}, {"kind"}},
              {}};
  for (const auto& region :
       {bc::bc_region_trace(problem, splits), bc::timesharing_region(problem, splits)}) {
    for (std::size_t i = 0; i < splits.size(); ++i) {
      table.add_row({splits[i][0], region.points[i].rates[0], region.points[i].rates[1],
                     std::string(mac::to_string(region.kind))});
    }
  }
  return {{std::move(table)}, kOk, ""};
}

CommandResult cmd_eta_sweep(const RunConfig& config) {
  const auto models =
      load_models(config, {FadingModel::rayleigh(), FadingModel::rayleigh()});
  require_users(models, 2, "eta-sweep");
  if (!symmetric(models)) throw SpecError("eta-sweep needs two identical users");
  const auto dbs = budgets_db(config, sweep_db(0, -60, 5));

  Table table{"eta_sweep",
              {{"P_dB"}, {"P"}, {"R_onoff", Quantity::kRate}, {"C_csit", Quantity::kRate},
               {"eta"}},
              {}};
  for (double db : dbs) {
    const double p = db_to_linear(db);
    const mac::MacProblem problem({{models[0], p}, {models[1], p}});
    const double r = mac::onoff_mac_rates(problem).rates[0];
    const double c = su::capacity_csit(models[0], p);
    table.add_row({db, p, r, c, r / c});
  }
  return {{std::move(table)}, kOk, ""};
}

CommandResult cmd_sepup(const RunConfig& config) {
  const auto models =
      load_models(config, {FadingModel::rayleigh(), FadingModel::rayleigh()});
  require_users(models, 2, "sepup");
  const auto dbs = budgets_db(config, {-20.0, -40.0, -60.0});

  Table table{"sepup",
              {{"P_dB"}, {"S1", Quantity::kSepup}, {"S2", Quantity::kSepup}, {"kind"}},
              {}};
  for (double db : dbs) {
    const double p = db_to_linear(db);
    const mac::MacProblem problem({{models[0], p}, {models[1], p}});
    const auto budgets = problem.budgets();
    for (const auto& region : fading_regions(problem, models)) {
      add_points(table, mac::sepup_region(region, budgets), {db});
    }
  }
  return {{std::move(table)}, kOk, ""};
}

CommandResult cmd_validate(const RunConfig& config) {
  ValidateConfig vc;
  vc.tolerances.seed = config.seed;
  if (config.spec_path) vc = parse_validate_config(read_file(*config.spec_path), vc);
  Table table{"validate", {{"id"}, {"criterion"}, {"status"}, {"detail"}}, {}};
  CommandResult result;
  for (const auto& r : acceptance::run_battery(vc.tolerances, vc.only)) {
    table.add_row({static_cast<std::int64_t>(r.id), r.name,
                   std::string(r.passed ? "PASS" : "FAIL"), r.detail});
    if (!r.passed && result.exit_code == kOk) {
      result.exit_code = kValidationFailure;
      result.message = "validation failed: criterion " + std::to_string(r.id) + " (" +
                       r.name + "): " + r.detail;
    }
  }
  result.tables.push_back(std::move(table));
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity regions of fading multi-access and broadcast channels", "fadecap"};
  std::string command;
  std::string spec;
  std::string budgets;
  std::string unit = "nats";
  std::string format = "csv";
  std::string out_path;
  RunConfig config;
  app.add_option("command", command, "single | mac-region | bc-region | eta-sweep | sepup | validate")
      ->required()
      ->check(CLI::IsMember({"single", "mac-region", "bc-region", "eta-sweep", "sepup", "validate"}));
  app.add_option("--spec", spec, "channel spec JSON (tolerance overrides for validate)");
  app.add_option("--budget-db", budgets, "comma-separated budgets in dB");
  app.add_option("--grid", config.grid, "split grid size for bc-region")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000}));
  app.add_option("--seed", config.seed, "seed for Monte Carlo estimates");
  app.add_option("--unit", unit, "rate unit")->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "fadecap: " << e.what() << '\n';
    return kBadInput;
  }

  config.command = command;
  config.unit = unit == "bits" ? RateUnit::kBits : RateUnit::kNats;
  config.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  if (app.count("--spec")) config.spec_path = spec;
  if (app.count("--out")) config.out_path = out_path;

  static const std::map<std::string, std::function<CommandResult(const RunConfig&)>> kCommands = {
      {"single", cmd_single},       {"mac-region", cmd_mac_region}, {"bc-region", cmd_bc_region},
      {"eta-sweep", cmd_eta_sweep}, {"sepup", cmd_sepup},           {"validate", cmd_validate},
  };
  CommandResult result;
  try {
    if (app.count("--budget-db")) config.budgets_db = parse_budget_list(budgets);
    result = kCommands.at(command)(config);
  } catch (const SpecError& e) {
    err << "fadecap: bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "fadecap: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }

  std::ofstream file;
  if (config.out_path) {
    file.open(*config.out_path, std::ios::binary);
    if (!file) {
      err << "fadecap: cannot write " << *config.out_path << '\n';
      return kBadInput;
    }
  }
  std::ostream& sink = config.out_path ? static_cast<std::ostream&>(file) : out;
  if (config.format == OutputFormat::kJson) {
    write_json(sink, result.tables, config.unit);
  } else {
    write_csv(sink, result.tables, config.unit);
  }
  if (result.exit_code != kOk) err << "fadecap: " << result.message << '\n';
  return result.exit_code;
}

}  // namespace fadecap::cli
