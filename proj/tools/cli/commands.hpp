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

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "table.hpp"

namespace fadecap::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kBadInput = 2,
  kNumericalFailure = 3,
};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  std::string command;
  std::optional<std::string> spec_path;
  // Budgets in dB exactly as given; empty optional means the command default.
  std::optional<std::vector<double>> budgets_db;
  std::size_t grid = 101;
  std::uint64_t seed = 1;
  RateUnit unit = RateUnit::kNats;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::kCsv;
};

// Comma-separated dB values; SpecError on an empty list or a bad token.
std::vector<double> parse_budget_list(const std::string& text);

// Tolerance overrides for `validate`: any field of acceptance::Tolerances by
// name (bands as [lo, hi]) plus "only": [criterion ids].
struct ValidateConfig {
  acceptance::Tolerances tolerances;
  std::vector<int> only;
};
// Fields present in `text` override those of `base`.
ValidateConfig parse_validate_config(const std::string& text, ValidateConfig base = {});

struct CommandResult {
  std::vector<Table> tables;
  int exit_code = kOk;
  std::string message;  // for the error stream when exit_code != 0
};

// Throws SpecError for bad input and fadecap::Error for numerical trouble.
CommandResult cmd_single(const RunConfig& config);
CommandResult cmd_mac_region(const RunConfig& config);
CommandResult cmd_bc_region(const RunConfig& config);
CommandResult cmd_eta_sweep(const RunConfig& config);
CommandResult cmd_sepup(const RunConfig& config);
CommandResult cmd_validate(const RunConfig& config);

// Full command-line entry point with exit-code mapping. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fadecap::cli
