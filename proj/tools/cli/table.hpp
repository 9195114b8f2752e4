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
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace fadecap::cli {

enum class RateUnit { kNats, kBits };

// What a column measures decides how the output layer converts and labels it.
enum class Quantity {
  kPlain,  // dimensionless, dB, power, level, label
  kRate,   // nats per symbol internally
  kSepup,  // nats per symbol per unit power internally
};

struct Column {
  std::string name;
  Quantity quantity = Quantity::kPlain;
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// Header text with its unit, e.g. "C_csit[bits]".
std::string header(const Column& column, RateUnit unit);

// 17 significant digits, "inf"/"nan" for non-finite values.
std::string format_double(double x);

// A single table prints as plain CSV. Several tables print one after the
// other, each introduced by a "# name" line and separated by a blank line.
void write_csv(std::ostream& out, const std::vector<Table>& tables, RateUnit unit);

// {"unit": ..., "<table name>": [ {column: value, ...}, ... ], ...}.
// Non-finite numbers become null.
void write_json(std::ostream& out, const std::vector<Table>& tables, RateUnit unit);

}  // namespace fadecap::cli
