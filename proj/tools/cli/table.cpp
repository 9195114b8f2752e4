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

#include "table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fadecap::cli {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

Cell convert(const Cell& cell, Quantity q, RateUnit unit) {
  if (q == Quantity::kPlain || unit == RateUnit::kNats) return cell;
  if (const double* x = std::get_if<double>(&cell)) return *x / kLn2;
  return cell;
}

std::string cell_text(const Cell& cell) {
  if (const double* x = std::get_if<double>(&cell)) return format_double(*x);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  const auto& text = std::get<std::string>(cell);
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width mismatch in " + name);
  rows.push_back(std::move(row));
}

std::string header(const Column& column, RateUnit unit) {
  const char* u = unit == RateUnit::kBits ? "bits" : "nats";
  switch (column.quantity) {
    case Quantity::kRate:
      return column.name + "[" + u + "]";
    case Quantity::kSepup:
      return column.name + "[" + u + "/Hz/J]";
    case Quantity::kPlain:
      break;
  }
  return column.name;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<Table>& tables, RateUnit unit) {
  const bool sectioned = tables.size() > 1;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& table = tables[t];
    if (sectioned) {
      if (t > 0) out << '\n';
      out << "# " << table.name << '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << header(table.columns[c], unit);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << cell_text(convert(row[c], table.columns[c].quantity, unit));
      }
      out << '\n';
    }
  }
}

void write_json(std::ostream& out, const std::vector<Table>& tables, RateUnit unit) {
  nlohmann::ordered_json doc;
  doc["unit"] = unit == RateUnit::kBits ? "bits" : "nats";
  for (const Table& table : tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string key = header(table.columns[c], unit);
        const Cell cell = convert(row[c], table.columns[c].quantity, unit);
        if (const double* x = std::get_if<double>(&cell)) {
          obj[key] = std::isfinite(*x) ? nlohmann::ordered_json(*x) : nlohmann::ordered_json();
        } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
          obj[key] = *i;
        } else {
          obj[key] = std::get<std::string>(cell);
        }
      }
      rows.push_back(std::move(obj));
    }
    doc[table.name] = std::move(rows);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace fadecap::cli
