// Copyright 2026 The qclone Authors
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

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qclone {

enum class TableMode { ClosedForm, Simulate, Both };
enum class Provenance { ClosedForm, Simulation };
const char* provenance_name(Provenance p);

struct Cell {
  std::string key;
  double value = 0.0;
  std::optional<double> printed;  // printed value, when the table shows one
  int digits = 2;                 // printed decimals
  bool match = true;
};

struct ReportRow {
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<Cell> outputs;
  Provenance provenance = Provenance::ClosedForm;
};

struct TableReport {
  std::string id;
  std::string title;
  std::vector<ReportRow> rows;
  int checked() const;
  int mismatches() const;
};

// "2.1" ... "4.2", in order.
const std::vector<std::string>& table_ids();
bool is_table_id(const std::string& id);
// Throws std::invalid_argument for an unknown id.
TableReport build_table(const std::string& id, TableMode mode = TableMode::Both);

// Rounding or truncation of `value` to `digits` decimals gives `shown`.
bool printed_match(double value, double shown, int digits);
double round_to(double x, int digits);

}  // namespace qclone
