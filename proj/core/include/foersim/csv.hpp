// Copyright 2026 The foersim authors
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
#include <variant>
#include <vector>

namespace foersim {

using CsvCell = std::variant<std::string, double, long long>;
using CsvRow = std::vector<CsvCell>;

/// Fixed numeric formatting: 12 significant digits, so emitted files are
/// byte-stable and round-trip exactly at that precision.
std::string format_csv_value(double v);

/// UTF-8 comma-separated table with a header row. Rows must match the schema
/// width; emission order is the caller's row order.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(CsvRow row);
  std::string to_string() const;
  void write(const std::string& path) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<CsvRow>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<CsvRow> rows_;
};

/// Minimal reader for the files this tool writes (no quoting/escaping).
struct CsvFile {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
};

CsvFile read_csv(const std::string& path);

}  // namespace foersim
