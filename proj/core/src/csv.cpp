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

#include "foersim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace foersim {

std::string format_csv_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("csv: schema must have at least one column");
}

void CsvTable::add_row(CsvRow row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("csv: row width does not match schema");
  rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream oss;
  for (std::size_t i = 0; i < columns_.size(); ++i) oss << (i ? "," : "") << columns_[i];
  oss << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) oss << ",";
      if (const auto* s = std::get_if<std::string>(&row[i])) oss << *s;
      else if (const auto* d = std::get_if<double>(&row[i])) oss << format_csv_value(*d);
      else oss << std::get<long long>(row[i]);
    }
    oss << "\n";
  }
  return oss.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open for writing: " + path);
  out << to_string();
  if (!out) throw std::runtime_error("csv: write failed: " + path);
}

int CsvFile::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open: " + path);
  CsvFile file;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (header) {
      file.columns = std::move(cells);
      header = false;
    } else {
      file.rows.push_back(std::move(cells));
    }
  }
  if (file.columns.empty()) throw std::runtime_error("csv: missing header: " + path);
  return file;
}

}  // namespace foersim
