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

#include "foersim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace foersim {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
  if (pos != text.size()) throw ConfigError(where + ": trailing junk in number '" + text + "'");
  if (!std::isfinite(value)) throw ConfigError(where + ": number must be finite");
  return value;
}

std::vector<double> parse_grid(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  auto spaced = [&](const char* name) {
    const std::string prefix = std::string(name) + "(";
    if (t.rfind(prefix, 0) != 0 || t.back() != ')') return std::vector<double>{};
    const std::string inner = t.substr(prefix.size(), t.size() - prefix.size() - 1);
    std::vector<std::string> parts;
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(trim(part));
    if (parts.size() != 3)
      throw ConfigError(where + ": " + name + " needs (lo, hi, n)");
    const double lo = parse_double(parts[0], where);
    const double hi = parse_double(parts[1], where);
    const double nd = parse_double(parts[2], where);
    const int n = static_cast<int>(nd);
    if (n < 1 || nd != n) throw ConfigError(where + ": point count must be a positive integer");
    std::vector<double> grid(static_cast<std::size_t>(n));
    if (n == 1) {
      grid[0] = lo;
      return grid;
    }
    if (std::string(name) == "linspace") {
      for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    } else {
      if (lo <= 0 || hi <= 0) throw ConfigError(where + ": logspace endpoints must be > 0");
      const double llo = std::log(lo), lhi = std::log(hi);
      for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n - 1));
    }
    return grid;
  };

  if (auto g = spaced("linspace"); !g.empty()) return g;
  if (auto g = spaced("logspace"); !g.empty()) return g;

  std::vector<double> grid;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) grid.push_back(parse_double(trim(part), where));
  if (grid.empty()) throw ConfigError(where + ": empty grid");
  return grid;
}

void check_monotone(const std::vector<double>& grid, const std::string& where) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ConfigError(where + ": grid must be strictly increasing");
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
  ConfigFile config;
  config.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      config.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto [it, inserted] = config.sections_[section].insert({key, Entry{value, line_no, false}});
    if (!inserted)
      throw ConfigError(where + ": duplicate key '" + key + "' (first at line " +
                        std::to_string(it->second.line) + ")");
  }
  return config;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_string(oss.str(), path);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  const auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  const auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  kit->second.used = true;
  return &kit->second;
}

const ConfigFile::Entry& ConfigFile::require(const std::string& section,
                                             const std::string& key) const {
  const Entry* entry = find(section, key);
  if (!entry)
    throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
  return *entry;
}

void ConfigFile::fail(const Entry* entry, const std::string& message) const {
  throw ConfigError(origin_ + ":" + std::to_string(entry ? entry->line : 0) + ": " + message);
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
  return require(section, key).value;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  const Entry* entry = find(section, key);
  return entry ? entry->value : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const Entry& entry = require(section, key);
  return parse_double(entry.value, origin_ + ":" + std::to_string(entry.line));
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  const Entry* entry = find(section, key);
  if (!entry) return fallback;
  return parse_double(entry->value, origin_ + ":" + std::to_string(entry->line));
}

long long ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const Entry& entry = require(section, key);
  const double v = parse_double(entry.value, origin_ + ":" + std::to_string(entry.line));
  const long long i = static_cast<long long>(v);
  if (v != static_cast<double>(i)) fail(&entry, "expected an integer");
  return i;
}

long long ConfigFile::get_int(const std::string& section, const std::string& key,
                              long long fallback) const {
  if (!has(section, key)) return fallback;
  return get_int(section, key);
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const Entry* entry = find(section, key);
  if (!entry) return fallback;
  if (entry->value == "true" || entry->value == "1" || entry->value == "yes") return true;
  if (entry->value == "false" || entry->value == "0" || entry->value == "no") return false;
  fail(entry, "expected a boolean (true/false)");
}

std::vector<double> ConfigFile::get_grid(const std::string& section,
                                         const std::string& key) const {
  const Entry& entry = require(section, key);
  const std::string where = origin_ + ":" + std::to_string(entry.line);
  auto grid = parse_grid(entry.value, where);
  check_monotone(grid, where);
  return grid;
}

std::vector<double> ConfigFile::get_grid(const std::string& section, const std::string& key,
                                         const std::vector<double>& fallback) const {
  if (!has(section, key)) return fallback;
  return get_grid(section, key);
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  sections_[section][key] = Entry{value, 0, false};
}

std::vector<std::string> ConfigFile::unused_keys() const {
  std::vector<std::string> unused;
  for (const auto& [section, entries] : sections_)
    for (const auto& [key, entry] : entries)
      if (!entry.used)
        unused.push_back("[" + section + "] " + key + " (line " + std::to_string(entry.line) + ")");
  return unused;
}

std::string ConfigFile::canonical_text() const {
  std::ostringstream oss;
  for (const auto& [section, entries] : sections_) {
    oss << "[" << section << "]\n";
    for (const auto& [key, entry] : entries) oss << key << " = " << entry.value << "\n";
  }
  return oss.str();
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace foersim
