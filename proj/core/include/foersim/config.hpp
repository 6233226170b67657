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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace foersim {

/// Configuration problem with enough context to point at the offending line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectioned key-value configuration:
///   [section]
///   key = value        # trailing comments allowed
/// Values are scalars, names, comma lists, or grid shorthands
/// linspace(lo, hi, n) / logspace(lo, hi, n).
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& origin = "<config>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

  /// Expand a grid value; requires at least one point, strictly monotone.
  std::vector<double> get_grid(const std::string& section, const std::string& key) const;
  std::vector<double> get_grid(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

  /// Allow overriding single keys from the command line ("section.key=value").
  void set(const std::string& section, const std::string& key, const std::string& value);

  /// Keys never read back; used to reject misspelled configuration.
  std::vector<std::string> unused_keys() const;

  /// Canonical text form of the resolved configuration (sorted, normalized);
  /// hashed into run manifests.
  std::string canonical_text() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  [[noreturn]] void fail(const Entry* entry, const std::string& message) const;
  const Entry* find(const std::string& section, const std::string& key) const;
  const Entry& require(const std::string& section, const std::string& key) const;

  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Stable 64-bit FNV-1a content hash, hex-encoded; used in manifests.
std::string content_hash(const std::string& text);

}  // namespace foersim
