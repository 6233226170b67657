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

#include "foersim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace foersim {

Schedule::Schedule(std::vector<Segment> segments, std::string protocol)
    : segments_(std::move(segments)), protocol_(std::move(protocol)) {
  if (segments_.empty()) throw std::invalid_argument("schedule must have at least one segment");
  for (const auto& seg : segments_) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      throw std::invalid_argument("segment durations must be positive and finite");
    for (const auto& line : seg.lines) {
      if (!LevelScheme::is_qubit(line.qubit_level))
        throw std::invalid_argument("drive line must start from a qubit level");
      if (!LevelScheme::is_rydberg(line.rydberg_level) || line.rydberg_level > 3)
        throw std::invalid_argument("drive line must end on a Rydberg level (2 or 3)");
    }
    total_duration_ += seg.duration;
  }
}

int Schedule::rank() const {
  std::set<std::pair<int, int>> transitions_a, transitions_b;
  for (const auto& seg : segments_)
    for (const auto& line : seg.lines) {
      auto& set = line.atom == Atom::A ? transitions_a : transitions_b;
      set.insert({line.qubit_level, line.rydberg_level});
    }
  return static_cast<int>(std::max(transitions_a.size(), transitions_b.size()));
}

int Schedule::min_levels_per_atom() const {
  int max_level = 2;
  for (const auto& seg : segments_)
    for (const auto& line : seg.lines) max_level = std::max(max_level, line.rydberg_level);
  return max_level + 1;
}

}  // namespace foersim
