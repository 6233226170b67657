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
#include <vector>

#include "foersim/level_scheme.hpp"
#include "foersim/waveform.hpp"

namespace foersim {

/// One driven qubit->Rydberg transition on one atom. Waveforms take the
/// segment-local time. Same-parity cross couplings (e.g. g0 -> a while
/// g0 -> alpha is driven) are never constructed; selection rules forbid them.
struct DriveLine {
  Atom atom = Atom::A;
  int qubit_level = 1;    // 0 or 1
  int rydberg_level = 2;  // 2 (a|b|r) or 3 (alpha|beta)
  Waveform rabi;          // Omega(t) >= 0, rad/us
  Waveform phase;         // phi(t), rad
  Waveform detuning;      // Delta(t), rad/us

  bool is_constant() const {
    return rabi.is_constant() && phase.is_constant() && detuning.is_constant();
  }
};

/// Contiguous stretch of the gate with a fixed set of drive lines. An empty
/// line set is free evolution under the static interaction.
struct Segment {
  double duration = 0.0;  // us, > 0
  std::vector<DriveLine> lines;

  bool is_constant() const {
    for (const auto& line : lines)
      if (!line.is_constant()) return false;
    return true;
  }
};

/// Ordered, contiguous drive segments making up one gate. Immutable after
/// construction; waveform evaluation is pure and reentrant.
class Schedule {
 public:
  explicit Schedule(std::vector<Segment> segments, std::string protocol = "custom");

  const std::vector<Segment>& segments() const { return segments_; }
  double total_duration() const { return total_duration_; }
  const std::string& protocol() const { return protocol_; }

  /// Maximum over atoms of the number of distinct driven transitions on that
  /// atom; 1 for the standard single-line drives, 2 for crossed drives.
  int rank() const;

  /// Minimum per-atom level count a model must provide (4 when level 3 is driven).
  int min_levels_per_atom() const;

 private:
  std::vector<Segment> segments_;
  double total_duration_ = 0.0;
  std::string protocol_;
};

}  // namespace foersim
