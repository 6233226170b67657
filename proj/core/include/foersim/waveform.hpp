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

#include <functional>
#include <stdexcept>
#include <utility>

namespace foersim {

/// Scalar control waveform over a segment's local time. Constants are tagged
/// so piecewise-constant segments can take the exact matrix-exponential path.
class Waveform {
 public:
  Waveform() = default;
  Waveform(double value) : value_(value) {}  // NOLINT: implicit by design
  explicit Waveform(std::function<double(double)> fn) : fn_(std::move(fn)) {
    if (!fn_) throw std::invalid_argument("waveform callable must not be empty");
  }

  double operator()(double t) const { return fn_ ? fn_(t) : value_; }
  bool is_constant() const { return !fn_; }
  double constant_value() const {
    if (fn_) throw std::logic_error("waveform is time-dependent");
    return value_;
  }

 private:
  std::function<double(double)> fn_;
  double value_ = 0.0;
};

}  // namespace foersim
