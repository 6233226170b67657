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

namespace foersim {

/// Unit conventions used throughout:
///   - energies and couplings are angular frequencies in rad/us,
///   - times are in us,
///   - user-facing inputs are ordinary frequencies nu in MHz, converted as
///     omega = 2*pi*nu (1 MHz of nu equals 2*pi rad/us of omega).
inline constexpr double kTwoPi = 6.28318530717958647692528676656;

constexpr double from_mhz(double nu_mhz) { return kTwoPi * nu_mhz; }
constexpr double to_mhz(double omega_rad_per_us) { return omega_rad_per_us / kTwoPi; }

}  // namespace foersim
