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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "foersim/model.hpp"
#include "foersim/pulses.hpp"
#include "foersim/schedule.hpp"

namespace foersim {

enum class DecayMode {
  Off,            // unitary propagation, no decay bookkeeping beyond T_R
  Perturbative,   // unitary propagation; decay error applied as Gamma * T_R
  NonHermitian,   // propagate under H - i (Gamma/2) Pi
};

struct PropagationOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  DecayMode decay = DecayMode::Perturbative;
  /// Skip the exact matrix-exponential path on piecewise-constant segments
  /// (used to cross-check the two paths against each other).
  bool force_integrator = false;
  /// If > 0, record (t, P_r, populations) at this many uniformly spaced times.
  int sample_points = 0;
};

struct SamplePoint {
  double t = 0.0;
  double p_r = 0.0;             // <Pi> at t
  Eigen::VectorXd populations;  // |psi_i|^2 in the pair basis
};

struct TrajectoryEntry {
  Eigen::VectorXcd final_state;
  double t_r = 0.0;           // integral of <Pi> over the schedule, us
  double survival_norm = 0.0; // ||psi(T)||
  std::vector<double> t_r_per_segment;
  std::vector<SamplePoint> samples;
};

struct Trajectory {
  std::vector<TrajectoryEntry> entries;  // one per initial state, input order
  double total_duration = 0.0;
};

/// Integrate i d/dt psi = H(t) psi over the schedule for each initial state,
/// accumulating T_R = integral <Pi> dt alongside the state with shared
/// adaptive error control. Piecewise-constant segments advance by exact
/// diagonalization unless force_integrator is set or decay is non-Hermitian.
Trajectory propagate(const ModelSpec& model, const Schedule& schedule,
                     const std::vector<Eigen::VectorXcd>& initial_states,
                     const PropagationOptions& opts = {});

/// The four computational-basis states |00>, |01>, |10>, |11> in the pair basis.
std::vector<Eigen::VectorXcd> computational_states(const LevelScheme& scheme);

/// Excited-state population of a two-level drive with detuning V:
/// Omega^2/(Omega^2+V^2) * sin^2(sqrt(Omega^2+V^2) t / 2).
double analytic_blockade_population(double omega, double V, double t);

/// Return amplitude of the blocked state during a resonant drive in the
/// exchange-coupled three-level chain {|a1>, |ab>, |alpha beta>}:
/// (1 + eps^2 cos(Lambda t)) / (1 + eps^2), eps = Omega/(2V),
/// Lambda = sqrt(V^2 + Omega^2/4). Real-valued at all times.
std::complex<double> analytic_a1_amplitude(double omega, double V, double t);

/// Residual light shift accumulated by the blocked state over a 2pi pulse in
/// the condensed single-channel model: pi * Omega / (2 V).
double stark_phase_one_eigenstate(double omega, double V);

}  // namespace foersim
