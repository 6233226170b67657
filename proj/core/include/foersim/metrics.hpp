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
#include <string>

#include "foersim/propagate.hpp"

namespace foersim {

struct PhaseCorrection {
  double global = 0.0;
  double z_a = 0.0;  // single-qubit Z angle on atom A
  double z_b = 0.0;  // single-qubit Z angle on atom B
};

struct GateFidelityResult {
  double fidelity = 0.0;
  PhaseCorrection phases;
};

/// Average gate fidelity of a (possibly trace-decreasing) qubit-subspace map
/// M against the unitary target U:
///   F = [Tr(M~ M~^dag) + |Tr(M~)|^2] / 20,  M~ = U^dag K(theta) M,
/// maximized over diagonal phase corrections K = e^{i g} Z(za) (x) Z(zb) when
/// local_phase_freedom is set (coarse grid plus exact coordinate ascent).
GateFidelityResult gate_fidelity(const Eigen::Matrix4cd& achieved, const Eigen::Matrix4cd& target,
                                 bool local_phase_freedom = true);

Eigen::Matrix4cd cz_gate();
Eigen::Matrix4cd sqrt_iswap_dagger();

/// Target unitary conventionally realized by a protocol ("cz" or "sqrt_iswap_dag").
Eigen::Matrix4cd target_for_protocol(const std::string& protocol);

struct GateReport {
  double f_coherent = 0.0;   // phase-optimized coherent fidelity
  double mean_t_r = 0.0;     // T_R averaged over the four computational inputs, us
  double decay_error = 0.0;  // Gamma * mean_t_r
  double f_total = 0.0;      // f_coherent * (1 - decay_error)
  double eta = 0.0;          // V_eff * mean_t_r
  PhaseCorrection phases;
  std::string protocol;
  std::string model_eval;
  std::string model_opt;  // which model the pulse parameters were tuned under
};

/// Propagate the four computational inputs and collect the qubit-subspace map.
Eigen::Matrix4cd qubit_block(const LevelScheme& scheme, const Trajectory& trajectory);

GateReport evaluate_gate(const ModelSpec& model, const Schedule& schedule,
                         const Eigen::Matrix4cd& target, const PropagationOptions& opts = {});

/// Figure of merit eta = V_eff * mean T_R over the computational inputs.
double eta_of_gate(const ModelSpec& model, const Schedule& schedule,
                   const PropagationOptions& opts = {});

/// 1 - eta_min / (V tau_R) with eta_min = pi/2 for rank-two drive access and
/// 1 + pi/2 for rank-one.
double fidelity_upper_bound(double V, double tau_r, int rank);

}  // namespace foersim
