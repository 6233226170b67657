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

#include "foersim/metrics.hpp"
#include "foersim/optim.hpp"

namespace foersim {

/// Parameter vector layout for the phase-modulated gate: (delta_ratio, A,
/// omega_ratio, phi). The gate duration is pinned to 7.612/Omega.
ToParams to_params_from_vector(double omega, const Eigen::VectorXd& params);

/// Bounds: delta/Omega in [-2, 2], A in [0, 2pi], omega/Omega in [0.1, 3],
/// phi in [-pi, pi].
void to_parameter_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper);

struct ToObjectiveOptions {
  /// Optimize coherent infidelity by default; with the gate time fixed the
  /// decay contribution is nearly parameter independent.
  bool total_infidelity = false;
  PropagationOptions propagation{.rtol = 3e-9, .atol = 1e-11};
};

/// 1 - F of the phase-modulated gate against CZ under the given model.
OptProblem make_to_problem(const ModelSpec& model, double omega,
                           const ToObjectiveOptions& opts = {});

/// Two-stage multistart over the phase-ansatz parameters.
OptResult optimize_to_gate(const ModelSpec& model, double omega,
                           const MultistartOptions& opts = {},
                           const ToObjectiveOptions& objective_opts = {});

/// Evaluate pulse parameters tuned under opt_model on eval_model; the report
/// carries both identities. Final metrics use tight default tolerances.
GateReport cross_evaluate(const Eigen::VectorXd& params, const ModelSpec& opt_model,
                          const ModelSpec& eval_model, double omega);

}  // namespace foersim
