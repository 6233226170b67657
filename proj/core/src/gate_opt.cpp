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

#include "foersim/gate_opt.hpp"

#include <numbers>
#include <stdexcept>

namespace foersim {

namespace {
constexpr double kPi = std::numbers::pi;
}

ToParams to_params_from_vector(double omega, const Eigen::VectorXd& params) {
  if (params.size() != 4)
    throw std::invalid_argument("to_params_from_vector: expected (delta, A, omega, phi)");
  ToParams p;
  p.omega = omega;
  p.delta_ratio = params(0);
  p.amplitude = params(1);
  p.omega_ratio = params(2);
  p.phi = params(3);
  return p;
}

void to_parameter_bounds(Eigen::VectorXd& lower, Eigen::VectorXd& upper) {
  lower.resize(4);
  upper.resize(4);
  lower << -2.0, 0.0, 0.1, -kPi;
  upper << 2.0, 2.0 * kPi, 3.0, kPi;
}

OptProblem make_to_problem(const ModelSpec& model, double omega, const ToObjectiveOptions& opts) {
  if (omega <= 0) throw std::invalid_argument("make_to_problem: omega must be > 0");
  OptProblem problem;
  to_parameter_bounds(problem.lower, problem.upper);
  const Eigen::Matrix4cd target = cz_gate();
  problem.objective = [model, omega, opts, target](const Eigen::VectorXd& params) {
    const Schedule schedule = to_schedule(to_params_from_vector(omega, params));
    const GateReport report = evaluate_gate(model, schedule, target, opts.propagation);
    return 1.0 - (opts.total_infidelity ? report.f_total : report.f_coherent);
  };
  return problem;
}

OptResult optimize_to_gate(const ModelSpec& model, double omega, const MultistartOptions& opts,
                           const ToObjectiveOptions& objective_opts) {
  return multistart(make_to_problem(model, omega, objective_opts), opts);
}

GateReport cross_evaluate(const Eigen::VectorXd& params, const ModelSpec& opt_model,
                          const ModelSpec& eval_model, double omega) {
  const Schedule schedule = to_schedule(to_params_from_vector(omega, params));
  GateReport report = evaluate_gate(eval_model, schedule, cz_gate());
  report.model_opt = opt_model.name();
  return report;
}

}  // namespace foersim
