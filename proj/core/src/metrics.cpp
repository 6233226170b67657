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

#include "foersim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace foersim {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// |Tr(U^dag K M)| as a function of the two Z angles. With w = diag(M U^dag),
// the trace is w0 + e^{i zb} w1 + e^{i za} w2 + e^{i(za+zb)} w3; each
// coordinate update below is an exact 1-D phase alignment.
double aligned_trace(const Eigen::Vector4cd& w, double& za, double& zb) {
  double best = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const cd ea(std::cos(za), std::sin(za));
    const cd a_group = w(0) + ea * w(2);
    const cd b_group = w(1) + ea * w(3);
    zb = std::arg(a_group) - std::arg(b_group);
    const cd eb(std::cos(zb), std::sin(zb));
    const cd a2 = w(0) + eb * w(1);
    const cd b2 = w(2) + eb * w(3);
    za = std::arg(a2) - std::arg(b2);
    const double value = std::abs(a2) + std::abs(b2);
    if (std::abs(value - best) < 1e-15) {
      best = value;
      break;
    }
    best = value;
  }
  return best;
}

}  // namespace

GateFidelityResult gate_fidelity(const Eigen::Matrix4cd& achieved, const Eigen::Matrix4cd& target,
                                 bool local_phase_freedom) {
  const double hs = (achieved * achieved.adjoint()).trace().real();
  const Eigen::Vector4cd w = (achieved * target.adjoint()).diagonal();

  GateFidelityResult result;
  double best_trace;
  if (!local_phase_freedom) {
    best_trace = std::abs(w.sum());
  } else {
    best_trace = 0.0;
    double best_za = 0.0, best_zb = 0.0;
    for (int ia = 0; ia < 4; ++ia)
      for (int ib = 0; ib < 4; ++ib) {
        double za = 0.5 * kPi * ia;
        double zb = 0.5 * kPi * ib;
        const double value = aligned_trace(w, za, zb);
        if (value > best_trace) {
          best_trace = value;
          best_za = za;
          best_zb = zb;
        }
      }
    result.phases.z_a = best_za;
    result.phases.z_b = best_zb;
    const cd ea(std::cos(best_za), std::sin(best_za));
    const cd eb(std::cos(best_zb), std::sin(best_zb));
    result.phases.global = -std::arg(w(0) + eb * w(1) + ea * w(2) + ea * eb * w(3));
  }
  result.fidelity = (hs + best_trace * best_trace) / 20.0;
  return result;
}

Eigen::Matrix4cd cz_gate() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = -1.0;
  return u;
}

Eigen::Matrix4cd sqrt_iswap_dagger() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  u(0, 0) = 1.0;
  u(3, 3) = 1.0;
  u(1, 1) = s;
  u(2, 2) = s;
  u(1, 2) = cd(0.0, -s);
  u(2, 1) = cd(0.0, -s);
  return u;
}

Eigen::Matrix4cd target_for_protocol(const std::string& protocol) {
  if (protocol == "rank_two") return sqrt_iswap_dagger();
  return cz_gate();
}

Eigen::Matrix4cd qubit_block(const LevelScheme& scheme, const Trajectory& trajectory) {
  if (trajectory.entries.size() != 4)
    throw std::invalid_argument("qubit_block: need the four computational inputs");
  Eigen::Matrix4cd m;
  for (int j = 0; j < 4; ++j) {
    const auto& psi = trajectory.entries[static_cast<std::size_t>(j)].final_state;
    for (int i = 0; i < 4; ++i)
      m(i, j) = psi(scheme.qubit_index(i / 2, i % 2));
  }
  return m;
}

GateReport evaluate_gate(const ModelSpec& model, const Schedule& schedule,
                         const Eigen::Matrix4cd& target, const PropagationOptions& opts) {
  const LevelScheme scheme = model.scheme();
  const Trajectory traj = propagate(model, schedule, computational_states(scheme), opts);
  const auto fid = gate_fidelity(qubit_block(scheme, traj), target, true);

  GateReport report;
  report.f_coherent = fid.fidelity;
  report.phases = fid.phases;
  double t_r = 0.0;
  for (const auto& entry : traj.entries) t_r += entry.t_r;
  report.mean_t_r = t_r / 4.0;
  report.decay_error = model.decay_rate() * report.mean_t_r;
  report.f_total = report.f_coherent * (1.0 - report.decay_error);
  report.eta = model.effective_strength() * report.mean_t_r;
  report.protocol = schedule.protocol();
  report.model_eval = model.name();
  report.model_opt = model.name();
  return report;
}

double eta_of_gate(const ModelSpec& model, const Schedule& schedule,
                   const PropagationOptions& opts) {
  const Trajectory traj = propagate(model, schedule, computational_states(model.scheme()), opts);
  double t_r = 0.0;
  for (const auto& entry : traj.entries) t_r += entry.t_r;
  return model.effective_strength() * t_r / 4.0;
}

double fidelity_upper_bound(double V, double tau_r, int rank) {
  if (V <= 0 || tau_r <= 0) throw std::invalid_argument("fidelity_upper_bound: V, tau_R > 0");
  double eta_min;
  if (rank == 2)
    eta_min = 0.5 * kPi;
  else if (rank == 1)
    eta_min = 1.0 + 0.5 * kPi;
  else
    throw std::invalid_argument("fidelity_upper_bound: rank must be 1 or 2");
  return 1.0 - eta_min / (V * tau_r);
}

}  // namespace foersim
