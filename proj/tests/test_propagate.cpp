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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "foersim/propagate.hpp"
#include "foersim/units.hpp"

using namespace foersim;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd basis_state(const LevelScheme& scheme, int level_a, int level_b) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(scheme.pair_dim());
  psi(scheme.pair_index(level_a, level_b)) = 1.0;
  return psi;
}

Schedule gap_only(double duration) {
  Segment seg;
  seg.duration = duration;
  return Schedule({seg}, "gap");
}

Schedule single_line(double duration, Atom atom, int qubit, int rydberg, double omega) {
  Segment seg;
  seg.duration = duration;
  DriveLine line;
  line.atom = atom;
  line.qubit_level = qubit;
  line.rydberg_level = rydberg;
  line.rabi = Waveform(omega);
  seg.lines.push_back(line);
  return Schedule({seg}, "line");
}

}  // namespace

TEST_CASE("free evolution of a counting-operator eigenstate") {
  const ModelSpec model(OneEigenstate{2.0});
  const auto scheme = model.scheme();
  // |g0 r> is untouched by the condensed shift; T_R integrates <Pi> = 1.
  const double T = 0.7;
  const auto traj = propagate(model, gap_only(T), {basis_state(scheme, 0, 2)});
  CHECK((traj.entries[0].final_state - basis_state(scheme, 0, 2)).norm() < 1e-12);
  CHECK(traj.entries[0].t_r == doctest::Approx(T).epsilon(1e-12));

  const auto traj_q = propagate(model, gap_only(T), {basis_state(scheme, 0, 1)});
  CHECK(traj_q.entries[0].t_r == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("exchange gap: quarter-period beat from -|ab>") {
  const double v = from_mhz(3.0);
  const ModelSpec model(TwoEigenstate{v});
  const auto scheme = model.scheme();
  const double t_gap = kPi / (4.0 * v);

  Eigen::VectorXcd psi0 = -basis_state(scheme, 2, 2);  // -|ab>
  const auto traj = propagate(model, gap_only(t_gap), {psi0});
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(scheme.pair_dim());
  expected(scheme.idx_ab()) = -1.0 / std::sqrt(2.0);
  expected(scheme.idx_alpha_beta()) = cd(0.0, 1.0) / std::sqrt(2.0);
  CHECK((traj.entries[0].final_state - expected).norm() < 1e-8);

  // Spectator pair states are exact eigenstates and stay put.
  for (int idx : {scheme.idx_a_beta(), scheme.idx_alpha_b()}) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(scheme.pair_dim());
    psi(idx) = 1.0;
    const auto spectator = propagate(model, gap_only(t_gap), {psi});
    CHECK((spectator.entries[0].final_state - psi).norm() < 1e-10);
  }

  // <Pi> = 2 throughout the gap for each of these inputs.
  CHECK(traj.entries[0].t_r == doctest::Approx(2.0 * t_gap).epsilon(1e-12));
}

TEST_CASE("blockaded Rabi oscillation matches the two-level closed form") {
  const double omega = 1.0, v = 1.0;
  const ModelSpec model(OneEigenstate{v});
  const auto scheme = model.scheme();
  const Eigen::VectorXcd psi0 = basis_state(scheme, 1, 2);  // |g1 r>, partner pinned

  const double period = kTwoPi / std::sqrt(omega * omega + v * v);
  for (int i = 1; i <= 40; ++i) {
    const double t = period * i / 40.0;
    const auto traj = propagate(model, single_line(t, Atom::A, 1, 2, omega), {psi0});
    const double p_rr = std::norm(traj.entries[0].final_state(scheme.idx_ab()));
    CHECK(std::abs(p_rr - analytic_blockade_population(omega, v, t)) < 1e-8);
  }
}

TEST_CASE("analytic blockade population: anchors") {
  CHECK(analytic_blockade_population(1.0, 1.0, 0.0) == 0.0);
  CHECK(analytic_blockade_population(1.0, 0.0, kPi) == doctest::Approx(1.0));
  // At the half period of the dressed oscillation the transfer peaks at
  // Omega^2/(Omega^2+V^2) = 1/2.
  const double t_half = kPi / std::sqrt(2.0);
  CHECK(analytic_blockade_population(1.0, 1.0, t_half) == doctest::Approx(0.5));
}

TEST_CASE("blocked-return amplitude: closed form vs brute-force three-level propagation") {
  const double omega = 0.2, v = 1.0;
  CHECK(analytic_a1_amplitude(omega, v, 0.0).real() == doctest::Approx(1.0));
  CHECK(analytic_a1_amplitude(0.0, v, 3.7).real() == doctest::Approx(1.0));

  // Independent oracle: diagonalize the 3x3 chain {|a1>, |ab>, |alpha beta>}.
  Eigen::Matrix3cd h;
  h << 0.0, omega / 2.0, 0.0, omega / 2.0, 0.0, v, 0.0, v, 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  const double t = kTwoPi / omega;
  Eigen::Vector3cd c = es.eigenvectors().adjoint() * Eigen::Vector3cd(1.0, 0.0, 0.0);
  for (int k = 0; k < 3; ++k) c(k) *= std::exp(cd(0.0, -es.eigenvalues()(k) * t));
  const cd amp = (es.eigenvectors() * c)(0);
  CHECK(std::abs(amp - analytic_a1_amplitude(omega, v, t)) < 1e-10);
  CHECK(std::abs(amp.imag()) < 1e-10);
}

TEST_CASE("blocked-return amplitude: realized inside the full pair propagation") {
  const double v = 1.0, omega = 0.2;
  const ModelSpec model(TwoEigenstate{v});
  const auto scheme = model.scheme();
  const Eigen::VectorXcd psi0 = basis_state(scheme, 2, 1);  // |a g1>
  for (double t : {1.3, kTwoPi / omega, 17.0}) {
    const auto traj = propagate(model, single_line(t, Atom::B, 1, 2, omega), {psi0});
    const cd amp = traj.entries[0].final_state(scheme.pair_index(2, 1));
    CHECK(std::abs(amp - analytic_a1_amplitude(omega, v, t)) < 1e-9);
  }
}

TEST_CASE("residual light shift of the blocked state") {
  CHECK(stark_phase_one_eigenstate(0.0, 1.0) == 0.0);
  CHECK(stark_phase_one_eigenstate(0.1, 1.0) == doctest::Approx(kPi / 20.0));

  // Two-level check in the condensed model: |r g1> driven on B for a 2pi
  // pulse accumulates arg = pi Omega / (2 V) up to O((Omega/V)^2) wiggles.
  const double v = 1.0, omega = 0.05;
  const ModelSpec model(OneEigenstate{v});
  const auto scheme = model.scheme();
  const Eigen::VectorXcd psi0 = basis_state(scheme, 2, 1);  // |r g1>
  const auto traj = propagate(model, single_line(kTwoPi / omega, Atom::B, 1, 2, omega), {psi0});
  const double phase = std::arg(traj.entries[0].final_state(scheme.pair_index(2, 1)));
  CHECK(std::abs(phase / stark_phase_one_eigenstate(omega, v) - 1.0) < 0.1);
}

TEST_CASE("norm conservation across the pulse library") {
  const double omega_max = from_mhz(10.0), v = from_mhz(5.0);
  const ModelSpec model(TwoEigenstate{v});
  const std::vector<Schedule> schedules = {
      pi_2pi_pi_schedule({omega_max, 1e-3}),
      arp_schedule({omega_max, from_mhz(13.0), 0.4, 0.5, 0.175, 2}),
      to_schedule({omega_max, 0.2, 1.0, 1.1, 0.3}),
      rank_two_schedule({omega_max, v}),
  };
  for (const auto& schedule : schedules) {
    const auto traj = propagate(model, schedule, computational_states(model.scheme()));
    for (const auto& entry : traj.entries) {
      CHECK(std::abs(entry.survival_norm - 1.0) < 1e-9);
      CHECK(entry.t_r >= 0.0);
      CHECK(entry.t_r <= 2.0 * schedule.total_duration());
      CHECK(entry.t_r_per_segment.size() == schedule.segments().size());
      double total = 0.0;
      for (double part : entry.t_r_per_segment) total += part;
      CHECK(total == doctest::Approx(entry.t_r).epsilon(1e-12));
    }
  }
}

TEST_CASE("matrix-exponential and adaptive-integrator paths agree") {
  const double omega = from_mhz(10.0), v = from_mhz(2.0);
  const ModelSpec model(TwoEigenstate{v});
  const Schedule schedule = rank_two_schedule({omega, v});
  const auto inputs = computational_states(model.scheme());

  PropagationOptions forced;
  forced.force_integrator = true;
  const auto exact = propagate(model, schedule, inputs);
  const auto stepped = propagate(model, schedule, inputs, forced);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    CHECK((exact.entries[k].final_state - stepped.entries[k].final_state).norm() < 1e-9);
    CHECK(exact.entries[k].t_r == doctest::Approx(stepped.entries[k].t_r).epsilon(1e-9));
  }
}

TEST_CASE("pre-RWA dynamics: exchange block identical, spectators parked") {
  const double v = 1.0;
  const double detuning = 1000.0 * v;
  const ModelSpec pre(PreRwa{v, v, detuning, -detuning});
  const ModelSpec two(TwoEigenstate{v});
  const auto scheme = pre.scheme();
  const double t = 0.9 / v;

  Eigen::VectorXcd psi0 = basis_state(scheme, 2, 2);  // |ab>
  const auto traj_pre = propagate(pre, gap_only(t), {psi0});
  const auto traj_two = propagate(two, gap_only(t), {psi0});
  // Exact block diagonality: restricted to {|ab>, |alpha beta>} the two
  // models generate identical dynamics.
  for (int idx : {scheme.idx_ab(), scheme.idx_alpha_beta()}) {
    CHECK(std::abs(traj_pre.entries[0].final_state(idx) - traj_two.entries[0].final_state(idx)) <
          1e-12);
  }

  // Spectator block: stationary up to phases at large detuning.
  Eigen::VectorXcd spectator = basis_state(scheme, 2, 3);  // |a beta>
  const auto traj_spec = propagate(pre, gap_only(t), {spectator});
  CHECK(std::norm(traj_spec.entries[0].final_state(scheme.idx_a_beta())) > 1.0 - 1e-6);
}

TEST_CASE("non-Hermitian decay: norm loss consistent with Gamma * T_R") {
  const double v = from_mhz(5.0), omega = from_mhz(10.0);
  const double tau_r = 20.0;  // short lifetime so the effect is visible
  const ModelSpec model(TwoEigenstate{v}, tau_r);
  const Schedule schedule = rank_two_schedule({omega, v});

  PropagationOptions opts;
  opts.decay = DecayMode::NonHermitian;
  const auto traj = propagate(model, schedule, computational_states(model.scheme()), opts);
  for (const auto& entry : traj.entries) {
    const double loss = 1.0 - entry.survival_norm * entry.survival_norm;
    const double predicted = entry.t_r / tau_r;
    // First-order equivalence of the two decay treatments.
    CHECK(std::abs(loss - predicted) < predicted * predicted * 5.0 + 1e-12);
  }
}

TEST_CASE("sampled trajectories expose the Rydberg population series") {
  const double v = from_mhz(3.0);
  const ModelSpec model(TwoEigenstate{v});
  PropagationOptions opts;
  opts.sample_points = 101;
  const auto scheme = model.scheme();
  const auto traj =
      propagate(model, gap_only(kPi / (4.0 * v)), {basis_state(scheme, 2, 2)}, opts);
  REQUIRE(traj.entries[0].samples.size() == 101);
  for (const auto& sample : traj.entries[0].samples) {
    CHECK(sample.p_r == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sample.populations.size() == scheme.pair_dim());
  }
  CHECK(traj.entries[0].samples.front().t == 0.0);
  CHECK(traj.entries[0].samples.back().t == doctest::Approx(kPi / (4.0 * v)));
}

TEST_CASE("propagate input validation") {
  const ModelSpec model(TwoEigenstate{1.0});
  const auto scheme = model.scheme();
  CHECK_THROWS(propagate(model, gap_only(1.0), {}));
  CHECK_THROWS(propagate(model, gap_only(1.0), {Eigen::VectorXcd::Zero(16)}));  // unnormalized
  CHECK_THROWS(propagate(model, gap_only(1.0), {Eigen::VectorXcd::Ones(9) / 3.0}));  // wrong dim
  // Rank-two drive cannot run under the condensed model.
  const ModelSpec one(OneEigenstate{1.0});
  CHECK_THROWS(propagate(one, rank_two_schedule({1.0, 1.0}),
                         {basis_state(LevelScheme::one_eigenstate(), 0, 0)}));
}
