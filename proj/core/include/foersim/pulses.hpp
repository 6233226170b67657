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
#include <array>

#include "foersim/model.hpp"
#include "foersim/schedule.hpp"

namespace foersim {

/// omega_max * exp(-((t - t0)/tau)^degree), degree even.
double super_gaussian(double t, double t0, double tau, double omega_max, int degree = 6);

/// Closed-form area of the envelope over the whole real line,
/// 2 * tau * Gamma(1 + 1/degree) * omega_max.
double super_gaussian_area(double tau, double omega_max, int degree = 6);

// ---------------------------------------------------------------------------
// pi - 2pi - pi (control / target / control), super-Gaussian envelopes.
// Pulse widths are fixed by the area condition (pi, 2pi, pi over the full
// envelope); adjacent envelopes cross at overlap_fraction * omega_max, and the
// same fraction sets the start and end of the schedule.
// ---------------------------------------------------------------------------
struct PiTwoPiPiParams {
  double omega_max;                 // rad/us
  double overlap_fraction = 1e-3;  // envelope value at junctions, relative
};

struct PiTwoPiPiGeometry {
  double tau_pi = 0.0;
  double tau_2pi = 0.0;
  std::array<double, 3> centers{};    // global pulse-center times
  std::array<double, 2> junctions{};  // segment boundaries
  double duration = 0.0;
};

Schedule pi_2pi_pi_schedule(const PiTwoPiPiParams& params,
                            PiTwoPiPiGeometry* geometry = nullptr);

// ---------------------------------------------------------------------------
// Adiabatic rapid passage: both atoms driven simultaneously with
//   Omega(t) = omega_max * (exp(-(t-t0)^4/tau^4) - a) / (1 - a),
//   a = exp(-(t0/tau)^4),  Delta(t) = -delta_r * cos(2 pi t / T),
// composed of `pulses` identical back-to-back sweeps.
// ---------------------------------------------------------------------------
struct ArpParams {
  double omega_max;   // rad/us
  double delta_r;     // rad/us, detuning sweep amplitude
  double T;           // us, single-pulse duration
  double t0_frac = 0.5;    // peak position t0 = t0_frac * T
  double tau_frac = 0.175; // width tau = tau_frac * T
  int pulses = 2;
};

Schedule arp_schedule(const ArpParams& params);

double arp_envelope(const ArpParams& params, double t);
double arp_detuning(const ArpParams& params, double t);

// ---------------------------------------------------------------------------
// Phase-modulated constant-Rabi gate: both atoms driven at constant Omega with
//   Phi(t) = A * cos(omega_ratio * Omega * (t - T/2) - phi)
//          + delta_ratio * Omega * t,
// where T = 7.612 / Omega. The modulation frequency and detuning slope are
// stored as dimensionless ratios to Omega.
// ---------------------------------------------------------------------------
struct ToParams {
  double omega;        // rad/us
  double delta_ratio;  // delta / Omega
  double amplitude;    // A, rad
  double omega_ratio;  // omega / Omega
  double phi;          // rad
};

double to_gate_duration(double omega);
double to_phase(const ToParams& params, double t);
double to_phase_derivative(const ToParams& params, double t);
Schedule to_schedule(const ToParams& params);

// ---------------------------------------------------------------------------
// Crossed-drive pi - gap - pi: square pi pulses (duration pi/Omega) on all
// four lines (A: g0->alpha, g1->a; B: g0->b, g1->beta), a free-evolution gap
// of pi/(4V), and the same pi pulses again. Rank two.
// ---------------------------------------------------------------------------
struct RankTwoParams {
  double omega;  // rad/us
  double V;      // rad/us, exchange coupling (sets the gap length)
};

Schedule rank_two_schedule(const RankTwoParams& params);

// ---------------------------------------------------------------------------
// Drive assembly
// ---------------------------------------------------------------------------

/// Total H(t) = H_int + sum over lines of
///   (Omega/2)(e^{i phi} |q><r| + h.c.) - Delta |r><r|,
/// lifted to the pair space, with the interaction passed in so repeated calls
/// do not rebuild it. t is segment-local.
void assemble_drive_into(const Eigen::MatrixXcd& h_int, const LevelScheme& scheme,
                         const Segment& segment, double t, Eigen::MatrixXcd& h_out);

/// Convenience overload at a schedule-global time.
Eigen::MatrixXcd assemble_drive(const ModelSpec& model, const Schedule& schedule, double t);

/// Throws if the schedule drives levels the model does not have.
void check_compatibility(const ModelSpec& model, const Schedule& schedule);

}  // namespace foersim
