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

#include "foersim/pulses.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "foersim/units.hpp"

namespace foersim {

namespace {
constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;
}  // namespace

double super_gaussian(double t, double t0, double tau, double omega_max, int degree) {
  if (tau <= 0) throw std::invalid_argument("super_gaussian: tau must be > 0");
  if (degree <= 0 || degree % 2 != 0)
    throw std::invalid_argument("super_gaussian: degree must be positive and even");
  const double u = (t - t0) / tau;
  return omega_max * std::exp(-std::pow(u, degree));
}

double super_gaussian_area(double tau, double omega_max, int degree) {
  if (tau <= 0) throw std::invalid_argument("super_gaussian_area: tau must be > 0");
  if (degree <= 0 || degree % 2 != 0)
    throw std::invalid_argument("super_gaussian_area: degree must be positive and even");
  return 2.0 * tau * std::tgamma(1.0 + 1.0 / degree) * omega_max;
}

Schedule pi_2pi_pi_schedule(const PiTwoPiPiParams& params, PiTwoPiPiGeometry* geometry) {
  const double omega_max = params.omega_max;
  const double f = params.overlap_fraction;
  if (omega_max <= 0) throw std::invalid_argument("pi_2pi_pi: omega_max must be > 0");
  if (f <= 0 || f >= 1) throw std::invalid_argument("pi_2pi_pi: overlap fraction must be in (0,1)");

  // Width from the area condition; the envelope reaches f * omega_max at a
  // distance tau * (ln 1/f)^(1/6) from its center.
  const double tau_pi = kPi / super_gaussian_area(1.0, omega_max);
  const double tau_2pi = 2.0 * tau_pi;
  const double reach = std::pow(std::log(1.0 / f), 1.0 / 6.0);
  const double d_pi = tau_pi * reach;
  const double d_2pi = tau_2pi * reach;

  PiTwoPiPiGeometry geom;
  geom.tau_pi = tau_pi;
  geom.tau_2pi = tau_2pi;
  geom.centers[0] = d_pi;
  geom.centers[1] = geom.centers[0] + d_pi + d_2pi;
  geom.centers[2] = geom.centers[1] + d_2pi + d_pi;
  geom.junctions[0] = geom.centers[0] + d_pi;
  geom.junctions[1] = geom.centers[1] + d_2pi;
  geom.duration = geom.centers[2] + d_pi;
  if (geometry) *geometry = geom;

  auto control_line = [&](double center_local, double tau) {
    DriveLine line;
    line.atom = Atom::A;
    line.qubit_level = 1;
    line.rydberg_level = 2;
    line.rabi = Waveform([=](double t) { return super_gaussian(t, center_local, tau, omega_max); });
    return line;
  };

  std::vector<Segment> segments(3);
  segments[0].duration = geom.junctions[0];
  segments[0].lines.push_back(control_line(geom.centers[0], tau_pi));

  segments[1].duration = geom.junctions[1] - geom.junctions[0];
  {
    DriveLine target;
    target.atom = Atom::B;
    target.qubit_level = 1;
    target.rydberg_level = 2;
    const double center_local = geom.centers[1] - geom.junctions[0];
    target.rabi = Waveform(
        [=](double t) { return super_gaussian(t, center_local, tau_2pi, omega_max); });
    segments[1].lines.push_back(target);
  }

  segments[2].duration = geom.duration - geom.junctions[1];
  segments[2].lines.push_back(control_line(geom.centers[2] - geom.junctions[1], tau_pi));

  return Schedule(std::move(segments), "pi_2pi_pi");
}

double arp_envelope(const ArpParams& params, double t) {
  const double t0 = params.t0_frac * params.T;
  const double tau = params.tau_frac * params.T;
  const double a = std::exp(-std::pow(t0 / tau, 4));
  const double u = (t - t0) / tau;
  return params.omega_max * (std::exp(-std::pow(u, 4)) - a) / (1.0 - a);
}

double arp_detuning(const ArpParams& params, double t) {
  return -params.delta_r * std::cos(kTwoPi * t / params.T);
}

Schedule arp_schedule(const ArpParams& params) {
  if (params.omega_max <= 0) throw std::invalid_argument("arp: omega_max must be > 0");
  if (params.T <= 0) throw std::invalid_argument("arp: T must be > 0");
  if (params.t0_frac <= 0 || params.t0_frac >= 1)
    throw std::invalid_argument("arp: peak must lie strictly inside the pulse");
  if (params.tau_frac <= 0) throw std::invalid_argument("arp: tau must be > 0");
  if (params.pulses < 1) throw std::invalid_argument("arp: need at least one pulse");

  Segment pulse;
  pulse.duration = params.T;
  for (Atom atom : {Atom::A, Atom::B}) {
    DriveLine line;
    line.atom = atom;
    line.qubit_level = 1;
    line.rydberg_level = 2;
    line.rabi = Waveform([params](double t) { return std::max(0.0, arp_envelope(params, t)); });
    line.detuning = Waveform([params](double t) { return arp_detuning(params, t); });
    pulse.lines.push_back(line);
  }

  std::vector<Segment> segments(static_cast<std::size_t>(params.pulses), pulse);
  return Schedule(std::move(segments), "arp");
}

double to_gate_duration(double omega) {
  if (omega <= 0) throw std::invalid_argument("to_gate: omega must be > 0");
  return 7.612 / omega;
}

double to_phase(const ToParams& p, double t) {
  const double T = to_gate_duration(p.omega);
  return p.amplitude * std::cos(p.omega_ratio * p.omega * (t - T / 2.0) - p.phi) +
         p.delta_ratio * p.omega * t;
}

double to_phase_derivative(const ToParams& p, double t) {
  const double T = to_gate_duration(p.omega);
  return -p.amplitude * p.omega_ratio * p.omega *
             std::sin(p.omega_ratio * p.omega * (t - T / 2.0) - p.phi) +
         p.delta_ratio * p.omega;
}

Schedule to_schedule(const ToParams& params) {
  Segment seg;
  seg.duration = to_gate_duration(params.omega);
  for (Atom atom : {Atom::A, Atom::B}) {
    DriveLine line;
    line.atom = atom;
    line.qubit_level = 1;
    line.rydberg_level = 2;
    line.rabi = Waveform(params.omega);
    if (params.amplitude == 0.0 && params.delta_ratio == 0.0) {
      line.phase = Waveform(0.0);
    } else {
      line.phase = Waveform([params](double t) { return to_phase(params, t); });
    }
    seg.lines.push_back(line);
  }
  return Schedule({seg}, "to");
}

Schedule rank_two_schedule(const RankTwoParams& params) {
  if (params.omega <= 0) throw std::invalid_argument("rank_two: omega must be > 0");
  if (params.V < 1e-6)
    throw std::invalid_argument("rank_two: V below 1e-6 rad/us, gap duration would overflow");

  Segment pulse;
  pulse.duration = kPi / params.omega;
  const struct {
    Atom atom;
    int qubit;
    int rydberg;
  } lines[] = {
      {Atom::A, 0, 3},  // g0 -> alpha
      {Atom::A, 1, 2},  // g1 -> a
      {Atom::B, 0, 2},  // g0 -> b
      {Atom::B, 1, 3},  // g1 -> beta
  };
  for (const auto& l : lines) {
    DriveLine line;
    line.atom = l.atom;
    line.qubit_level = l.qubit;
    line.rydberg_level = l.rydberg;
    line.rabi = Waveform(params.omega);
    pulse.lines.push_back(line);
  }

  Segment gap;
  gap.duration = kPi / (4.0 * params.V);

  return Schedule({pulse, gap, pulse}, "rank_two");
}

void check_compatibility(const ModelSpec& model, const Schedule& schedule) {
  if (schedule.min_levels_per_atom() > model.scheme().levels_per_atom())
    throw std::invalid_argument("schedule drives the exchange Rydberg level but model '" +
                                model.name() + "' does not provide it");
}

void assemble_drive_into(const Eigen::MatrixXcd& h_int, const LevelScheme& scheme,
                         const Segment& segment, double t, Eigen::MatrixXcd& h_out) {
  const int d = scheme.levels_per_atom();
  h_out = h_int;
  for (const auto& line : segment.lines) {
    const double omega = line.rabi(t);
    const double phi = line.phase(t);
    const double delta = line.detuning(t);
    const cd half_rabi = 0.5 * omega * std::exp(cd(0.0, phi));
    // Lift |q><r| on one atom to the pair space: the other atom's level k is a
    // spectator index.
    for (int k = 0; k < d; ++k) {
      int row, col, ryd;
      if (line.atom == Atom::A) {
        row = scheme.pair_index(line.qubit_level, k);
        col = scheme.pair_index(line.rydberg_level, k);
        ryd = col;
      } else {
        row = scheme.pair_index(k, line.qubit_level);
        col = scheme.pair_index(k, line.rydberg_level);
        ryd = col;
      }
      h_out(row, col) += half_rabi;
      h_out(col, row) += std::conj(half_rabi);
      if (delta != 0.0) h_out(ryd, ryd) -= delta;
    }
  }
}

Eigen::MatrixXcd assemble_drive(const ModelSpec& model, const Schedule& schedule, double t) {
  check_compatibility(model, schedule);
  if (t < 0 || t > schedule.total_duration())
    throw std::out_of_range("assemble_drive: time outside schedule");
  const Eigen::MatrixXcd h_int = build_interaction(model);
  double t_local = t;
  const auto& segments = schedule.segments();
  std::size_t index = 0;
  while (index + 1 < segments.size() && t_local > segments[index].duration) {
    t_local -= segments[index].duration;
    ++index;
  }
  Eigen::MatrixXcd h;
  assemble_drive_into(h_int, model.scheme(), segments[index], t_local, h);
  return h;
}

}  // namespace foersim
