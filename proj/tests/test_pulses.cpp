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
#include <numbers>
#include <random>

#include "foersim/model.hpp"
#include "foersim/pulses.hpp"
#include "foersim/units.hpp"

using namespace foersim;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite-Simpson quadrature; the plain independent oracle used to check
// closed-form pulse areas.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 20001) {
  if (n % 2 == 0) ++n;
  const double h = (b - a) / (n - 1);
  double sum = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("super_gaussian: peak, width point and the area oracle") {
  CHECK(super_gaussian(2.0, 2.0, 0.5, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(super_gaussian(2.5, 2.0, 0.5, 3.0) == doctest::Approx(3.0 * std::exp(-1.0)));

  const double tau = 0.37, omega_max = 5.1;
  const double numeric = simpson(
      [&](double t) { return super_gaussian(t, 0.0, tau, omega_max); }, -6.0 * tau, 6.0 * tau);
  CHECK(super_gaussian_area(tau, omega_max) == doctest::Approx(numeric).epsilon(1e-9));
  CHECK(super_gaussian_area(tau, omega_max) ==
        doctest::Approx(1.85544 * tau * omega_max).epsilon(1e-5));
  CHECK_THROWS(super_gaussian(0.0, 0.0, -1.0, 1.0));
  CHECK_THROWS(super_gaussian(0.0, 0.0, 1.0, 1.0, 5));
}

TEST_CASE("pi-2pi-pi: pulse areas from quadrature") {
  const double omega_max = from_mhz(10.0);
  PiTwoPiPiGeometry geom;
  const Schedule schedule = pi_2pi_pi_schedule({omega_max, 1e-3}, &geom);

  const double area_pi = simpson(
      [&](double t) { return super_gaussian(t, 0.0, geom.tau_pi, omega_max); },
      -6.0 * geom.tau_pi, 6.0 * geom.tau_pi);
  const double area_2pi = simpson(
      [&](double t) { return super_gaussian(t, 0.0, geom.tau_2pi, omega_max); },
      -6.0 * geom.tau_2pi, 6.0 * geom.tau_2pi);
  CHECK(area_pi == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(area_2pi == doctest::Approx(2.0 * kPi).epsilon(1e-6));
  CHECK(schedule.rank() == 1);
  CHECK(schedule.segments().size() == 3);
}

TEST_CASE("pi-2pi-pi: envelopes cross at the overlap fraction") {
  const double omega_max = 3.0, fraction = 1e-3;
  PiTwoPiPiGeometry geom;
  const Schedule schedule = pi_2pi_pi_schedule({omega_max, fraction}, &geom);

  // At each junction both neighbouring envelopes sit at fraction * omega_max.
  const double left_end = super_gaussian(geom.junctions[0], geom.centers[0], geom.tau_pi, omega_max);
  const double right_start =
      super_gaussian(geom.junctions[0], geom.centers[1], geom.tau_2pi, omega_max);
  CHECK(left_end == doctest::Approx(fraction * omega_max).epsilon(1e-9));
  CHECK(right_start == doctest::Approx(fraction * omega_max).epsilon(1e-9));

  // Same fraction sets the schedule edges.
  const double at_start = super_gaussian(0.0, geom.centers[0], geom.tau_pi, omega_max);
  const double at_end = super_gaussian(geom.duration, geom.centers[2], geom.tau_pi, omega_max);
  CHECK(at_start == doctest::Approx(fraction * omega_max).epsilon(1e-9));
  CHECK(at_end == doctest::Approx(fraction * omega_max).epsilon(1e-9));

  // Segment-local waveforms agree with the global envelope picture.
  const auto& segs = schedule.segments();
  CHECK(segs[0].lines[0].rabi(segs[0].duration) == doctest::Approx(fraction * omega_max));
  CHECK(segs[1].lines[0].rabi(0.0) == doctest::Approx(fraction * omega_max));
  CHECK(schedule.total_duration() == doctest::Approx(geom.duration));
}

TEST_CASE("arp: envelope and detuning anchors") {
  ArpParams params;
  params.omega_max = from_mhz(10.0);
  params.delta_r = from_mhz(13.0);
  params.T = 0.4;
  const Schedule schedule = arp_schedule(params);

  CHECK(arp_envelope(params, 0.0) == doctest::Approx(0.0).scale(params.omega_max));
  CHECK(arp_envelope(params, 0.5 * params.T) == doctest::Approx(params.omega_max));
  CHECK(arp_detuning(params, 0.0) == doctest::Approx(-params.delta_r));
  CHECK(arp_detuning(params, 0.5 * params.T) == doctest::Approx(params.delta_r));

  CHECK(schedule.rank() == 1);
  CHECK(schedule.segments().size() == 2);  // two identical sweeps
  CHECK(schedule.total_duration() == doctest::Approx(2.0 * params.T));
}

TEST_CASE("phase-modulated gate: duration, anchors and smoothness") {
  CHECK(to_gate_duration(1.0) == doctest::Approx(7.612));

  ToParams p;
  p.omega = 2.0;
  p.delta_ratio = 0.3;
  p.amplitude = 1.2;
  p.omega_ratio = 0.9;
  p.phi = 0.4;
  const double T = to_gate_duration(p.omega);
  CHECK(to_phase(p, T / 2.0) ==
        doctest::Approx(p.amplitude * std::cos(-p.phi) + p.delta_ratio * p.omega * T / 2.0));

  ToParams flat = p;
  flat.amplitude = 0.0;
  flat.delta_ratio = 0.0;
  const Schedule trivial = to_schedule(flat);
  CHECK(trivial.segments()[0].lines[0].phase.is_constant());
  CHECK(trivial.segments()[0].lines[0].phase(1.0) == 0.0);

  // Finite differences of the phase match the analytic derivative.
  const double h = 1e-7;
  for (int i = 0; i < 1000; ++i) {
    const double t = T * (i + 0.5) / 1000.0;
    const double fd = (to_phase(p, t + h) - to_phase(p, t - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(to_phase_derivative(p, t)).epsilon(1e-6));
  }

  const Schedule schedule = to_schedule(p);
  CHECK(schedule.rank() == 1);
  CHECK(schedule.total_duration() == doctest::Approx(T));
}

TEST_CASE("rank-two schedule: durations, rank and guards") {
  const double omega = from_mhz(10.0), v = from_mhz(1.0);
  const Schedule schedule = rank_two_schedule({omega, v});
  const auto& segs = schedule.segments();
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].duration == doctest::Approx(kPi / omega));
  CHECK(segs[1].duration == doctest::Approx(kPi / (4.0 * v)));
  CHECK(segs[2].duration == doctest::Approx(kPi / omega));
  CHECK(segs[1].lines.empty());
  CHECK(segs[0].lines.size() == 4);
  CHECK(schedule.rank() == 2);
  CHECK(schedule.min_levels_per_atom() == 4);
  CHECK_THROWS(rank_two_schedule({omega, 1e-7}));
  CHECK_THROWS(rank_two_schedule({0.0, v}));
}

TEST_CASE("assemble_drive: free evolution reproduces the static interaction") {
  const ModelSpec model(TwoEigenstate{from_mhz(5.0)});
  const Schedule schedule = rank_two_schedule({from_mhz(10.0), from_mhz(5.0)});
  const auto h_int = build_interaction(model);
  const double t_gap = schedule.segments()[0].duration + 0.5 * schedule.segments()[1].duration;
  const auto h = assemble_drive(model, schedule, t_gap);
  CHECK((h - h_int).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assemble_drive: zero-amplitude drive reduces to the interaction") {
  const ModelSpec model(TwoEigenstate{1.0});
  Segment seg;
  seg.duration = 1.0;
  DriveLine line;
  line.atom = Atom::A;
  line.qubit_level = 1;
  line.rydberg_level = 2;
  line.rabi = Waveform(0.0);
  seg.lines.push_back(line);
  Eigen::MatrixXcd h;
  assemble_drive_into(build_interaction(model), model.scheme(), seg, 0.3, h);
  CHECK((h - build_interaction(model)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("assemble_drive: tensor lift of a single line") {
  const ModelSpec model(TwoEigenstate{1.0});
  const auto scheme = model.scheme();
  Segment seg;
  seg.duration = 1.0;
  DriveLine line;
  line.atom = Atom::A;
  line.qubit_level = 1;
  line.rydberg_level = 2;
  line.rabi = Waveform(1.0);
  seg.lines.push_back(line);
  Eigen::MatrixXcd h;
  assemble_drive_into(build_interaction(model), scheme, seg, 0.0, h);
  for (int k = 0; k < 4; ++k) {
    CHECK(h(scheme.pair_index(1, k), scheme.pair_index(2, k)) == std::complex<double>(0.5, 0.0));
    CHECK(h(scheme.pair_index(2, k), scheme.pair_index(1, k)) == std::complex<double>(0.5, 0.0));
  }
  // Linear in the Rabi amplitude.
  line.rabi = Waveform(2.0);
  Segment seg2;
  seg2.duration = 1.0;
  seg2.lines.push_back(line);
  Eigen::MatrixXcd h2;
  assemble_drive_into(build_interaction(model), scheme, seg2, 0.0, h2);
  CHECK(((h2 - build_interaction(model)) - 2.0 * (h - build_interaction(model)))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("assemble_drive: Hermitian at random times for every protocol") {
  const double omega_max = from_mhz(10.0), v = from_mhz(3.0);
  const ModelSpec model(TwoEigenstate{v});
  const std::vector<Schedule> schedules = {
      pi_2pi_pi_schedule({omega_max, 1e-3}),
      arp_schedule({omega_max, from_mhz(13.0), 0.4, 0.5, 0.175, 2}),
      to_schedule({omega_max, 0.2, 1.0, 1.1, 0.3}),
      rank_two_schedule({omega_max, v}),
  };
  std::mt19937_64 rng(11);
  for (const auto& schedule : schedules) {
    std::uniform_real_distribution<double> times(0.0, schedule.total_duration());
    for (int i = 0; i < 100; ++i) {
      const auto h = assemble_drive(model, schedule, times(rng));
      CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("rank-two drive is incompatible with the condensed model") {
  const ModelSpec one(OneEigenstate{from_mhz(5.0)});
  const Schedule schedule = rank_two_schedule({from_mhz(10.0), from_mhz(5.0)});
  CHECK_THROWS(check_compatibility(one, schedule));
  CHECK_NOTHROW(check_compatibility(ModelSpec(TwoEigenstate{from_mhz(5.0)}), schedule));
  // Rank-one protocols run under both schemes.
  CHECK_NOTHROW(check_compatibility(one, pi_2pi_pi_schedule({from_mhz(10.0)})));
}

TEST_CASE("schedule validation") {
  CHECK_THROWS(Schedule({}));
  Segment bad;
  bad.duration = -1.0;
  CHECK_THROWS(Schedule({bad}));
  Segment seg;
  seg.duration = 1.0;
  DriveLine line;
  line.qubit_level = 2;  // must start from a qubit level
  line.rydberg_level = 2;
  seg.lines.push_back(line);
  CHECK_THROWS(Schedule({seg}));
}
