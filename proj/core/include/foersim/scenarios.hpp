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

#include <cstdint>
#include <string>
#include <vector>

#include "foersim/config.hpp"
#include "foersim/csv.hpp"
#include "foersim/gate_opt.hpp"

namespace foersim {

/// Resolved run parameters. Defaults reproduce the headline sweeps; every
/// field can be overridden from the config file.
struct RunConfig {
  std::string scenario;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  bool plots = true;

  double tau_r_us = 150.0;
  double omega_max_mhz = 10.0;  // drive frequency nu; omega = 2*pi*nu

  std::vector<double> v_grid_mhz;          // fidelity sweeps
  std::vector<double> v_over_omega_grid;   // rank-two eta sweep
  std::vector<double> v_list_mhz;          // rank-two eta: one curve per V
  std::vector<double> o1_grid;             // imperfect-resonance sweep
  double imperfect_v_eff_mhz = 100.0;

  // pi-2pi-pi
  double overlap_fraction = 1e-3;

  // ARP defaults (both exposed; starting point found by a coarse scan)
  double arp_delta_r_mhz = 13.0;
  double arp_pulse_t_us = 0.0;  // 0 = derive from omega_max (4.3 Rabi cycles)
  double arp_t0_frac = 0.5;
  double arp_tau_frac = 0.175;
  int arp_pulses = 2;

  // phase-modulated gate optimization
  int opt_n_random = 32;
  int opt_n_gaussian = 16;
  double opt_sigma_rel = 0.1;
  std::uint64_t opt_max_evals = 0;
  bool opt_total_infidelity = false;

  // certification
  int certify_samples = 100000;
  std::vector<double> oracle_s{0.2, 0.5, 0.8};
  int oracle_starts = 48;
  double certify_v_mhz = 10.0;

  int resolved_threads() const;
  std::string canonical_text() const;  // hashed into the manifest
};

RunConfig default_run_config(const std::string& scenario);
RunConfig run_config_from_file(const ConfigFile& config);

struct ScenarioResult {
  std::string scenario;
  std::vector<std::string> artifacts;  // paths written (CSV, SVG, manifest)
  std::string summary;                 // human-readable headline numbers
  bool assertions_ok = true;           // certify-style scenarios may fail
};

std::vector<std::string> list_scenarios();

/// Execute one named scenario: emit its CSV (deterministic bytes for a fixed
/// config and seed), optional SVG panels, a manifest, and a summary.
ScenarioResult run_scenario(const RunConfig& config);

/// Build a model from a [model] section (variant + parameters, MHz inputs).
ModelSpec model_from_config(const ConfigFile& config);

/// Build a schedule from a [protocol] section (name + parameters).
Schedule schedule_from_config(const ConfigFile& config, double omega_max, double v_for_gap);

/// Waveform dump table: t_us, omega/phase/detuning per atom (first driven
/// line per atom; crossed drives share one envelope by construction).
CsvTable waveform_table(const Schedule& schedule, int n_points);

/// Trajectory dump table for one initial computational state: t_us, P_r, and
/// per-basis-state populations.
CsvTable trajectory_table(const ModelSpec& model, const Schedule& schedule, int input_index,
                          int n_points);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a, std::uint64_t salt_b);

}  // namespace foersim
