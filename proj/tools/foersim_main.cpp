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

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "foersim/scenarios.hpp"
#include "foersim/units.hpp"
#include "foersim/version.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 runtime error,
// 3 failed certification assertion.
constexpr int kOkExit = 0;
constexpr int kConfigExit = 1;
constexpr int kRuntimeExit = 2;
constexpr int kAssertExit = 3;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = -1;
  bool no_plots = false;
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_path, "configuration file");
  app->add_option("--out", flags.out_dir, "output directory");
  app->add_option("--seed", flags.seed, "random seed");
  app->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
  app->add_flag("--no-plots", flags.no_plots, "skip SVG emission");
}

foersim::RunConfig resolve_config(const CommonFlags& flags, const std::string& scenario) {
  foersim::RunConfig cfg;
  if (!flags.config_path.empty()) {
    auto file = foersim::ConfigFile::parse_file(flags.config_path);
    if (!scenario.empty()) file.set("scenario", "name", scenario);
    cfg = foersim::run_config_from_file(file);
  } else {
    if (scenario.empty()) throw foersim::ConfigError("no scenario given (name or --config)");
    cfg = foersim::default_run_config(scenario);
  }
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.threads >= 0) cfg.threads = flags.threads;
  if (flags.no_plots) cfg.plots = false;
  return cfg;
}

int execute(const foersim::RunConfig& cfg) {
  const auto result = foersim::run_scenario(cfg);
  std::cout << "scenario " << result.scenario << "\n" << result.summary;
  std::cout << "artifacts:\n";
  for (const auto& file : result.artifacts) std::cout << "  " << file << "\n";
  if (!result.assertions_ok) {
    std::cerr << "certification assertions FAILED\n";
    return kAssertExit;
  }
  return kOkExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for neutral-atom entangling gates near exchange resonances"};
  app.set_version_flag("--version", foersim::kVersion);
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_scenario_name;
  auto* run = app.add_subcommand("run", "run a named scenario sweep");
  run->add_option("scenario", run_scenario_name, "scenario name (see list-scenarios)");
  add_common(run, run_flags);

  CommonFlags certify_flags;
  long long certify_samples = -1;
  auto* certify = app.add_subcommand("certify", "run the bound-certification scenario");
  add_common(certify, certify_flags);
  certify->add_option("--samples", certify_samples, "Monte-Carlo sample count");

  // dump-waveform
  CommonFlags dump_flags;
  std::string dump_output = "waveform.csv";
  int dump_points = 2000;
  bool dump_trajectory = false;
  int dump_input = 3;
  auto* dump = app.add_subcommand("dump-waveform", "sample a protocol's drive waveforms to CSV");
  dump->add_option("--config", dump_flags.config_path, "configuration file with [protocol]")
      ->required();
  dump->add_option("--out", dump_output, "output CSV path");
  dump->add_option("--points", dump_points, "number of samples");
  dump->add_flag("--trajectory", dump_trajectory,
                 "also emit a propagated trajectory table (needs [model])");
  dump->add_option("--input", dump_input, "computational input index 0..3 for --trajectory");

  auto* list = app.add_subcommand("list-scenarios", "print known scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : foersim::list_scenarios()) std::cout << name << "\n";
      return kOkExit;
    }
    if (run->parsed()) {
      return execute(resolve_config(run_flags, run_scenario_name));
    }
    if (certify->parsed()) {
      if (certify_flags.seed < 0)
        throw foersim::ConfigError("certify requires an explicit --seed");
      auto cfg = resolve_config(certify_flags, "certify");
      if (certify_samples > 0) cfg.certify_samples = static_cast<int>(certify_samples);
      return execute(cfg);
    }
    if (dump->parsed()) {
      const auto file = foersim::ConfigFile::parse_file(dump_flags.config_path);
      const double omega_max =
          foersim::from_mhz(file.get_double("protocol", "omega_max_MHz", 10.0));
      double v_for_gap = 0.0;
      foersim::ModelSpec model = file.has("model", "variant") || file.has("model", "V_MHz")
                                     ? foersim::model_from_config(file)
                                     : foersim::ModelSpec(foersim::TwoEigenstate{
                                           foersim::from_mhz(10.0)});
      v_for_gap = model.effective_strength();
      const auto schedule = foersim::schedule_from_config(file, omega_max, v_for_gap);
      foersim::waveform_table(schedule, dump_points).write(dump_output);
      std::cout << "wrote " << dump_output << "\n";
      if (dump_trajectory) {
        const std::string traj_path =
            std::filesystem::path(dump_output).replace_extension(".trajectory.csv").string();
        foersim::trajectory_table(model, schedule, dump_input, dump_points).write(traj_path);
        std::cout << "wrote " << traj_path << "\n";
      }
      return kOkExit;
    }
  } catch (const foersim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeExit;
  }
  return kOkExit;
}
