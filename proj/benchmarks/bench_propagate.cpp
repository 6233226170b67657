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

#include <benchmark/benchmark.h>

#include "foersim/propagate.hpp"
#include "foersim/units.hpp"

namespace {

using namespace foersim;

void BM_RankTwoGateExact(benchmark::State& state) {
  const double v = from_mhz(1.0);
  const double omega = v * static_cast<double>(state.range(0));
  const ModelSpec model(TwoEigenstate{v});
  const Schedule schedule = rank_two_schedule({omega, v});
  const auto inputs = computational_states(model.scheme());
  for (auto _ : state) {
    auto traj = propagate(model, schedule, inputs);
    benchmark::DoNotOptimize(traj.entries[0].t_r);
  }
}
BENCHMARK(BM_RankTwoGateExact)->Arg(10)->Arg(100)->Arg(1000);

void BM_SmoothPulseIntegration(benchmark::State& state) {
  const double omega_max = from_mhz(10.0);
  const double v = from_mhz(static_cast<double>(state.range(0)));
  const ModelSpec model(TwoEigenstate{v});
  const Schedule schedule = pi_2pi_pi_schedule({omega_max, 1e-3});
  const auto inputs = computational_states(model.scheme());
  for (auto _ : state) {
    auto traj = propagate(model, schedule, inputs);
    benchmark::DoNotOptimize(traj.entries[3].t_r);
  }
}
BENCHMARK(BM_SmoothPulseIntegration)->Arg(10)->Arg(100);

void BM_PhaseModulatedGate(benchmark::State& state) {
  const double omega = from_mhz(10.0);
  const double v = from_mhz(static_cast<double>(state.range(0)));
  const ModelSpec model(TwoEigenstate{v});
  const Schedule schedule = to_schedule({omega, 0.21, 1.1, 1.2, 0.3});
  const auto inputs = computational_states(model.scheme());
  for (auto _ : state) {
    auto traj = propagate(model, schedule, inputs);
    benchmark::DoNotOptimize(traj.entries[0].final_state(0));
  }
}
BENCHMARK(BM_PhaseModulatedGate)->Arg(10)->Arg(100);

}  // namespace
