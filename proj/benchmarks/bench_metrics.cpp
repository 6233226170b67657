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

#include <random>

#include "foersim/metrics.hpp"
#include "foersim/schmidt.hpp"

namespace {

using namespace foersim;

void BM_GateFidelityPhaseSearch(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::complex<double>(normal(rng), normal(rng)) * 0.25;
  const Eigen::Matrix4cd target = cz_gate();
  for (auto _ : state) {
    auto result = gate_fidelity(m, target, true);
    benchmark::DoNotOptimize(result.fidelity);
  }
}
BENCHMARK(BM_GateFidelityPhaseSearch);

void BM_SchmidtDecomposition(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd psi(16);
  for (int i = 0; i < 16; ++i) psi(i) = std::complex<double>(normal(rng), normal(rng));
  psi.normalize();
  for (auto _ : state) {
    auto data = schmidt(psi, 4, 4);
    benchmark::DoNotOptimize(data.s_min);
  }
}
BENCHMARK(BM_SchmidtDecomposition);

void BM_PointwiseBoundSample(benchmark::State& state) {
  for (auto _ : state) {
    auto report = certify_pointwise_bound(1.0, 512, 42);
    benchmark::DoNotOptimize(report.min_margin);
  }
}
BENCHMARK(BM_PointwiseBoundSample);

}  // namespace
