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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace foersim {

/// Box-constrained scalar minimization problem. The objective must be
/// deterministic for fixed parameters.
struct OptProblem {
  std::function<double(const Eigen::VectorXd&)> objective;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  /// Total objective-call budget across a whole run; 0 means unlimited. When
  /// exhausted, optimization stops gracefully with the best value seen.
  std::uint64_t max_evaluations = 0;
};

struct RestartRecord {
  int index = 0;
  Eigen::VectorXd start;
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

struct OptResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  std::vector<RestartRecord> history;
  std::uint64_t evaluations = 0;
  bool budget_exhausted = false;
};

struct LocalRefineOptions {
  double gradient_tol = 1e-8;
  int max_iterations = 500;
  double fd_step_rel = 1e-6;  // central-difference step, relative to |x_i|
};

/// Projected quasi-Newton descent (dense BFGS, central-difference gradients,
/// backtracking line search clipped to the bounds). The best value is
/// monotonically non-increasing and never exceeds the value at x0.
OptResult local_refine(const OptProblem& problem, const Eigen::VectorXd& x0,
                       const LocalRefineOptions& opts = {});

struct MultistartOptions {
  int n_random = 32;    // stage 1: uniform in bounds
  int n_gaussian = 16;  // stage 2: Gaussian around the stage-1 best
  double sigma_rel = 0.1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string checkpoint_path;  // optional resume/record file (JSON)
  LocalRefineOptions local;
};

/// Two-stage multistart around local_refine. Start points are drawn up front
/// from the seed, so results are independent of the thread count and fully
/// reproducible; ties are broken by the lowest restart index.
OptResult multistart(const OptProblem& problem, const MultistartOptions& opts);

/// Fixed-format serialization used by determinism checks and checkpoints.
std::string serialize_opt_result(const OptResult& result);

}  // namespace foersim
