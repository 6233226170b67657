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
#include <optional>

#include "foersim/level_scheme.hpp"

namespace foersim {

struct SchmidtData {
  Eigen::VectorXd coefficients;   // descending, >= 0, squares sum to 1
  Eigen::MatrixXcd vectors_a;     // columns are the A-side Schmidt vectors
  Eigen::MatrixXcd vectors_b;     // columns are the B-side Schmidt vectors
  double s_min = 0.0;             // -log2(c1^2)
  double x = 0.0;                 // c1^2
};

/// Schmidt decomposition of a normalized bipartite pure state, laid out
/// A-major (index = i_a * dim_b + i_b).
SchmidtData schmidt(const Eigen::VectorXcd& psi, int dim_a, int dim_b);

/// Rate of change of the min-entropy under H:
///   dS/dt = -(2/ln2) (1/c1) sum_{i>1} c_i Im <u1 v1| H |u_i v_i>.
/// Requires the largest Schmidt coefficient to be simple (gap > 1e-9).
double s_min_rate(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& h, int dim_a, int dim_b);

/// Minimum population-to-entropy-rate ratio at fixed min-entropy s:
/// (ln2 / V) / sqrt(2^s - 1). Diverges as s -> 0.
double g_full(double s, double V);

/// V * integral of g_full over s in [0, 1]; equals pi/2 for every V. Computed
/// with the substitution u = 2^s and endpoint-tolerant quadrature.
double eta_full_quadrature(double V);

/// The ratio-minimizing state sqrt(x)|ab> + i sgn(V) sqrt(1-x)|alpha beta>,
/// x = 2^(-s), in the 16-dimensional pair basis.
Eigen::VectorXcd saturating_state(double s, double V, const LevelScheme& scheme);

// ---------------------------------------------------------------------------
// Monte-Carlo certification of the pointwise ratio bound
//   P(psi)/|dS/dt| >= (ln2/V) sqrt(x/(1-x)),   x = c1^2 in (1/2, 1),
// on the 3 (x) 3 space {g, a, alpha} (x) {g, b, beta} (the two qubit levels
// enter the interaction and the counting operator identically, so they are
// merged into one ground level for sampling), optionally on the full 4 (x) 4
// pair space.
// ---------------------------------------------------------------------------

enum class CertificationSpace { MergedThreeLevel, FullPair };

struct CertificationReport {
  std::uint64_t seed = 0;
  int requested = 0;
  int evaluated = 0;
  int skipped_degenerate = 0;     // c1 gap below threshold
  int skipped_zero_rate = 0;      // |dS/dt| numerically zero (bound trivial)
  int skipped_out_of_domain = 0;  // s outside (0, 1)
  double min_margin = 0.0;        // min over samples of ratio/bound - 1
  int violations = 0;             // samples with margin < -1e-9
  double saturating_max_abs_margin = 0.0;  // |margin| over the minimizing family
};

CertificationReport certify_pointwise_bound(double V, int n_samples, std::uint64_t seed,
                                            CertificationSpace space =
                                                CertificationSpace::MergedThreeLevel,
                                            int threads = 1);

struct GOracleResult {
  double estimate = 0.0;   // minimized P/|dS/dt| over states at fixed s
  double analytic = 0.0;   // g_full(s, V)
  int restarts = 0;
  std::uint64_t evaluations = 0;
};

/// Direct numerical minimization of the population-to-rate ratio over states
/// sqrt(x)|uv> + sqrt(1-x)|n>, n in u-perp (x) v-perp, via multistart
/// quasi-Newton refinement. Independent of g_full.
GOracleResult numeric_g_oracle(double s, double V, int n_starts, std::uint64_t seed);

}  // namespace foersim
