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

#include "foersim/schmidt.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "foersim/optim.hpp"
#include "foersim/parallel.hpp"

namespace foersim {

namespace {

using cd = std::complex<double>;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kDegeneracyGap = 1e-9;

// Allowed relative slack when asserting the proven ratio bound.
constexpr double kBoundRelTol = 1e-9;

}  // namespace

SchmidtData schmidt(const Eigen::VectorXcd& psi, int dim_a, int dim_b) {
  if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument("schmidt: state dimension does not match dim_a * dim_b");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("schmidt: state must be normalized");

  const Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      amplitudes(psi.data(), dim_a, dim_b);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(amplitudes, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtData data;
  data.coefficients = svd.singularValues();
  data.vectors_a = svd.matrixU();
  // A = U S V^dag, so the B-side Schmidt vectors are the conjugated V columns.
  data.vectors_b = svd.matrixV().conjugate();
  data.x = data.coefficients(0) * data.coefficients(0);
  data.s_min = -std::log2(data.x);
  return data;
}

double s_min_rate(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& h, int dim_a, int dim_b) {
  if (h.rows() != psi.size() || h.cols() != psi.size())
    throw std::invalid_argument("s_min_rate: Hamiltonian dimension mismatch");
  const SchmidtData data = schmidt(psi, dim_a, dim_b);
  const int n_terms = static_cast<int>(data.coefficients.size());
  if (n_terms > 1 && data.coefficients(0) - data.coefficients(1) <= kDegeneracyGap)
    throw std::domain_error("s_min_rate: largest Schmidt coefficient is degenerate");

  Eigen::VectorXcd leading(psi.size());
  auto product_state = [&](int i) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(dim_a) * dim_b);
    for (int ja = 0; ja < dim_a; ++ja)
      for (int jb = 0; jb < dim_b; ++jb)
        out(static_cast<Eigen::Index>(ja) * dim_b + jb) =
            data.vectors_a(ja, i) * data.vectors_b(jb, i);
    return out;
  };

  leading = product_state(0);
  const Eigen::VectorXcd h_leading = h.adjoint() * leading;  // <u1 v1| H = (H^dag |u1 v1>)^dag
  double sum = 0.0;
  for (int i = 1; i < n_terms; ++i) {
    const cd element = h_leading.dot(product_state(i));  // <u1 v1|H|ui vi>
    sum += data.coefficients(i) * element.imag();
  }
  return -(2.0 / kLn2) / data.coefficients(0) * sum;
}

double g_full(double s, double V) {
  if (V <= 0) throw std::invalid_argument("g_full: V must be > 0");
  if (s <= 0) throw std::domain_error("g_full: diverges for s <= 0");
  return (kLn2 / V) / std::sqrt(std::exp2(s) - 1.0);
}

double eta_full_quadrature(double V) {
  if (V <= 0) throw std::invalid_argument("eta_full_quadrature: V must be > 0");
  // Substituting u = 2^s turns V * integral g_full ds into
  // integral over u in [1, 2] of du / (u sqrt(u - 1)); the inverse-square-root
  // endpoint is integrable and tanh-sinh handles it without special casing.
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double integral = integrator.integrate(
      [V](double u) { return V * (kLn2 / V) / std::sqrt(u - 1.0) / (u * kLn2); }, 1.0, 2.0);
  return integral;
}

Eigen::VectorXcd saturating_state(double s, double V, const LevelScheme& scheme) {
  if (scheme.family() != ModelFamily::TwoEigenstate)
    throw std::invalid_argument("saturating_state: needs the two-eigenstate pair basis");
  if (s < 0.0 || s > 1.0) throw std::domain_error("saturating_state: s must lie in [0, 1]");
  const double x = std::exp2(-s);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(scheme.pair_dim());
  psi(scheme.idx_ab()) = std::sqrt(x);
  psi(scheme.idx_alpha_beta()) = cd(0.0, V >= 0 ? 1.0 : -1.0) * std::sqrt(1.0 - x);
  return psi;
}

namespace {

// Certification space: either {g, a, alpha} (x) {g, b, beta} with the two
// qubit levels merged, or the full pair basis.
struct CertSpace {
  int dim_local = 0;
  Eigen::VectorXd pi_diag;
  Eigen::MatrixXcd h;
  int idx_ab = 0;
  int idx_alpha_beta = 0;
};

CertSpace make_cert_space(CertificationSpace which, double V) {
  CertSpace space;
  if (which == CertificationSpace::MergedThreeLevel) {
    space.dim_local = 3;
    const int d = 9;
    space.pi_diag.resize(d);
    for (int ja = 0; ja < 3; ++ja)
      for (int jb = 0; jb < 3; ++jb)
        space.pi_diag(ja * 3 + jb) = (ja >= 1 ? 1.0 : 0.0) + (jb >= 1 ? 1.0 : 0.0);
    space.idx_ab = 1 * 3 + 1;
    space.idx_alpha_beta = 2 * 3 + 2;
    space.h = Eigen::MatrixXcd::Zero(d, d);
    space.h(space.idx_ab, space.idx_alpha_beta) = V;
    space.h(space.idx_alpha_beta, space.idx_ab) = V;
  } else {
    const LevelScheme scheme = LevelScheme::two_eigenstate();
    space.dim_local = 4;
    space.pi_diag.resize(16);
    for (int ja = 0; ja < 4; ++ja)
      for (int jb = 0; jb < 4; ++jb)
        space.pi_diag(ja * 4 + jb) =
            (LevelScheme::is_rydberg(ja) ? 1.0 : 0.0) + (LevelScheme::is_rydberg(jb) ? 1.0 : 0.0);
    space.idx_ab = scheme.idx_ab();
    space.idx_alpha_beta = scheme.idx_alpha_beta();
    space.h = Eigen::MatrixXcd::Zero(16, 16);
    space.h(space.idx_ab, space.idx_alpha_beta) = V;
    space.h(space.idx_alpha_beta, space.idx_ab) = V;
  }
  return space;
}

struct ChunkStats {
  int evaluated = 0;
  int skipped_degenerate = 0;
  int skipped_zero_rate = 0;
  int skipped_out_of_domain = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  int violations = 0;
};

ChunkStats certify_chunk(const CertSpace& space, double V, int n, std::uint64_t chunk_seed) {
  std::mt19937_64 rng(chunk_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = static_cast<int>(space.pi_diag.size());

  ChunkStats stats;
  Eigen::VectorXcd psi(dim);
  for (int sample = 0; sample < n; ++sample) {
    for (int i = 0; i < dim; ++i) psi(i) = cd(normal(rng), normal(rng));
    psi /= psi.norm();

    const SchmidtData data = schmidt(psi, space.dim_local, space.dim_local);
    if (data.coefficients.size() > 1 &&
        data.coefficients(0) - data.coefficients(1) <= kDegeneracyGap) {
      ++stats.skipped_degenerate;
      continue;
    }
    // The pointwise bound is proven for x = c1^2 in (1/2, 1); more entangled
    // or fully product samples fall outside it.
    if (!(data.x > 0.5) || !(data.x < 1.0 - 1e-15)) {
      ++stats.skipped_out_of_domain;
      continue;
    }
    const double rate = s_min_rate(psi, space.h, space.dim_local, space.dim_local);
    if (std::abs(rate) <= 1e-12 * V) {
      ++stats.skipped_zero_rate;
      continue;
    }
    const double population = space.pi_diag.dot(psi.cwiseAbs2().real());
    const double ratio = population / std::abs(rate);
    const double bound = (kLn2 / V) * std::sqrt(data.x / (1.0 - data.x));
    const double margin = ratio / bound - 1.0;
    ++stats.evaluated;
    stats.min_margin = std::min(stats.min_margin, margin);
    if (margin < -kBoundRelTol) ++stats.violations;
  }
  return stats;
}

}  // namespace

CertificationReport certify_pointwise_bound(double V, int n_samples, std::uint64_t seed,
                                            CertificationSpace which, int threads) {
  if (V <= 0) throw std::invalid_argument("certify_pointwise_bound: V must be > 0");
  if (n_samples < 1) throw std::invalid_argument("certify_pointwise_bound: need n_samples >= 1");

  const CertSpace space = make_cert_space(which, V);

  // Fixed chunking keeps the result identical for every thread count.
  const int n_chunks = std::min(n_samples, 64);
  std::vector<ChunkStats> chunk_stats(static_cast<std::size_t>(n_chunks));
  parallel_for_index(n_chunks, threads, [&](int c) {
    const int base = n_samples / n_chunks;
    const int extra = c < n_samples % n_chunks ? 1 : 0;
    const std::uint64_t chunk_seed =
        seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(c + 1));
    chunk_stats[static_cast<std::size_t>(c)] = certify_chunk(space, V, base + extra, chunk_seed);
  });

  CertificationReport report;
  report.seed = seed;
  report.requested = n_samples;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : chunk_stats) {
    report.evaluated += s.evaluated;
    report.skipped_degenerate += s.skipped_degenerate;
    report.skipped_zero_rate += s.skipped_zero_rate;
    report.skipped_out_of_domain += s.skipped_out_of_domain;
    report.violations += s.violations;
    min_margin = std::min(min_margin, s.min_margin);
  }
  report.min_margin = report.evaluated > 0 ? min_margin : 0.0;

  // The minimizing family itself: the bound should be met with equality.
  double max_abs = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double s = 0.05 * i;
    const double x = std::exp2(-s);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space.pi_diag.size());
    psi(space.idx_ab) = std::sqrt(x);
    psi(space.idx_alpha_beta) = cd(0.0, 1.0) * std::sqrt(1.0 - x);
    const double rate = s_min_rate(psi, space.h, space.dim_local, space.dim_local);
    const double population = space.pi_diag.dot(psi.cwiseAbs2().real());
    const double bound = (kLn2 / V) * std::sqrt(x / (1.0 - x));
    max_abs = std::max(max_abs, std::abs(population / std::abs(rate) / bound - 1.0));
  }
  report.saturating_max_abs_margin = max_abs;
  return report;
}

namespace {

// Parameterization for the ratio minimization: raw real coordinates for u, v
// (each C^3) and n (C^9); n is projected onto u-perp (x) v-perp and everything
// is normalized inside the objective, so the map stays smooth wherever the
// norms are bounded away from zero.
struct RatioObjective {
  CertSpace space;
  double x = 0.0;
  double V = 0.0;

  double operator()(const Eigen::VectorXd& p) const {
    constexpr double kBad = 1e6;
    Eigen::Vector3cd u, v;
    for (int i = 0; i < 3; ++i) {
      u(i) = cd(p(2 * i), p(2 * i + 1));
      v(i) = cd(p(6 + 2 * i), p(6 + 2 * i + 1));
    }
    if (u.norm() < 1e-3 || v.norm() < 1e-3) return kBad;
    u.normalize();
    v.normalize();

    Eigen::Matrix3cd n_mat;
    for (int ja = 0; ja < 3; ++ja)
      for (int jb = 0; jb < 3; ++jb) {
        const int k = 12 + 2 * (ja * 3 + jb);
        n_mat(ja, jb) = cd(p(k), p(k + 1));
      }
    const Eigen::Matrix3cd proj_a = Eigen::Matrix3cd::Identity() - u * u.adjoint();
    const Eigen::Matrix3cd proj_b_t =
        Eigen::Matrix3cd::Identity() - v.conjugate() * v.transpose();
    n_mat = proj_a * n_mat * proj_b_t;
    const double n_norm = n_mat.norm();
    if (n_norm < 1e-3) return kBad;
    n_mat /= n_norm;

    const double p1 = u.segment(1, 2).squaredNorm() + v.segment(1, 2).squaredNorm();
    double pn = 0.0;
    for (int ja = 0; ja < 3; ++ja)
      for (int jb = 0; jb < 3; ++jb)
        pn += space.pi_diag(ja * 3 + jb) * std::norm(n_mat(ja, jb));

    const cd mu = u(1) * v(1);        // <ab|uv>
    const cd nu = u(2) * v(2);        // <alpha beta|uv>
    const cd element = V * (std::conj(mu) * n_mat(2, 2) + std::conj(nu) * n_mat(1, 1));
    const double rate =
        (2.0 / kLn2) * std::sqrt((1.0 - x) / x) * std::abs(element.imag());
    if (rate < 1e-12 * V) return kBad;
    return (x * p1 + (1.0 - x) * pn) / rate;
  }
};

}  // namespace

GOracleResult numeric_g_oracle(double s, double V, int n_starts, std::uint64_t seed) {
  if (s <= 0.05 || s >= 0.95)
    throw std::domain_error("numeric_g_oracle: s must lie in (0.05, 0.95)");
  if (V <= 0) throw std::invalid_argument("numeric_g_oracle: V must be > 0");
  if (n_starts < 1) throw std::invalid_argument("numeric_g_oracle: need n_starts >= 1");

  RatioObjective objective;
  objective.space = make_cert_space(CertificationSpace::MergedThreeLevel, V);
  objective.x = std::exp2(-s);
  objective.V = V;

  OptProblem problem;
  problem.objective = [objective](const Eigen::VectorXd& p) { return objective(p); };
  problem.lower = Eigen::VectorXd::Constant(30, -1.0);
  problem.upper = Eigen::VectorXd::Constant(30, 1.0);

  MultistartOptions opts;
  opts.n_random = n_starts;
  opts.n_gaussian = std::max(4, n_starts / 2);
  opts.seed = seed;
  opts.local.max_iterations = 400;
  const OptResult result = multistart(problem, opts);
  if (result.best_value >= 1e6)
    throw std::runtime_error("numeric_g_oracle: all starts degenerate");

  GOracleResult out;
  out.estimate = result.best_value;
  out.analytic = g_full(s, V);
  out.restarts = static_cast<int>(result.history.size());
  out.evaluations = result.evaluations;
  return out;
}

}  // namespace foersim
