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

#include "foersim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace foersim {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void validate(const ModelSpec::Variant& v) {
  if (const auto* m = std::get_if<OneEigenstate>(&v)) {
    require_finite(m->V, "V");
    if (m->V <= 0) throw std::invalid_argument("one-eigenstate shift V must be > 0");
  } else if (const auto* m = std::get_if<TwoEigenstate>(&v)) {
    require_finite(m->V, "V");
    if (m->V <= 0) throw std::invalid_argument("exchange coupling V must be > 0");
  } else if (const auto* m = std::get_if<ImperfectFoerster>(&v)) {
    require_finite(m->C, "C");
    require_finite(m->delta_F, "delta_F");
    if (m->C <= 0) throw std::invalid_argument("imperfect-resonance coupling C must be > 0");
  } else if (const auto* m = std::get_if<PreRwa>(&v)) {
    require_finite(m->V, "V");
    require_finite(m->W, "W");
    require_finite(m->delta_A, "delta_A");
    require_finite(m->delta_B, "delta_B");
    if (m->V <= 0) throw std::invalid_argument("exchange coupling V must be > 0");
  }
}

}  // namespace

ModelSpec::ModelSpec(Variant variant, double tau_r_us)
    : variant_(std::move(variant)), tau_r_us_(tau_r_us) {
  validate(variant_);
  require_finite(tau_r_us_, "tau_R");
  if (tau_r_us_ <= 0) throw std::invalid_argument("Rydberg lifetime tau_R must be > 0");
}

LevelScheme ModelSpec::scheme() const {
  return std::holds_alternative<OneEigenstate>(variant_) ? LevelScheme::one_eigenstate()
                                                         : LevelScheme::two_eigenstate();
}

double ModelSpec::effective_strength() const {
  if (const auto* m = std::get_if<OneEigenstate>(&variant_)) return m->V;
  if (const auto* m = std::get_if<TwoEigenstate>(&variant_)) return m->V;
  if (const auto* m = std::get_if<PreRwa>(&variant_)) return m->V;
  return condense_channels(imperfect_channels(std::get<ImperfectFoerster>(variant_)));
}

std::string ModelSpec::name() const {
  if (std::holds_alternative<OneEigenstate>(variant_)) return "one_eigenstate";
  if (std::holds_alternative<TwoEigenstate>(variant_)) return "two_eigenstate";
  if (std::holds_alternative<ImperfectFoerster>(variant_)) return "imperfect";
  return "pre_rwa";
}

Eigen::MatrixXcd build_interaction(const ModelSpec& model) {
  const LevelScheme scheme = model.scheme();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(scheme.pair_dim(), scheme.pair_dim());

  if (const auto* m = std::get_if<OneEigenstate>(&model.variant())) {
    h(scheme.idx_ab(), scheme.idx_ab()) = m->V;
    return h;
  }

  const int ab = scheme.idx_ab();
  const int alpha_beta = scheme.idx_alpha_beta();
  if (const auto* m = std::get_if<TwoEigenstate>(&model.variant())) {
    h(ab, alpha_beta) = m->V;
    h(alpha_beta, ab) = m->V;
    return h;
  }
  if (const auto* m = std::get_if<ImperfectFoerster>(&model.variant())) {
    h(ab, alpha_beta) = m->C;
    h(alpha_beta, ab) = m->C;
    h(alpha_beta, alpha_beta) = -m->delta_F;
    return h;
  }

  const auto& m = std::get<PreRwa>(model.variant());
  const int a_beta = scheme.idx_a_beta();
  const int alpha_b = scheme.idx_alpha_b();
  h(ab, alpha_beta) = m.V;
  h(alpha_beta, ab) = m.V;
  h(a_beta, a_beta) = m.delta_B;
  h(alpha_b, alpha_b) = m.delta_A;
  h(a_beta, alpha_b) = m.W;
  h(alpha_b, a_beta) = m.W;
  return h;
}

Eigen::VectorXd rydberg_number_diagonal(const LevelScheme& scheme) {
  const int d = scheme.levels_per_atom();
  Eigen::VectorXd diag(scheme.pair_dim());
  for (int la = 0; la < d; ++la)
    for (int lb = 0; lb < d; ++lb)
      diag(scheme.pair_index(la, lb)) =
          (LevelScheme::is_rydberg(la) ? 1.0 : 0.0) + (LevelScheme::is_rydberg(lb) ? 1.0 : 0.0);
  return diag;
}

Eigen::MatrixXcd rydberg_number_operator(const LevelScheme& scheme) {
  return rydberg_number_diagonal(scheme).cast<std::complex<double>>().asDiagonal();
}

ChannelSet::ChannelSet(std::vector<Channel> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw std::invalid_argument("channel set must not be empty");
  double total = 0.0;
  for (const auto& c : channels_) {
    require_finite(c.overlap, "channel overlap");
    require_finite(c.shift, "channel shift");
    if (c.overlap <= 0.0 || c.overlap > 1.0)
      throw std::invalid_argument("channel overlap must lie in (0, 1]");
    if (c.shift == 0.0) throw std::invalid_argument("singular channel: shift must be nonzero");
    total += c.overlap;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("channel overlaps must sum to one");
}

double condense_channels(const ChannelSet& channels) {
  double sum = 0.0;
  for (const auto& c : channels.channels()) {
    if (c.shift == 0.0) throw std::invalid_argument("singular channel: shift must be nonzero");
    sum += c.overlap / (c.shift * c.shift);
  }
  return 1.0 / std::sqrt(sum);
}

ImperfectParams imperfect_params_from_symmetry(double o1, double v_eff) {
  require_finite(o1, "o1");
  require_finite(v_eff, "v_eff");
  if (v_eff <= 0) throw std::invalid_argument("v_eff must be > 0");
  if (o1 < 0.5) throw std::invalid_argument("o1 must be >= 0.5 (dominant-channel overlap)");
  if (o1 > 1.0 - 1e-3)
    throw std::invalid_argument("degenerate resonance: o1 too close to 1");

  // Write the block as -(delta_F/2) I + R (cos2t sz + sin2t sx); then the
  // dominant eigenvector overlap is cos^2(t) = o1, the shifts are
  // V1 = 2R sin^2(t), V2 = -2R cos^2(t), and condensation fixes R.
  const double cos2 = o1;          // cos^2(t)
  const double sin2 = 1.0 - o1;    // sin^2(t)
  const double num = cos2 * cos2 * cos2 + sin2 * sin2 * sin2;  // cos^6 + sin^6
  const double r = v_eff * std::sqrt(num) / (2.0 * sin2 * cos2);
  const double c = r * 2.0 * std::sqrt(sin2 * cos2);  // R sin(2t)
  const double delta_f = r * 2.0 * (cos2 - sin2);     // 2R cos(2t)
  return {c, delta_f};
}

ChannelSet imperfect_channels(const ImperfectFoerster& m) {
  Eigen::Matrix2d block;
  block << 0.0, m.C, m.C, -m.delta_F;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  std::vector<Channel> channels;
  for (int i = 0; i < 2; ++i) {
    const double overlap = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    channels.push_back({overlap, es.eigenvalues()(i)});
  }
  if (channels[0].overlap < channels[1].overlap) std::swap(channels[0], channels[1]);
  return ChannelSet(std::move(channels));
}

double rwa_validity(const PreRwa& model) {
  if (model.delta_A == 0.0 || model.delta_B == 0.0)
    throw std::invalid_argument("undefined ratio: zero detuning");
  const double coupling = std::max(std::abs(model.V), std::abs(model.W));
  const double detuning = std::min(std::abs(model.delta_A), std::abs(model.delta_B));
  return coupling / detuning;
}

}  // namespace foersim
