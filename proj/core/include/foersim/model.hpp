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
#include <string>
#include <variant>
#include <vector>

#include "foersim/level_scheme.hpp"

namespace foersim {

/// All interaction channels condensed into one effective pair state |rr>
/// carrying a diagonal shift V.
struct OneEigenstate {
  double V;  // rad/us, > 0
};

/// Resonant exchange between |ab> and |alpha beta> with coupling V.
struct TwoEigenstate {
  double V;  // rad/us, > 0
};

/// Detuned exchange block [[0, C], [C, -delta_F]] on {|ab>, |alpha beta>}.
/// Models a resonance whose eigenstate overlaps deviate from 1/2.
struct ImperfectFoerster {
  double C;        // rad/us, > 0
  double delta_F;  // rad/us (residual pair-state detuning)
};

/// Full 4x4 interaction on {|ab>, |alpha beta>, |a beta>, |alpha b>} before
/// the rotating-wave reduction; delta_A, delta_B are the single-atom level
/// spacings and W the spectator-block coupling.
struct PreRwa {
  double V;        // rad/us, > 0
  double W;        // rad/us
  double delta_A;  // rad/us
  double delta_B;  // rad/us
};

/// Interaction model plus Rydberg lifetime. Immutable after construction;
/// the constructor validates all parameters.
class ModelSpec {
 public:
  using Variant = std::variant<OneEigenstate, TwoEigenstate, ImperfectFoerster, PreRwa>;

  explicit ModelSpec(Variant variant, double tau_r_us = 150.0);

  const Variant& variant() const { return variant_; }
  double rydberg_lifetime() const { return tau_r_us_; }
  double decay_rate() const { return 1.0 / tau_r_us_; }

  LevelScheme scheme() const;

  /// Condensation-matched interaction strength: the shift of the equivalent
  /// one-eigenstate model. Equals V for the one-/two-eigenstate and pre-RWA
  /// variants; for the imperfect resonance it is obtained by diagonalizing
  /// the exchange block and condensing the two channels.
  double effective_strength() const;

  std::string name() const;

  ModelSpec with_lifetime(double tau_r_us) const { return ModelSpec(variant_, tau_r_us); }

 private:
  Variant variant_;
  double tau_r_us_;
};

/// Static interaction Hamiltonian in the pair basis of model.scheme().
Eigen::MatrixXcd build_interaction(const ModelSpec& model);

/// Rydberg-atom counting operator Pi = Q_A (x) I + I (x) Q_B, where Q projects
/// onto the Rydberg-tagged levels of one atom. Diagonal with entries {0,1,2}.
Eigen::MatrixXcd rydberg_number_operator(const LevelScheme& scheme);

/// Diagonal of the counting operator (same entries, cheaper to consume).
Eigen::VectorXd rydberg_number_diagonal(const LevelScheme& scheme);

/// One interaction channel: overlap with the target pair state and energy shift.
struct Channel {
  double overlap;  // dimensionless, in (0, 1]
  double shift;    // rad/us, nonzero
};

/// A set of channels whose overlaps sum to one.
class ChannelSet {
 public:
  explicit ChannelSet(std::vector<Channel> channels);
  const std::vector<Channel>& channels() const { return channels_; }

 private:
  std::vector<Channel> channels_;
};

/// Effective single-channel shift (sum_i o_i / V_i^2)^(-1/2).
double condense_channels(const ChannelSet& channels);

struct ImperfectParams {
  double C;
  double delta_F;
};

/// Invert the two-channel parameterization: find (C, delta_F) such that the
/// exchange block [[0, C], [C, -delta_F]] has eigenvector overlaps (o1, 1-o1)
/// with |ab> and channel condensation equal to v_eff. Requires o1 in
/// [0.5, 1 - 1e-3); o1 -> 1 degenerates (one channel shift diverges).
ImperfectParams imperfect_params_from_symmetry(double o1, double v_eff);

/// Eigenvector overlaps and shifts of the imperfect exchange block, ordered
/// dominant channel first. Used to re-derive (o1, v_eff) from (C, delta_F).
ChannelSet imperfect_channels(const ImperfectFoerster& m);

/// Rotating-wave validity ratio max(V, W) / min(|delta_A|, |delta_B|).
/// Callers should treat values at or above kRwaWarnThreshold as suspect.
double rwa_validity(const PreRwa& model);

inline constexpr double kRwaWarnThreshold = 0.01;

}  // namespace foersim
