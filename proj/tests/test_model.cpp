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
#include <random>

#include "foersim/model.hpp"
#include "foersim/units.hpp"

using namespace foersim;

namespace {

double hermiticity_defect(const Eigen::MatrixXcd& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double commutator_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("units: MHz inputs become angular frequencies") {
  CHECK(from_mhz(10.0) == doctest::Approx(62.8318530718).epsilon(1e-12));
  CHECK(to_mhz(from_mhz(3.7)) == doctest::Approx(3.7).epsilon(1e-15));
}

TEST_CASE("level scheme: dimensions, tags and the basis contract") {
  const auto one = LevelScheme::one_eigenstate();
  const auto two = LevelScheme::two_eigenstate();
  CHECK(one.pair_dim() == 9);
  CHECK(two.pair_dim() == 16);
  CHECK(LevelScheme::is_qubit(0));
  CHECK(LevelScheme::is_qubit(1));
  CHECK(LevelScheme::is_rydberg(2));
  CHECK(LevelScheme::is_rydberg(3));
  CHECK(two.pair_index(2, 2) == 10);
  CHECK(two.idx_alpha_beta() == 15);
  CHECK(two.idx_a_beta() == 11);
  CHECK(two.idx_alpha_b() == 14);
  CHECK(one.idx_ab() == 8);
  CHECK(two.level_name(Atom::A, 3) == "alpha");
  CHECK(two.level_name(Atom::B, 2) == "b");
  CHECK_THROWS(one.exchange_rydberg());
}

TEST_CASE("build_interaction: exchange coupling entries") {
  const ModelSpec model(TwoEigenstate{1.0});
  const auto h = build_interaction(model);
  const auto scheme = model.scheme();
  CHECK(h(scheme.idx_ab(), scheme.idx_alpha_beta()) == std::complex<double>(1.0, 0.0));
  CHECK(h(scheme.idx_alpha_beta(), scheme.idx_ab()) == std::complex<double>(1.0, 0.0));
  CHECK(h.cwiseAbs().sum() == doctest::Approx(2.0));  // nothing else populated
}

TEST_CASE("build_interaction: condensed single-channel shift") {
  const ModelSpec model(OneEigenstate{5.0});
  const auto h = build_interaction(model);
  const auto scheme = model.scheme();
  CHECK(h(scheme.idx_ab(), scheme.idx_ab()) == std::complex<double>(5.0, 0.0));
  CHECK(h.cwiseAbs().sum() == doctest::Approx(5.0));
}

TEST_CASE("build_interaction: pre-rotating-frame blocks") {
  const ModelSpec model(PreRwa{1.0, 1.0, 1000.0, -1000.0});
  const auto h = build_interaction(model);
  const auto scheme = model.scheme();
  const int ab = scheme.idx_ab(), alpha_beta = scheme.idx_alpha_beta();
  const int a_beta = scheme.idx_a_beta(), alpha_b = scheme.idx_alpha_b();
  CHECK(h(ab, alpha_beta).real() == 1.0);
  CHECK(h(ab, ab) == std::complex<double>(0.0, 0.0));
  CHECK(h(a_beta, a_beta).real() == -1000.0);
  CHECK(h(alpha_b, alpha_b).real() == 1000.0);
  CHECK(h(a_beta, alpha_b).real() == 1.0);

  // Exactly block diagonal between the exchange and spectator subspaces.
  CHECK(h(ab, a_beta) == std::complex<double>(0.0, 0.0));
  CHECK(h(ab, alpha_b) == std::complex<double>(0.0, 0.0));
  CHECK(h(alpha_beta, a_beta) == std::complex<double>(0.0, 0.0));
  CHECK(h(alpha_beta, alpha_b) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("build_interaction: symmetric imperfect resonance equals exchange model") {
  const auto imperfect = build_interaction(ModelSpec(ImperfectFoerster{1.0, 0.0}));
  const auto exchange = build_interaction(ModelSpec(TwoEigenstate{1.0}));
  CHECK((imperfect - exchange).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_interaction: invalid parameters are rejected") {
  CHECK_THROWS(ModelSpec(TwoEigenstate{std::nan("")}));
  CHECK_THROWS(ModelSpec(TwoEigenstate{-1.0}));
  CHECK_THROWS(ModelSpec(OneEigenstate{1.0}, -5.0));
  CHECK_THROWS(ModelSpec(PreRwa{1.0, std::numeric_limits<double>::infinity(), 1.0, -1.0}));
}

TEST_CASE("interaction Hamiltonians are Hermitian and conserve the Rydberg count") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(0.1, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double v = mag(rng);
    const std::vector<ModelSpec> models = {
        ModelSpec(OneEigenstate{v}),
        ModelSpec(TwoEigenstate{v}),
        ModelSpec(ImperfectFoerster{v, mag(rng) - 25.0}),
        ModelSpec(PreRwa{v, mag(rng), 1000.0 * mag(rng), -1000.0 * mag(rng)}),
    };
    for (const auto& model : models) {
      const auto h = build_interaction(model);
      const auto pi = rydberg_number_operator(model.scheme());
      CHECK(hermiticity_defect(h) <= 1e-14);
      CHECK(commutator_defect(pi, h) < 1e-14);
    }
  }
}

TEST_CASE("rydberg number operator eigenvalues") {
  const auto scheme = LevelScheme::two_eigenstate();
  const auto diag = rydberg_number_diagonal(scheme);
  CHECK(diag(scheme.idx_ab()) == 2.0);
  CHECK(diag(scheme.pair_index(0, 2)) == 1.0);  // |g0 b>
  CHECK(diag(scheme.pair_index(0, 1)) == 0.0);  // |g0 g1>
  for (int i = 0; i < scheme.pair_dim(); ++i)
    CHECK((diag(i) == 0.0 || diag(i) == 1.0 || diag(i) == 2.0));
}

TEST_CASE("condense_channels: examples and guards") {
  CHECK(condense_channels(ChannelSet({{1.0, 5.0}})) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(condense_channels(ChannelSet({{0.5, 10.0}, {0.5, -10.0}})) ==
        doctest::Approx(10.0).epsilon(1e-14));

  // Independent one-line evaluation of the condensation formula.
  const double direct = 1.0 / std::sqrt(0.8 / (2.0 * 2.0) + 0.2 / (4.0 * 4.0));
  const double value = condense_channels(ChannelSet({{0.8, 2.0}, {0.2, -4.0}}));
  CHECK(value == doctest::Approx(direct).epsilon(1e-14));
  CHECK(value == doctest::Approx(2.1693).epsilon(1e-4));

  CHECK_THROWS(ChannelSet({{0.8, 2.0}, {0.2, 0.0}}));   // singular channel
  CHECK_THROWS(ChannelSet({{0.8, 2.0}, {0.1, -4.0}}));  // overlaps must sum to 1
  CHECK_THROWS(ChannelSet({}));
}

TEST_CASE("imperfect_params_from_symmetry: symmetric point") {
  const auto params = imperfect_params_from_symmetry(0.5, 1.0);
  CHECK(params.C == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(params.delta_F == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("imperfect_params_from_symmetry: asymmetric point checked by re-diagonalization") {
  const auto params = imperfect_params_from_symmetry(0.7, 1.0);
  CHECK(params.C > 0.0);
  CHECK(params.delta_F > 0.0);
  const auto channels = imperfect_channels(ImperfectFoerster{params.C, params.delta_F});
  CHECK(channels.channels()[0].overlap == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(channels.channels()[1].overlap == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(condense_channels(channels) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("imperfect_params_from_symmetry: inverse map is the identity") {
  for (double o1 : {0.5, 0.55, 0.6, 0.75, 0.9, 0.99}) {
    for (double v_eff : {0.3, 1.0, 620.0}) {
      const auto params = imperfect_params_from_symmetry(o1, v_eff);
      const auto channels = imperfect_channels(ImperfectFoerster{params.C, params.delta_F});
      CHECK(channels.channels()[0].overlap == doctest::Approx(o1).epsilon(1e-9));
      CHECK(condense_channels(channels) == doctest::Approx(v_eff).epsilon(1e-9));
    }
  }
}

TEST_CASE("imperfect_params_from_symmetry: degenerate resonance is rejected") {
  CHECK_THROWS(imperfect_params_from_symmetry(0.9999, 1.0));
  CHECK_THROWS(imperfect_params_from_symmetry(0.4, 1.0));
  CHECK_THROWS(imperfect_params_from_symmetry(0.7, -1.0));
}

TEST_CASE("symmetric exchange block: eigenvalues +-C, overlaps exactly 1/2") {
  const auto channels = imperfect_channels(ImperfectFoerster{3.0, 0.0});
  CHECK(channels.channels()[0].overlap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(channels.channels()[0].shift) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(channels.channels()[1].shift) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("effective_strength matches channel condensation") {
  const ModelSpec two(TwoEigenstate{4.2});
  CHECK(two.effective_strength() == 4.2);
  const auto params = imperfect_params_from_symmetry(0.8, 7.5);
  const ModelSpec imp(ImperfectFoerster{params.C, params.delta_F});
  CHECK(imp.effective_strength() == doctest::Approx(7.5).epsilon(1e-9));
}

TEST_CASE("rwa_validity: ratio and guards") {
  CHECK(rwa_validity(PreRwa{1.0, 1.0, 1000.0, -1000.0}) == doctest::Approx(0.001));
  CHECK(rwa_validity(PreRwa{1.0, 1.0, 10.0, -10.0}) == doctest::Approx(0.1));
  CHECK(rwa_validity(PreRwa{1.0, 1.0, 10.0, -10.0}) >= kRwaWarnThreshold);
  CHECK_THROWS(rwa_validity(PreRwa{1.0, 1.0, 0.0, -10.0}));
}

TEST_CASE("pre-RWA reduces to the exchange model on the resonant block") {
  const double v = 2.5;
  const auto h_pre = build_interaction(ModelSpec(PreRwa{v, v, 5000.0, -5000.0}));
  const auto h_two = build_interaction(ModelSpec(TwoEigenstate{v}));
  const auto scheme = LevelScheme::two_eigenstate();
  for (int i : {scheme.idx_ab(), scheme.idx_alpha_beta()})
    for (int j : {scheme.idx_ab(), scheme.idx_alpha_beta()})
      CHECK(h_pre(i, j) == h_two(i, j));
}
