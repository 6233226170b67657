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

#include <array>
#include <stdexcept>
#include <string>

namespace foersim {

enum class Atom { A, B };

/// Number of single-atom levels retained by an interaction model.
///   OneEigenstate: (g0, g1, r)            -> pair dimension 9
///   TwoEigenstate: (g0, g1, a|b, alpha|beta) -> pair dimension 16
/// The two-eigenstate family (including the imperfect-resonance and
/// pre-rotating-frame variants) shares the 16-dimensional scheme.
enum class ModelFamily { OneEigenstate, TwoEigenstate };

/// Fixed basis contract: the pair basis is the A-major lexicographic tensor
/// order, index = level_A * levels_per_atom + level_B, with the per-atom level
/// order listed above. Levels 0 and 1 are the qubit states; everything above
/// is a Rydberg state.
class LevelScheme {
 public:
  static LevelScheme one_eigenstate() { return LevelScheme(ModelFamily::OneEigenstate); }
  static LevelScheme two_eigenstate() { return LevelScheme(ModelFamily::TwoEigenstate); }

  ModelFamily family() const { return family_; }
  int levels_per_atom() const { return family_ == ModelFamily::OneEigenstate ? 3 : 4; }
  int pair_dim() const { return levels_per_atom() * levels_per_atom(); }

  static bool is_rydberg(int level) { return level >= 2; }
  static bool is_qubit(int level) { return level == 0 || level == 1; }

  /// Rydberg level reached by the standard rank-one drives (|a> on A, |b> on B).
  int primary_rydberg() const { return 2; }
  /// Second Rydberg level of the exchange channel (|alpha> on A, |beta> on B).
  int exchange_rydberg() const {
    if (family_ == ModelFamily::OneEigenstate)
      throw std::logic_error("one-eigenstate scheme has no exchange Rydberg level");
    return 3;
  }

  int pair_index(int level_a, int level_b) const {
    const int d = levels_per_atom();
    if (level_a < 0 || level_a >= d || level_b < 0 || level_b >= d)
      throw std::out_of_range("pair_index: level outside scheme");
    return level_a * d + level_b;
  }

  /// |ab> for the two-eigenstate family, |rr> for the one-eigenstate model.
  int idx_ab() const { return pair_index(2, 2); }
  int idx_alpha_beta() const { return pair_index(3, 3); }
  int idx_a_beta() const { return pair_index(2, 3); }
  int idx_alpha_b() const { return pair_index(3, 2); }

  /// Computational-basis pair index for qubit values (qa, qb) in {0,1}.
  int qubit_index(int qa, int qb) const {
    if ((qa != 0 && qa != 1) || (qb != 0 && qb != 1))
      throw std::out_of_range("qubit_index: qubit value must be 0 or 1");
    return pair_index(qa, qb);
  }

  std::string level_name(Atom atom, int level) const {
    const bool one = family_ == ModelFamily::OneEigenstate;
    switch (level) {
      case 0: return "g0";
      case 1: return "g1";
      case 2: return one ? "r" : (atom == Atom::A ? "a" : "b");
      case 3:
        if (one) break;
        return atom == Atom::A ? "alpha" : "beta";
      default: break;
    }
    throw std::out_of_range("level_name: level outside scheme");
  }

  friend bool operator==(const LevelScheme&, const LevelScheme&) = default;

 private:
  explicit LevelScheme(ModelFamily family) : family_(family) {}
  ModelFamily family_;
};

}  // namespace foersim
