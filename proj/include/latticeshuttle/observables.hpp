// Copyright 2026 The latticeshuttle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latticeshuttle/state.hpp"

namespace latticeshuttle {

struct OccupationProfile {
  std::vector<double> up;
  std::vector<double> down;
  std::vector<double> total;  // index 0 is site 1
};

/// <n_{i,s}> for every site and spin.
OccupationProfile occupation_profile(const StateVector& state);

/// Two-qubit pure state obtained by projecting onto "one atom at site_a,
/// one atom at site_b".
struct TwoQubitOutcome {
  int site_a = 1;
  int site_b = 2;
  /// Renormalized amplitudes over {uu, ud, du, dd}; the first label is the
  /// spin at site_a. Raw (unnormalized) amplitudes when !normalized.
  TwoQubitState amplitudes{};
  /// Probability of the projected subspace.
  double p_project = 0.0;
  /// False when p_project fell below the usability floor.
  bool normalized = false;
};

TwoQubitOutcome project_two_sites(const StateVector& state, int site_a,
                                  int site_b, double floor = 1e-12);

/// Wraps a bare two-qubit state; `amplitudes` must have unit norm.
TwoQubitOutcome outcome_from_state(const TwoQubitState& amplitudes);

/// Pure-state concurrence 2 |a_uu a_dd - a_ud a_du|.
double concurrence(const TwoQubitOutcome& outcome);

/// Pauli matrices in the basis (up, down): Z|up> = |up>, Y|up> = i|down>.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

/// W = (I - Z (x) Y - Y (x) Z - X (x) X) / 2 as a 4x4 matrix on
/// {uu, ud, du, dd}.
Eigen::Matrix4cd witness_matrix();

/// <W> for a normalized outcome.
double witness_expectation(const TwoQubitOutcome& outcome);

/// One term of W and the local rotations that turn it into a Z (x) Z
/// measurement: term = (R1 (x) R2) (Z (x) Z) (R1 (x) R2)^dagger. The
/// identity term has no measurement and identity rotations.
struct WitnessTerm {
  std::string label;
  double weight = 0.0;
  std::array<Eigen::Matrix2cd, 2> pre_rotations;
  bool measured = true;

  /// The 4x4 operator this term contributes, before weighting.
  Eigen::Matrix4cd operator_matrix() const;
};

/// The identity term followed by the three measured settings Z(x)Y,
/// Y(x)Z and X(x)X.
std::vector<WitnessTerm> witness_settings();

/// Sum of weight * operator over `terms`.
Eigen::Matrix4cd assemble_witness(const std::vector<WitnessTerm>& terms);

/// Finite-shot estimate of <W>: every measured setting is sampled `shots`
/// times in the Z basis after its rotations.
double sample_witness(const TwoQubitOutcome& outcome, std::uint64_t shots,
                      std::mt19937_64& rng);

/// Kronecker product a (x) b with a acting on the first qubit.
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace latticeshuttle
