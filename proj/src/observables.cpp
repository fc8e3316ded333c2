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

#include "latticeshuttle/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Vector4cd as_vector(const TwoQubitState& s) {
  return Eigen::Vector4cd(s[0], s[1], s[2], s[3]);
}

void require_normalized(const TwoQubitOutcome& outcome) {
  if (!outcome.normalized) {
    throw ConfigError("two-qubit outcome is not normalized (projection probability " +
                      std::to_string(outcome.p_project) + ")");
  }
  const double norm = as_vector(outcome.amplitudes).norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ConfigError("two-qubit amplitudes have norm " + std::to_string(norm));
  }
}

std::uint16_t mode_of(int site, int spin) {
  return static_cast<std::uint16_t>(2 * (site - 1) + spin);
}

}  // namespace

OccupationProfile occupation_profile(const StateVector& state) {
  const auto& basis = *state.basis();
  const auto n = static_cast<std::size_t>(basis.n_sites());
  OccupationProfile out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                        std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    const auto& modes = basis.modes(i);
    for (int k = 0; k < basis.n_particles(); ++k) {
      const std::size_t site = modes[k] / 2;
      (modes[k] % 2 == 0 ? out.up : out.down)[site] += p;
    }
  }
  for (std::size_t s = 0; s < n; ++s) out.total[s] = out.up[s] + out.down[s];
  return out;
}

TwoQubitOutcome project_two_sites(const StateVector& state, int site_a,
                                  int site_b, double floor) {
  const auto& basis = *state.basis();
  if (basis.n_particles() != 2) throw ConfigError("projection needs a two-atom state");
  if (site_a == site_b) throw ConfigError("projection sites must differ");
  for (int s : {site_a, site_b}) {
    if (s < 1 || s > basis.n_sites()) throw ConfigError("projection site out of range");
  }
  TwoQubitOutcome out;
  out.site_a = site_a;
  out.site_b = site_b;
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      FockBasis::ModeList modes{mode_of(site_a, sa), mode_of(site_b, sb)};
      std::sort(modes.begin(), modes.end());
      out.amplitudes[2 * sa + sb] = state[basis.index_of_modes(modes)];
    }
  }
  double p = 0.0;
  for (const auto& a : out.amplitudes) p += std::norm(a);
  out.p_project = std::min(p, 1.0);
  if (p >= floor && p > 0.0) {
    const double scale = 1.0 / std::sqrt(p);
    for (auto& a : out.amplitudes) a *= scale;
    out.normalized = true;
  }
  return out;
}

TwoQubitOutcome outcome_from_state(const TwoQubitState& amplitudes) {
  TwoQubitOutcome out;
  out.amplitudes = amplitudes;
  out.p_project = 1.0;
  out.normalized = true;
  require_normalized(out);
  return out;
}

double concurrence(const TwoQubitOutcome& outcome) {
  require_normalized(outcome);
  const auto& a = outcome.amplitudes;
  return std::min(1.0, 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]));
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

Eigen::Matrix4cd witness_matrix() {
  return 0.5 * (Eigen::Matrix4cd::Identity() - kron(pauli_z(), pauli_y()) -
                kron(pauli_y(), pauli_z()) - kron(pauli_x(), pauli_x()));
}

double witness_expectation(const TwoQubitOutcome& outcome) {
  require_normalized(outcome);
  const Eigen::Vector4cd psi = as_vector(outcome.amplitudes);
  return psi.dot(witness_matrix() * psi).real();
}

Eigen::Matrix4cd WitnessTerm::operator_matrix() const {
  if (!measured) return Eigen::Matrix4cd::Identity();
  const Eigen::Matrix4cd r = kron(pre_rotations[0], pre_rotations[1]);
  return r * kron(pauli_z(), pauli_z()) * r.adjoint();
}

std::vector<WitnessTerm> witness_settings() {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd hadamard = (pauli_x() + pauli_z()) / std::numbers::sqrt2;
  // exp(i pi/4 X) Z exp(-i pi/4 X) = Y
  const Eigen::Matrix2cd to_y =
      std::cos(std::numbers::pi / 4) * id + kI * std::sin(std::numbers::pi / 4) * pauli_x();
  return {
      {"I", 0.5, {id, id}, false},
      {"Z*Y", -0.5, {id, to_y}, true},
      {"Y*Z", -0.5, {to_y, id}, true},
      {"X*X", -0.5, {hadamard, hadamard}, true},
  };
}

Eigen::Matrix4cd assemble_witness(const std::vector<WitnessTerm>& terms) {
  Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
  for (const auto& t : terms) w += t.weight * t.operator_matrix();
  return w;
}

double sample_witness(const TwoQubitOutcome& outcome, std::uint64_t shots,
                      std::mt19937_64& rng) {
  require_normalized(outcome);
  if (shots == 0) throw ConfigError("witness sampling needs at least one shot");
  const Eigen::Vector4cd psi = as_vector(outcome.amplitudes);
  constexpr std::array<double, 4> kZZ = {1.0, -1.0, -1.0, 1.0};
  double estimate = 0.0;
  for (const auto& term : witness_settings()) {
    if (!term.measured) {
      estimate += term.weight;
      continue;
    }
    const Eigen::Matrix4cd r = kron(term.pre_rotations[0], term.pre_rotations[1]);
    const Eigen::Vector4cd rotated = r.adjoint() * psi;
    std::discrete_distribution<int> outcome_dist(
        {std::norm(rotated[0]), std::norm(rotated[1]), std::norm(rotated[2]),
         std::norm(rotated[3])});
    double sum = 0.0;
    for (std::uint64_t k = 0; k < shots; ++k) sum += kZZ[outcome_dist(rng)];
    estimate += term.weight * sum / static_cast<double>(shots);
  }
  return estimate;
}

}  // namespace latticeshuttle
