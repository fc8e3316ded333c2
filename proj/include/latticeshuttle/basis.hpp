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

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace latticeshuttle {

enum class Spin : std::uint8_t { kUp = 0, kDown = 1 };

inline constexpr std::array<Spin, 2> kSpins = {Spin::kUp, Spin::kDown};

/// A (site, spin) mode. Sites are 1-based to match the chain labelling
/// 1..N used throughout the library.
struct Mode {
  int site = 1;
  Spin spin = Spin::kUp;

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Occupation-number configuration over the 2N modes of an N-site chain.
/// The flattened mode index is 2 * (site - 1) + spin (site-major,
/// spin-minor).
struct FockConfig {
  int n_sites = 0;
  std::vector<std::uint8_t> occupations;

  int occupation(int site, Spin spin) const {
    return occupations[ModeIndex(site, spin)];
  }
  int particle_count() const;

  static std::size_t ModeIndex(int site, Spin spin) {
    return 2 * static_cast<std::size_t>(site - 1) +
           static_cast<std::size_t>(spin);
  }

  friend bool operator==(const FockConfig&, const FockConfig&) = default;
};

/// Fixed-particle-number bosonic Fock space on an open chain.
///
/// States are ordered so that the flattened occupation tuples decrease
/// lexicographically: ordinal 0 places every atom in mode (site 1, up) and
/// the last ordinal places every atom in mode (site N, down). Each state is
/// stored compactly as its sorted list of occupied mode indices (with
/// repetition for double occupancy).
class FockBasis {
 public:
  static constexpr int kMaxParticles = 2;
  using ModeList = std::array<std::uint16_t, kMaxParticles>;

  FockBasis(int n_sites, int n_particles);

  int n_sites() const { return n_sites_; }
  int n_modes() const { return 2 * n_sites_; }
  int n_particles() const { return n_particles_; }
  std::size_t dim() const { return states_.size(); }

  /// Sorted occupied mode indices of state `ordinal`; only the first
  /// n_particles() entries are meaningful.
  const ModeList& modes(std::size_t ordinal) const { return states_[ordinal]; }

  std::size_t index_of(const FockConfig& config) const;
  FockConfig config_of(std::size_t ordinal) const;

  /// Ordinal for a sorted list of occupied modes. Throws if the list does
  /// not describe a state of this basis.
  std::size_t index_of_modes(const ModeList& modes) const;

  bool operator==(const FockBasis& other) const {
    return n_sites_ == other.n_sites_ && n_particles_ == other.n_particles_;
  }

 private:
  std::size_t lookup_key(const ModeList& modes) const;

  int n_sites_;
  int n_particles_;
  std::vector<ModeList> states_;
  std::vector<std::int64_t> lookup_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Builds the basis of `n_particles` (1 or 2) atoms on `n_sites` (>= 2)
/// sites.
BasisPtr enumerate_basis(int n_sites, int n_particles);

/// Multiset coefficient C(2N + n - 1, n): the dimension enumerate_basis
/// must produce.
std::size_t expected_dim(int n_sites, int n_particles);

}  // namespace latticeshuttle
