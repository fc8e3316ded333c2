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

#include "latticeshuttle/basis.hpp"

#include <numeric>
#include <string>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

int FockConfig::particle_count() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

FockBasis::FockBasis(int n_sites, int n_particles)
    : n_sites_(n_sites), n_particles_(n_particles) {
  if (n_sites < 2) {
    throw ConfigError("basis needs at least 2 sites, got " +
                      std::to_string(n_sites));
  }
  if (n_particles < 1 || n_particles > kMaxParticles) {
    throw ConfigError("basis supports 1 or 2 particles, got " +
                      std::to_string(n_particles));
  }
  const auto n_modes = static_cast<std::uint16_t>(2 * n_sites);
  states_.reserve(expected_dim(n_sites, n_particles));
  // Ascending sorted mode lists are exactly descending occupation tuples.
  if (n_particles == 1) {
    for (std::uint16_t m = 0; m < n_modes; ++m) states_.push_back({m, 0});
  } else {
    for (std::uint16_t a = 0; a < n_modes; ++a) {
      for (std::uint16_t b = a; b < n_modes; ++b) states_.push_back({a, b});
    }
  }

  const std::size_t table =
      n_particles == 1 ? n_modes : std::size_t{n_modes} * n_modes;
  lookup_.assign(table, -1);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    lookup_[lookup_key(states_[i])] = static_cast<std::int64_t>(i);
  }
}

std::size_t FockBasis::lookup_key(const ModeList& modes) const {
  if (n_particles_ == 1) return modes[0];
  return std::size_t{modes[0]} * static_cast<std::size_t>(n_modes()) +
         modes[1];
}

std::size_t FockBasis::index_of_modes(const ModeList& modes) const {
  for (int p = 0; p < n_particles_; ++p) {
    if (modes[p] >= n_modes()) throw ConfigError("mode index out of range");
  }
  if (n_particles_ == 2 && modes[0] > modes[1]) {
    throw ConfigError("mode list must be sorted");
  }
  const auto idx = lookup_[lookup_key(modes)];
  if (idx < 0) throw ConfigError("configuration not in basis");
  return static_cast<std::size_t>(idx);
}

std::size_t FockBasis::index_of(const FockConfig& config) const {
  if (config.n_sites != n_sites_ ||
      config.occupations.size() != static_cast<std::size_t>(n_modes())) {
    throw ConfigError("configuration has " + std::to_string(config.n_sites) +
                      " sites, basis has " + std::to_string(n_sites_));
  }
  if (config.particle_count() != n_particles_) {
    throw ConfigError("configuration particle count does not match basis");
  }
  ModeList modes{0, 0};
  int filled = 0;
  for (std::size_t m = 0; m < config.occupations.size(); ++m) {
    for (int k = 0; k < config.occupations[m]; ++k) {
      modes[filled++] = static_cast<std::uint16_t>(m);
    }
  }
  return index_of_modes(modes);
}

FockConfig FockBasis::config_of(std::size_t ordinal) const {
  if (ordinal >= states_.size()) {
    throw ConfigError("ordinal " + std::to_string(ordinal) +
                      " out of range for basis of dimension " +
                      std::to_string(states_.size()));
  }
  FockConfig config{n_sites_, std::vector<std::uint8_t>(n_modes(), 0)};
  for (int p = 0; p < n_particles_; ++p) ++config.occupations[states_[ordinal][p]];
  return config;
}

BasisPtr enumerate_basis(int n_sites, int n_particles) {
  return std::make_shared<const FockBasis>(n_sites, n_particles);
}

std::size_t expected_dim(int n_sites, int n_particles) {
  // C(M + n - 1, n) for M = 2N modes.
  const std::size_t modes = 2 * static_cast<std::size_t>(n_sites);
  std::size_t num = 1;
  std::size_t den = 1;
  for (int k = 0; k < n_particles; ++k) {
    num *= modes + static_cast<std::size_t>(k);
    den *= static_cast<std::size_t>(k + 1);
  }
  return num / den;
}

}  // namespace latticeshuttle
