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

#include "latticeshuttle/state.hpp"

#include <algorithm>
#include <string>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw ConfigError("state vector needs a basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->dim()) {
    throw ConfigError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match basis dimension " +
                      std::to_string(basis_->dim()));
  }
}

StateVector StateVector::Zero(BasisPtr basis) {
  const auto dim = static_cast<Eigen::Index>(basis->dim());
  return StateVector(std::move(basis), Eigen::VectorXcd::Zero(dim));
}

StateVector StateVector::BasisState(BasisPtr basis, std::size_t ordinal) {
  if (ordinal >= basis->dim()) throw ConfigError("basis ordinal out of range");
  StateVector v = Zero(std::move(basis));
  v.amplitudes_[static_cast<Eigen::Index>(ordinal)] = 1.0;
  return v;
}

double StateVector::normalize() {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw ConfigError("cannot normalize the zero vector");
  amplitudes_ /= n;
  return n;
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_basis(other);
  return amplitudes_.dot(other.amplitudes_);
}

void StateVector::require_same_basis(const StateVector& other) const {
  if (!(*basis_ == *other.basis_)) throw ConfigError("basis mismatch");
}

double overlap_modulus(const StateVector& a, const StateVector& b) {
  return std::abs(a.inner(b));
}

StateVector product_state(
    const BasisPtr& basis,
    std::initializer_list<std::pair<int, std::array<Complex, 2>>> atoms) {
  if (static_cast<int>(atoms.size()) != basis->n_particles()) {
    throw ConfigError("product state needs one spinor per particle");
  }
  std::vector<std::pair<int, std::array<Complex, 2>>> list(atoms);
  for (const auto& [site, spinor] : list) {
    if (site < 1 || site > basis->n_sites()) {
      throw ConfigError("product state site out of range");
    }
  }
  if (list.size() == 2 && list[0].first == list[1].first) {
    throw ConfigError("product state sites must be distinct");
  }

  StateVector v = StateVector::Zero(basis);
  auto mode = [](int site, int spin) {
    return static_cast<std::uint16_t>(2 * (site - 1) + spin);
  };
  if (list.size() == 1) {
    for (int s = 0; s < 2; ++s) {
      const auto idx = basis->index_of_modes({mode(list[0].first, s), 0});
      v.amplitudes()[static_cast<Eigen::Index>(idx)] = list[0].second[s];
    }
  } else {
    for (int s0 = 0; s0 < 2; ++s0) {
      for (int s1 = 0; s1 < 2; ++s1) {
        FockBasis::ModeList modes{mode(list[0].first, s0),
                                  mode(list[1].first, s1)};
        std::sort(modes.begin(), modes.end());
        const auto idx = basis->index_of_modes(modes);
        v.amplitudes()[static_cast<Eigen::Index>(idx)] =
            list[0].second[s0] * list[1].second[s1];
      }
    }
  }
  return v;
}

}  // namespace latticeshuttle
