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
#include <complex>
#include <initializer_list>
#include <memory>
#include <utility>

#include "latticeshuttle/basis.hpp"

namespace latticeshuttle {

using Complex = std::complex<double>;

/// Complex amplitudes over a FockBasis.
class StateVector {
 public:
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes);

  /// All-zero vector over `basis`.
  static StateVector Zero(BasisPtr basis);
  /// Unit vector on a single basis state.
  static StateVector BasisState(BasisPtr basis, std::size_t ordinal);

  const BasisPtr& basis() const { return basis_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }

  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amplitudes_.norm(); }
  /// Scales to unit norm and returns the norm before scaling.
  double normalize();

  /// <this|other>
  Complex inner(const StateVector& other) const;

  /// Throws ConfigError unless both vectors live on equal bases.
  void require_same_basis(const StateVector& other) const;

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

/// |<a|b>| for normalized a, b: the phase-insensitive overlap.
double overlap_modulus(const StateVector& a, const StateVector& b);

/// Spin product state: one atom per listed site, each in the spin
/// superposition alpha|up> + beta|down> given for that site. Sites must be
/// distinct; the basis particle number must equal the number of sites.
/// Amplitudes over {up-up, up-down, down-up, down-down}; the first label is
/// the spin of the first qubit.
using TwoQubitState = std::array<Complex, 4>;

StateVector product_state(
    const BasisPtr& basis,
    std::initializer_list<std::pair<int, std::array<Complex, 2>>> atoms);

}  // namespace latticeshuttle
