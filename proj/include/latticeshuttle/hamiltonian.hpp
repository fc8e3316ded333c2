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
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "latticeshuttle/basis.hpp"
#include "latticeshuttle/state.hpp"

namespace latticeshuttle {

/// Coupling values of the superlattice Hubbard model. Link i (1-based)
/// joins sites i and i+1 and carries j_odd for odd i, j_even for even i.
struct CouplingProfile {
  double j_odd = 1.0;
  double j_even = 0.0;
  double u = 0.0;
  double tilt_slope = 0.0;

  double link_coupling(int link) const { return link % 2 == 1 ? j_odd : j_even; }

  /// Pointwise (1 - f) * a + f * b.
  static CouplingProfile Lerp(const CouplingProfile& a,
                              const CouplingProfile& b, double f);

  void validate() const;

  friend bool operator==(const CouplingProfile&, const CouplingProfile&) =
      default;
};

/// Sparsity pattern and per-entry coefficients of the Hamiltonian on one
/// basis. Every hopping entry is stored even when its link coupling is
/// zero, so all Hamiltonians on a basis share this structure and can be
/// interpolated entrywise.
struct HamiltonianStructure {
  BasisPtr basis;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> cols;  // sorted within each row
  /// Link index for hopping entries, 0 for the diagonal.
  std::vector<std::int32_t> link;
  /// sqrt(n_src) * sqrt(n_dst + 1) for hopping entries.
  std::vector<double> bosonic_factor;
  /// Per-row diagonal coefficients: sum n(n-1), sum n_up n_down, sum i n_i.
  std::vector<double> same_spin_pairs;
  std::vector<double> opposite_spin_pairs;
  std::vector<double> site_weight;
  std::vector<std::int64_t> diag_pos;

  static std::shared_ptr<const HamiltonianStructure> Build(BasisPtr basis);
};

/// Two-component Bose-Hubbard Hamiltonian
///
///   H = -sum_{i,s} J_i (a+_{i,s} a_{i+1,s} + h.c.)
///       + U/2 sum_{i,s} n_{i,s}(n_{i,s} - 1)
///       + U/2 sum_i n_{i,up} n_{i,down}
///       + tilt_slope * sum_i i n_i
///
/// in compressed-row storage. The opposite-spin term carries U/2.
class SparseHamiltonian {
 public:
  SparseHamiltonian(std::shared_ptr<const HamiltonianStructure> structure,
                    CouplingProfile profile);

  const BasisPtr& basis() const { return structure_->basis; }
  const CouplingProfile& profile() const { return profile_; }
  const HamiltonianStructure& structure() const { return *structure_; }
  const std::shared_ptr<const HamiltonianStructure>& structure_ptr() const {
    return structure_;
  }
  std::size_t dim() const { return basis()->dim(); }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }

  /// out = H * in. Sizes must equal dim().
  void multiply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  /// Raw form of multiply; both buffers hold dim() entries and must not
  /// alias.
  void multiply(const Complex* in, Complex* out) const;

  /// Element (row, col); zero if not stored.
  Complex coeff(std::size_t row, std::size_t col) const;

  /// Max absolute row sum. Equals the 1-norm since H is Hermitian.
  double one_norm() const { return one_norm_; }

  /// max |H(r,c) - conj(H(c,r))| over stored entries.
  double hermiticity_defect() const;

  Eigen::MatrixXcd to_dense() const;

  /// Coordinate dump, one "row col re im" line per stored entry.
  void write_coo(std::ostream& os) const;

 private:
  friend SparseHamiltonian interpolate(const SparseHamiltonian&,
                                       const SparseHamiltonian&, double);
  SparseHamiltonian(std::shared_ptr<const HamiltonianStructure> structure,
                    CouplingProfile profile, std::vector<Complex> values);

  std::shared_ptr<const HamiltonianStructure> structure_;
  CouplingProfile profile_;
  std::vector<Complex> values_;
  double one_norm_ = 0.0;

  double compute_one_norm() const;
};

SparseHamiltonian build_hamiltonian(const BasisPtr& basis,
                                    const CouplingProfile& profile);
SparseHamiltonian build_hamiltonian(
    const std::shared_ptr<const HamiltonianStructure>& structure,
    const CouplingProfile& profile);

/// H|v>, unnormalized.
StateVector apply(const SparseHamiltonian& h, const StateVector& v);

/// Real part of <v|H|v>.
double expectation(const SparseHamiltonian& h, const StateVector& v);

/// Entrywise (1 - fraction) * h_a + fraction * h_b.
SparseHamiltonian interpolate(const SparseHamiltonian& h_a,
                              const SparseHamiltonian& h_b, double fraction);

}  // namespace latticeshuttle
