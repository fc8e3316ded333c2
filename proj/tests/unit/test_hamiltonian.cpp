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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "latticeshuttle/basis.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/hamiltonian.hpp"

namespace latticeshuttle {
namespace {

std::uint16_t mode(int site, Spin s) {
  return static_cast<std::uint16_t>(FockConfig::ModeIndex(site, s));
}

TEST(Hamiltonian, SingleAtomDoubleWell) {
  const auto basis = enumerate_basis(2, 1);
  const auto h = build_hamiltonian(basis, {.j_odd = 0.7, .j_even = 0.0, .u = 3.0});
  const auto up1 = basis->index_of_modes({mode(1, Spin::kUp), 0});
  const auto up2 = basis->index_of_modes({mode(2, Spin::kUp), 0});
  const auto dn1 = basis->index_of_modes({mode(1, Spin::kDown), 0});
  const auto dn2 = basis->index_of_modes({mode(2, Spin::kDown), 0});
  EXPECT_DOUBLE_EQ(h.coeff(up1, up2).real(), -0.7);
  EXPECT_DOUBLE_EQ(h.coeff(dn1, dn2).real(), -0.7);
  EXPECT_EQ(h.coeff(up1, dn2), Complex(0.0));
  EXPECT_EQ(h.coeff(up1, up1), Complex(0.0));
}

TEST(Hamiltonian, SameSpinPairBlock) {
  const auto basis = enumerate_basis(2, 2);
  const double j = 1.0;
  const double u = 25.0;
  const auto h = build_hamiltonian(basis, {.j_odd = j, .j_even = 0.0, .u = u});
  const auto a = mode(1, Spin::kUp);
  const auto b = mode(2, Spin::kUp);
  const std::size_t idx[3] = {basis->index_of_modes({a, a}), basis->index_of_modes({a, b}),
                              basis->index_of_modes({b, b})};
  Eigen::Matrix3d expected;
  expected << u, -std::sqrt(2.0) * j, 0.0,
              -std::sqrt(2.0) * j, 0.0, -std::sqrt(2.0) * j,
              0.0, -std::sqrt(2.0) * j, u;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      EXPECT_NEAR(h.coeff(idx[r], idx[c]).real(), expected(r, c), 1e-15);
      EXPECT_EQ(h.coeff(idx[r], idx[c]).imag(), 0.0);
    }
  }
}

TEST(Hamiltonian, OppositeSpinPairOnOneSiteCostsHalfU) {
  const auto basis = enumerate_basis(2, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.0, .u = 25.0});
  const auto i = basis->index_of_modes({mode(1, Spin::kUp), mode(1, Spin::kDown)});
  EXPECT_DOUBLE_EQ(h.coeff(i, i).real(), 12.5);
}

TEST(Hamiltonian, TiltWeightsBySite) {
  const auto basis = enumerate_basis(3, 1);
  const auto h = build_hamiltonian(basis, {.j_odd = 0.0, .j_even = 0.0, .tilt_slope = 0.25});
  for (int site = 1; site <= 3; ++site) {
    const auto i = basis->index_of_modes({mode(site, Spin::kDown), 0});
    EXPECT_DOUBLE_EQ(h.coeff(i, i).real(), 0.25 * site);
  }
}

TEST(Hamiltonian, HermitianWithRealExpectation) {
  const auto basis = enumerate_basis(6, 2);
  const auto h = build_hamiltonian(
      basis, {.j_odd = 0.8, .j_even = 0.3, .u = 25.0, .tilt_slope = 0.1});
  EXPECT_LT(h.hermiticity_defect(), 1e-14);
  const Eigen::MatrixXcd dense = h.to_dense();
  EXPECT_LT((dense - dense.adjoint()).cwiseAbs().maxCoeff(), 1e-14);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->dim()));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  StateVector s(basis, v);
  s.normalize();
  const Complex direct = s.amplitudes().dot(dense * s.amplitudes());
  EXPECT_LT(std::abs(direct.imag()), 1e-12);
  EXPECT_NEAR(expectation(h, s), direct.real(), 1e-12);
  EXPECT_LT((apply(h, s).amplitudes() - dense * s.amplitudes()).norm(), 1e-12);
}

TEST(Hamiltonian, InterpolateEndpointsAndMidpoint) {
  const auto basis = enumerate_basis(5, 2);
  const auto h_a = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.0, .u = 25.0});
  const auto h_b = build_hamiltonian(basis, {.j_odd = 0.0, .j_even = 1.0, .u = 25.0});
  EXPECT_EQ(interpolate(h_a, h_b, 0.0).values(), h_a.values());
  EXPECT_EQ(interpolate(h_a, h_b, 1.0).values(), h_b.values());

  const auto mid = interpolate(h_a, h_b, 0.5);
  EXPECT_DOUBLE_EQ(mid.profile().j_odd, 0.5);
  EXPECT_DOUBLE_EQ(mid.profile().j_even, 0.5);
  const auto rebuilt = build_hamiltonian(basis, mid.profile());
  EXPECT_LT((mid.to_dense() - rebuilt.to_dense()).cwiseAbs().maxCoeff(), 1e-15);

  // Single atom hopping across link 1 and link 2 both carry -J/2.
  const auto b1 = enumerate_basis(3, 1);
  const auto m1 = interpolate(build_hamiltonian(b1, {.j_odd = 1.0, .j_even = 0.0}),
                              build_hamiltonian(b1, {.j_odd = 0.0, .j_even = 1.0}), 0.5);
  const auto s1 = b1->index_of_modes({mode(1, Spin::kUp), 0});
  const auto s2 = b1->index_of_modes({mode(2, Spin::kUp), 0});
  const auto s3 = b1->index_of_modes({mode(3, Spin::kUp), 0});
  EXPECT_DOUBLE_EQ(m1.coeff(s1, s2).real(), -0.5);
  EXPECT_DOUBLE_EQ(m1.coeff(s2, s3).real(), -0.5);
  EXPECT_THROW(interpolate(h_a, h_b, 1.5), ConfigError);
  EXPECT_THROW(interpolate(h_a, build_hamiltonian(b1, {}), 0.5), ConfigError);
}

// Connected components of the graph with an edge for every nonzero entry.
int count_blocks(const SparseHamiltonian& h) {
  const auto n = h.dim();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const Eigen::MatrixXcd d = h.to_dense();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) != Complex(0.0)) {
        parent[find(r)] = find(c);
      }
    }
  }
  int blocks = 0;
  for (std::size_t i = 0; i < n; ++i) blocks += find(i) == i;
  return blocks;
}

TEST(Hamiltonian, InactiveLinksSplitIntoDoubleWells) {
  // Odd links only: sites {1,2}, {3,4}, {5,6}, times two spins.
  const auto b1 = enumerate_basis(6, 1);
  EXPECT_EQ(count_blocks(build_hamiltonian(b1, {.j_odd = 1.0, .j_even = 0.0})), 6);
  // Even links only: {1}, {2,3}, {4,5}, {6}, times two spins.
  EXPECT_EQ(count_blocks(build_hamiltonian(b1, {.j_odd = 0.0, .j_even = 1.0})), 8);
  // Both families connect the chain per spin.
  EXPECT_EQ(count_blocks(build_hamiltonian(b1, {.j_odd = 1.0, .j_even = 1.0})), 2);
  // Two atoms in three double wells: choose wells and spins per atom.
  // Same-spin pairs: 3 wells unordered-with-repetition (6) per spin (2) = 12;
  // opposite-spin pairs: 3 x 3 ordered wells = 9. Total 21.
  const auto b2 = enumerate_basis(6, 2);
  EXPECT_EQ(count_blocks(build_hamiltonian(b2, {.j_odd = 1.0, .j_even = 0.0, .u = 5.0})), 21);
}

TEST(Hamiltonian, CooDumpReproducesMatrix) {
  const auto basis = enumerate_basis(3, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.4, .u = 2.0});
  std::ostringstream os;
  h.write_coo(os);
  std::istringstream is(os.str());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(h.dim()),
                                              static_cast<Eigen::Index>(h.dim()));
  std::size_t lines = 0;
  long r = 0;
  long c = 0;
  double re = 0.0;
  double im = 0.0;
  while (is >> r >> c >> re >> im) {
    d(r, c) = Complex(re, im);
    ++lines;
  }
  EXPECT_EQ(lines, h.nnz());
  EXPECT_LT((d - h.to_dense()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hamiltonian, RejectsNegativeCouplings) {
  const auto basis = enumerate_basis(2, 1);
  EXPECT_THROW(build_hamiltonian(basis, {.j_odd = -1.0}), ConfigError);
  EXPECT_THROW(build_hamiltonian(basis, {.u = -1.0}), ConfigError);
}

}  // namespace
}  // namespace latticeshuttle
