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
#include <numbers>

#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/observables.hpp"
#include "latticeshuttle/propagator.hpp"

namespace latticeshuttle {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Analytic, SingleAtomHop) {
  const auto at_zero = single_atom_amplitudes(1.0, 0.0);
  EXPECT_EQ(at_zero.stay, Complex(1.0));
  EXPECT_EQ(at_zero.hop, Complex(0.0));
  const auto at_hop = single_atom_amplitudes(1.0, kPi / 2.0);
  EXPECT_LT(std::abs(at_hop.stay), 1e-15);
  EXPECT_LT(std::abs(at_hop.hop - Complex(0.0, 1.0)), 1e-15);
}

TEST(Analytic, TwoAtomCoefficientsAreNormalized) {
  for (double u : {5.0, 25.0, 200.0}) {
    for (double t : {0.0, 0.4, 3.3, 17.0, 250.0}) {
      const auto c = two_atom_coefficients(1.0, u, t);
      EXPECT_NEAR(std::norm(c.a_same) + 2.0 * std::norm(c.c_same), 1.0, 1e-12);
      EXPECT_NEAR(std::norm(c.a_diff) + std::norm(c.b_diff) + 2.0 * std::norm(c.c_diff),
                  1.0, 1e-12);
    }
  }
  const auto c0 = two_atom_coefficients(1.0, 25.0, 0.0);
  EXPECT_LT(std::abs(c0.a_same - 1.0), 1e-15);
  EXPECT_LT(std::abs(c0.a_diff - 1.0), 1e-15);
  EXPECT_LT(std::abs(c0.b_diff), 1e-15);
  EXPECT_NEAR(c0.s, std::sqrt(1.0 + 16.0 / 625.0), 1e-15);
  EXPECT_NEAR(c0.s_prime, std::sqrt(1.0 + 64.0 / 625.0), 1e-15);
  EXPECT_THROW(two_atom_coefficients(1.0, 0.0, 1.0), ConfigError);
}

TEST(Analytic, ExchangeAndTiming) {
  EXPECT_DOUBLE_EQ(exchange_coupling(1.0, 25.0), 0.16);
  EXPECT_NEAR(interaction_time(1.0, 25.0), 25.0 * kPi / 8.0, 1e-13);
  const PhysicalUnits units{1500.0};
  // J_ex / h in Hz.
  EXPECT_NEAR(exchange_coupling(1.0, 25.0) * units.j_over_h_hz, 240.0, 1e-9);
  EXPECT_NEAR(to_physical(kPi / 2.0, units), 1.0 / 6000.0, 1e-15);
  const double tt = to_physical(total_time(100, 1.0, 25.0), units);
  EXPECT_NEAR(tt, 17.375e-3, 1e-9);
  EXPECT_NEAR(tt, 17.4e-3, 1e-3);
  EXPECT_THROW(total_time(1, 1.0, 25.0), ConfigError);
  EXPECT_THROW(PhysicalUnits{0.0}.angular_frequency(), ConfigError);
}

TEST(Analytic, DoubleOccupancyAtTwentyFiveJ) {
  const double p = max_double_occupancy(1.0, 25.0, interaction_time(1.0, 25.0));
  EXPECT_GE(p, 0.015);
  EXPECT_LE(p, 0.020);
  EXPECT_NEAR(p, 0.0178, 2e-4);
  EXPECT_LE(p, double_occupancy_bound(1.0, 25.0) + 1e-15);
  EXPECT_EQ(double_occupancy(1.0, 25.0, 0.0), 0.0);
  // Suppressed as (J/U)^2.
  const double p100 = max_double_occupancy(1.0, 100.0, interaction_time(1.0, 100.0));
  EXPECT_NEAR(p100 / p, 1.0 / 16.0, 0.01);
}

TEST(Analytic, EffectiveGate) {
  const double h = 0.5;
  const TwoQubitState plus{h, h, h, h};
  const double jex = 0.16;
  const auto out = effective_gate_state(plus, jex, kPi / (2.0 * jex));
  EXPECT_LT(std::abs(out[0] - h), 1e-15);
  EXPECT_LT(std::abs(out[1] - Complex(0.0, h)), 1e-15);
  EXPECT_LT(std::abs(out[2] - Complex(0.0, h)), 1e-15);
  EXPECT_LT(std::abs(out[3] - h), 1e-15);
  EXPECT_NEAR(concurrence(outcome_from_state(out)), 1.0, 1e-14);
}

TEST(Analytic, LargeInteractionMatchesEffectiveGate) {
  const auto basis = enumerate_basis(2, 2);
  const double u = 200.0;
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.0, .u = u});
  const double r = 1.0 / std::sqrt(2.0);
  const auto in = product_state(basis, {{1, {r, r}}, {2, {r, r}}});
  const double t_int = interaction_time(1.0, u);
  const double jex = exchange_coupling(1.0, u);
  for (int k = 0; k <= 20; ++k) {
    const double t = t_int * k / 20.0;
    const auto proj = project_two_sites(evolve_hold(in, h, t), 1, 2);
    const auto ideal = effective_gate_state({0.5, 0.5, 0.5, 0.5}, jex, t);
    Complex ov = 0.0;
    for (int q = 0; q < 4; ++q) ov += std::conj(ideal[q]) * proj.amplitudes[q];
    EXPECT_GE(std::abs(ov), 0.999) << t;
  }
}

}  // namespace
}  // namespace latticeshuttle
