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
#include <random>
#include <sstream>

#include "dense_oracle.hpp"
#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/observables.hpp"
#include "latticeshuttle/propagator.hpp"
#include "latticeshuttle/schedule.hpp"

namespace latticeshuttle {
namespace {

using testing::dense_evolve;
using testing::dense_evolve_schedule;

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

std::uint16_t mode(int site, Spin s) {
  return static_cast<std::uint16_t>(FockConfig::ModeIndex(site, s));
}

StateVector one_atom(const BasisPtr& basis, int site) {
  return StateVector::BasisState(basis, basis->index_of_modes({mode(site, Spin::kUp), 0}));
}

StateVector random_state(const BasisPtr& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->dim()));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  StateVector s(basis, v);
  s.normalize();
  return s;
}

TEST(Propagator, SingleHopTransfersTheAtom) {
  const auto basis = enumerate_basis(2, 1);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.0});
  const auto out = evolve_hold(one_atom(basis, 1), h, hop_time(1.0));
  const auto p = std::norm(out[basis->index_of_modes({mode(2, Spin::kUp), 0})]);
  EXPECT_GE(p, 1.0 - 1e-9);
}

TEST(Propagator, ZeroDurationIsIdentity) {
  const auto basis = enumerate_basis(4, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.5, .u = 3.0});
  const auto in = random_state(basis, 3);
  EXPECT_EQ(evolve_hold(in, h, 0.0).amplitudes(), in.amplitudes());
  EXPECT_EQ(evolve_ramp(in, h, h, 0.0).amplitudes(), in.amplitudes());
  EXPECT_THROW(evolve_hold(in, h, -1.0), ConfigError);
}

TEST(Propagator, SingleAtomMatchesClosedForm) {
  const auto basis = enumerate_basis(2, 1);
  const auto h = build_hamiltonian(basis, {.j_odd = 0.8, .j_even = 0.0});
  for (double t : {0.1, 0.9, 2.5, 7.0}) {
    const auto out = evolve_hold(one_atom(basis, 1), h, t);
    const auto amp = single_atom_amplitudes(0.8, t);
    EXPECT_LT(std::abs(out[basis->index_of_modes({mode(1, Spin::kUp), 0})] - amp.stay), 1e-10);
    EXPECT_LT(std::abs(out[basis->index_of_modes({mode(2, Spin::kUp), 0})] - amp.hop), 1e-10);
  }
}

TEST(Propagator, TwoAtomsMatchClosedFormUpToPhase) {
  const auto basis = enumerate_basis(2, 2);
  const double j = 1.0;
  for (double u : {5.0, 25.0, 200.0}) {
    const auto h = build_hamiltonian(basis, {.j_odd = j, .j_even = 0.0, .u = u});
    for (double t : {0.3, 1.7, 6.0}) {
      const auto c = two_atom_coefficients(j, u, t);
      const auto up1 = mode(1, Spin::kUp);
      const auto up2 = mode(2, Spin::kUp);
      const auto dn1 = mode(1, Spin::kDown);
      const auto dn2 = mode(2, Spin::kDown);

      // Same spin: |up, up> on sites 1 and 2.
      const auto same = evolve_hold(
          StateVector::BasisState(basis, basis->index_of_modes({up1, up2})), h, t);
      Eigen::VectorXcd expect_same = Eigen::VectorXcd::Zero(10);
      expect_same[static_cast<Eigen::Index>(basis->index_of_modes({up1, up2}))] = c.a_same;
      expect_same[static_cast<Eigen::Index>(basis->index_of_modes({up1, up1}))] = c.c_same;
      expect_same[static_cast<Eigen::Index>(basis->index_of_modes({up2, up2}))] = c.c_same;
      EXPECT_GT(testing::overlap(expect_same, same.amplitudes()), 1.0 - 1e-10);

      // Opposite spin: up on site 1, down on site 2.
      const auto diff = evolve_hold(
          StateVector::BasisState(basis, basis->index_of_modes({up1, dn2})), h, t);
      Eigen::VectorXcd expect_diff = Eigen::VectorXcd::Zero(10);
      expect_diff[static_cast<Eigen::Index>(basis->index_of_modes({up1, dn2}))] = c.a_diff;
      expect_diff[static_cast<Eigen::Index>(basis->index_of_modes({dn1, up2}))] = c.b_diff;
      expect_diff[static_cast<Eigen::Index>(basis->index_of_modes({up1, dn1}))] = c.c_diff;
      expect_diff[static_cast<Eigen::Index>(basis->index_of_modes({up2, dn2}))] = c.c_diff;
      EXPECT_GT(testing::overlap(expect_diff, diff.amplitudes()), 1.0 - 1e-10);
    }
  }
}

TEST(Propagator, HoldAgreesWithDenseExponential) {
  const auto basis = enumerate_basis(5, 2);  // dim 55
  const auto h = build_hamiltonian(
      basis, {.j_odd = 1.0, .j_even = 0.6, .u = 7.0, .tilt_slope = 0.3});
  const auto in = random_state(basis, 11);
  for (double t : {0.01, 1.0, 12.0}) {
    const auto out = evolve_hold(in, h, t);
    const Eigen::VectorXcd ref = dense_evolve(h.to_dense(), t, in.amplitudes());
    EXPECT_LT((out.amplitudes() - ref).norm(), 1e-9) << t;
  }
}

TEST(Propagator, RampWithEqualEndpointsIsAHold) {
  const auto basis = enumerate_basis(4, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.2, .u = 4.0});
  const auto in = random_state(basis, 5);
  const auto a = evolve_ramp(in, h, h, 1.3);
  const auto b = evolve_hold(in, h, 1.3);
  EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-12);
}

TEST(Propagator, RampSelfConverges) {
  const auto basis = enumerate_basis(6, 2);
  const auto h_a = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.0, .u = 25.0});
  const auto h_b = build_hamiltonian(basis, {.j_odd = 0.0, .j_even = 1.0, .u = 25.0});
  const auto in = random_state(basis, 9);
  const double tau = 0.1 * hop_time(1.0);
  PropagatorConfig tight;
  tight.tolerance = 1e-12;
  const auto coarse = evolve_ramp(in, h_a, h_b, tau);
  const auto fine = evolve_ramp(in, h_a, h_b, tau, tight);
  EXPECT_LT((coarse.amplitudes() - fine.amplitudes()).norm(), 1e-8);

  PropagatorConfig midpoint;
  midpoint.ramp_integrator = RampIntegrator::kMidpoint;
  const auto mid = evolve_ramp(in, h_a, h_b, tau, midpoint);
  EXPECT_LT((mid.amplitudes() - fine.amplitudes()).norm(), 1e-8);
}

TEST(Propagator, RampAgreesWithDenseReference) {
  const auto basis = enumerate_basis(4, 2);
  const double tau = 0.3;
  const auto s = compile_transport(4, 1, Direction::kRight, tau, 1.0,
                                   RampConvention::kAppend, 2, 25.0);
  const auto in = random_state(basis, 21);
  const auto out = evolve_schedule(in, s);
  const Eigen::VectorXcd ref = dense_evolve_schedule(in.amplitudes(), basis, s);
  EXPECT_LT((out.amplitudes() - ref).norm(), 1e-8);
}

TEST(Propagator, TransportAcrossTwentySites) {
  const auto basis = enumerate_basis(20, 1);
  const auto s = compile_transport(20, 1, Direction::kRight, 0.0, 1.0);
  EXPECT_NEAR(s.total_duration(), 19.0 * kPi / 2.0, 1e-12);
  EvolveStats stats;
  const auto out = evolve_schedule(one_atom(basis, 1), s, {}, {}, 0.0, &stats);
  EXPECT_GE(std::norm(out[basis->index_of_modes({mode(20, Spin::kUp), 0})]), 1.0 - 1e-9);
  EXPECT_LT(stats.max_norm_drift, 1e-9);
}

TEST(Propagator, EmptyScheduleLeavesStateAlone) {
  const auto basis = enumerate_basis(4, 1);
  const auto in = one_atom(basis, 2);
  EXPECT_EQ(evolve_schedule(in, Schedule(4)).amplitudes(), in.amplitudes());
  EXPECT_THROW(evolve_schedule(in, compile_transport(5, 1, Direction::kRight, 0.0, 1.0)),
               ConfigError);
}

TEST(Propagator, EntangleFourSitesMatchesDense) {
  const auto basis = enumerate_basis(4, 2);
  ASSERT_EQ(basis->dim(), 36u);
  const double r = 1.0 / std::sqrt(2.0);
  const auto in = product_state(basis, {{1, {r, r}}, {4, {r, r}}});
  for (auto [tau, conv] : {std::pair{0.0, RampConvention::kAppend},
                           std::pair{0.1 * hop_time(1.0), RampConvention::kAreaPreserving}}) {
    const auto s = compile_entangle(4, tau, 1.0, 25.0, conv);
    const auto out = evolve_schedule(in, s);
    const Eigen::VectorXcd ref = dense_evolve_schedule(in.amplitudes(), basis, s);
    EXPECT_GT(testing::overlap(out.amplitudes(), ref), 1.0 - 1e-8) << tau;
  }
}

TEST(Propagator, ConservesNormAndEnergy) {
  const auto basis = enumerate_basis(8, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 0.4, .u = 25.0});
  const auto in = random_state(basis, 17);
  EvolveStats stats;
  const auto out = evolve_hold(in, h, 30.0, {}, &stats);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
  EXPECT_LT(stats.max_norm_drift, 1e-9);
  EXPECT_LT(stats.max_energy_drift, 1e-8);
  EXPECT_NEAR(expectation(h, out), expectation(h, in), 1e-8 * h.one_norm());
  EXPECT_GT(stats.matvecs, 0u);
}

TEST(Propagator, TimeReversalReturnsTheInput) {
  const auto basis = enumerate_basis(5, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 0.9, .j_even = 0.5, .u = 6.0});
  const auto in = random_state(basis, 23);
  const auto forward = evolve_hold(in, h, 4.0);
  const auto back = time_reverse(evolve_hold(time_reverse(forward), h, 4.0));
  EXPECT_LT((back.amplitudes() - in.amplitudes()).norm(), 1e-9);
}

TEST(Propagator, ObserverSeesBoundariesAndSamples) {
  const auto basis = enumerate_basis(6, 1);
  const auto s = compile_transport(6, 1, Direction::kRight, 0.2, 1.0);
  std::vector<double> times;
  evolve_schedule(one_atom(basis, 1), s, {},
                  [&](double t, const StateVector&) { times.push_back(t); });
  const auto bounds = s.boundaries();
  ASSERT_EQ(times.size(), bounds.size());
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_NEAR(times[k], bounds[k], 1e-12);

  times.clear();
  evolve_schedule(one_atom(basis, 1), s, {},
                  [&](double t, const StateVector&) { times.push_back(t); }, 0.5);
  const auto expected = 1 + static_cast<std::size_t>(std::ceil(s.total_duration() / 0.5));
  EXPECT_EQ(times.size(), expected);
  EXPECT_EQ(times.front(), 0.0);
  EXPECT_NEAR(times.back(), s.total_duration(), 1e-12);
  for (std::size_t k = 1; k < times.size(); ++k) EXPECT_GT(times[k], times[k - 1]);

  // Splitting segments at sample times does not change the result.
  const auto whole = evolve_schedule(one_atom(basis, 1), s);
  const auto split = evolve_schedule(one_atom(basis, 1), s, {},
                                     [](double, const StateVector&) {}, 0.37);
  EXPECT_LT((whole.amplitudes() - split.amplitudes()).norm(), 1e-8);
}

TEST(Propagator, TrajectoryCsv) {
  const auto basis = enumerate_basis(3, 1);
  const auto s = compile_transport(3, 1, Direction::kRight, 0.0, 1.0);
  std::ostringstream os;
  evolve_schedule(one_atom(basis, 1), s, {}, trajectory_csv_observer(os));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,n_1,n_2,n_3,norm");
  std::vector<std::string> rows;
  while (std::getline(is, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "0,1,0,0,1");
}

TEST(Propagator, ConfigValidation) {
  PropagatorConfig bad;
  bad.tolerance = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.krylov_dim = 1;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_EQ(parse_ramp_integrator("cf4"), RampIntegrator::kCommutatorFree4);
  EXPECT_EQ(parse_ramp_integrator("midpoint"), RampIntegrator::kMidpoint);
  EXPECT_THROW(parse_ramp_integrator("rk4"), ConfigError);
}

TEST(Propagator, NonConvergenceIsReported) {
  const auto basis = enumerate_basis(6, 2);
  const auto h = build_hamiltonian(basis, {.j_odd = 1.0, .j_even = 1.0, .u = 25.0});
  PropagatorConfig starved;
  starved.max_steps = 1;
  starved.krylov_dim = 2;
  starved.max_krylov_dim = 2;
  EXPECT_THROW(evolve_hold(random_state(basis, 1), h, 100.0, starved),
               NonConvergenceError);
}

}  // namespace
}  // namespace latticeshuttle
