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

#include <complex>

#include "latticeshuttle/state.hpp"

/// Closed-form double-well dynamics, the effective exchange gate and
/// protocol timing. Energies are in units where hbar = 1; times are in 1/J
/// when J = 1.
namespace latticeshuttle {

struct HopAmplitudes {
  Complex stay;
  Complex hop;
};

/// Single atom in a double well: stay = cos(Jt), hop = i sin(Jt).
HopAmplitudes single_atom_amplitudes(double j, double t);

/// Two atoms starting on different sites of one double well with
/// tunnelling J and onsite energy U, in the phase convention that makes
/// the coefficients below exact up to a per-channel global phase.
struct TwoAtomCoefficients {
  Complex a_same;  // |s,s> -> a_same |s,s> + c_same (|ss,0> + |0,ss>)
  Complex c_same;
  Complex a_diff;  // |s,s'> -> a_diff |s,s'> + b_diff |s',s>
  Complex b_diff;  //          + c_diff (|ss',0> + |0,ss'>)
  Complex c_diff;
  double s;        // sqrt(1 + 16 J^2 / U^2)
  double s_prime;  // sqrt(1 + 64 J^2 / U^2)
};

TwoAtomCoefficients two_atom_coefficients(double j, double u, double t);

/// Superexchange coupling 4 J^2 / U.
double exchange_coupling(double j, double u);

/// pi / (2 J_ex): the hold that maximally entangles |++>.
double interaction_time(double j, double u);

/// Effective XX gate: |ss> fixed, |ss'> -> cos(J_ex t)|ss'> + i sin(J_ex t)|s's>.
TwoQubitState effective_gate_state(const TwoQubitState& input, double j_ex,
                                   double t);

/// (N - 2) t_h + t_I.
double total_time(int n_sites, double j, double u);

struct PhysicalUnits {
  double j_over_h_hz = 1500.0;

  /// omega_J = 2 pi (J / h), in rad/s.
  double angular_frequency() const;
};

/// Converts a time in units of 1/J to seconds.
double to_physical(double t, const PhysicalUnits& units);

/// Probability of a doubly occupied site at time t for |++> in one double
/// well: (|C_uu|^2 + |C_dd|^2 + |C_ud|^2 + |C_du|^2) / 4.
double double_occupancy(double j, double u, double t);

/// Maximum of double_occupancy over [0, t_max], located by a dense scan
/// refined with golden-section search.
double max_double_occupancy(double j, double u, double t_max);

/// Sum of the individual channel maxima: 8J^2/(U^2+16J^2) and
/// 16J^2/(U^2+64J^2), each weighted 2/4. Upper bound on double_occupancy.
double double_occupancy_bound(double j, double u);

}  // namespace latticeshuttle
