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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <string>

#include "latticeshuttle/hamiltonian.hpp"
#include "latticeshuttle/schedule.hpp"
#include "latticeshuttle/state.hpp"

namespace latticeshuttle {

/// Time stepping inside a linear ramp H(t) = (1 - t/tau) H_a + (t/tau) H_b.
enum class RampIntegrator {
  /// One exponential per substep, sampled at the substep midpoint.
  kMidpoint,
  /// Fourth-order commutator-free scheme: two exponentials per substep, each
  /// of half length, sampled at 1/6 and 5/6 of the substep.
  kCommutatorFree4,
};

const char* to_string(RampIntegrator integrator);
RampIntegrator parse_ramp_integrator(const std::string& name);

struct PropagatorConfig {
  /// Target error in Euclidean norm for one evolve_* call.
  double tolerance = 1e-9;
  /// Initial ramp substep; t_h / 64 at J = 1.
  double max_substep = std::numbers::pi / 128.0;
  /// Starting Lanczos basis size; grows up to max_krylov_dim when steps
  /// keep shrinking.
  int krylov_dim = 16;
  int max_krylov_dim = 64;
  RampIntegrator ramp_integrator = RampIntegrator::kCommutatorFree4;
  /// Ramp substep doublings before giving up.
  int max_doublings = 14;
  /// Krylov steps per evolve_hold call before giving up.
  std::size_t max_steps = 1'000'000;

  void validate() const;
};

/// Diagnostics accumulated over one or more evolutions.
struct EvolveStats {
  std::size_t matvecs = 0;
  std::size_t krylov_steps = 0;
  std::size_t ramp_substeps = 0;
  /// Largest | ||psi|| - 1 | seen before renormalization.
  double max_norm_drift = 0.0;
  /// Largest |<H>_end - <H>_start| / ||H||_1 over hold segments.
  double max_energy_drift = 0.0;

  void merge(const EvolveStats& other);
};

/// exp(-i H duration) |state> by Lanczos projection with adaptive step
/// size. Throws NonConvergenceError when the step budget runs out.
StateVector evolve_hold(const StateVector& state, const SparseHamiltonian& h,
                        double duration, const PropagatorConfig& cfg = {},
                        EvolveStats* stats = nullptr);

/// Time-ordered evolution across a linear ramp from h_start to h_end.
/// Substeps start at ceil(duration / max_substep) and double until the
/// Richardson estimate from two successive results drops below cfg.tolerance.
StateVector evolve_ramp(const StateVector& state, const SparseHamiltonian& h_start,
                        const SparseHamiltonian& h_end, double duration,
                        const PropagatorConfig& cfg = {},
                        EvolveStats* stats = nullptr);

/// Receives (t, state) during evolve_schedule.
using Observer = std::function<void(double, const StateVector&)>;

/// Runs every segment in order. With an observer, it is called at t = 0,
/// at every multiple of `sample_interval` (segment boundaries when
/// sample_interval <= 0) and at the end.
StateVector evolve_schedule(const StateVector& state, const Schedule& schedule,
                            const PropagatorConfig& cfg = {},
                            const Observer& observer = {},
                            double sample_interval = 0.0,
                            EvolveStats* stats = nullptr);

/// Complex conjugation: the time-reversal operation for the real
/// Hamiltonians built here.
StateVector time_reverse(const StateVector& state);

/// Observer writing "t,n_1,...,n_N,norm" rows (after a header line) to os.
Observer trajectory_csv_observer(std::ostream& os);

}  // namespace latticeshuttle
