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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latticeshuttle/detail/parallel_map.hpp"
#include "latticeshuttle/propagator.hpp"
#include "latticeshuttle/schedule.hpp"

namespace latticeshuttle {

inline constexpr const char* kVersion = "0.1.0";

enum class Experiment { kTransport, kEntangle, kSweepTau, kSweepN, kWitness, kOracle };

const char* to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

struct SweepConfig {
  Experiment experiment = Experiment::kEntangle;
  /// Chain lengths; empty means the experiment default.
  std::vector<int> sites;
  double u_over_j = 25.0;
  /// tau / t_h values; empty means the experiment default.
  std::vector<double> tau_over_th;
  /// Grid size for the default sweep-tau grid over [0, 0.15].
  int points = 16;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Empty writes to stdout.
  std::string output_path;
  /// Worker threads; 0 uses the hardware concurrency.
  int threads = 0;
  /// Finite-shot witness sampling per setting; 0 disables it.
  std::uint64_t shots = 0;
  std::optional<double> j_over_h_khz;
  RampConvention ramp_convention = RampConvention::kAreaPreserving;
  RampIntegrator ramp_integrator = RampIntegrator::kCommutatorFree4;
  Direction direction = Direction::kRight;
  /// Transport start site; 0 means the chain end opposite to `direction`.
  int start_site = 0;

  /// Copy with experiment defaults filled in and every field validated.
  SweepConfig resolved() const;
  void validate() const;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ResultRecord {
  /// tau / t_h for tau sweeps and single runs, N for chain-length sweeps.
  double x = 0.0;
  int n_sites = 0;
  double tau_over_th = 0.0;
  double p_1n = 0.0;
  double c_1n = 0.0;
  double witness = 0.0;
  /// NaN unless shot sampling was requested.
  double witness_sampled = 0.0;
  double wall_time = 0.0;
  double total_time = 0.0;
  EvolveStats stats;
  bool ok = true;
  std::string error;
};

/// One full entangling protocol: |++> at sites 1 and N, evolve, project
/// onto (1, N).
ResultRecord run_entangle_point(int n_sites, double u_over_j, double tau_over_th,
                                const PropagatorConfig& pcfg,
                                RampConvention convention,
                                std::uint64_t shots = 0, std::uint64_t seed = 1);

std::vector<ResultRecord> run_entangle(const SweepConfig& cfg);
std::vector<ResultRecord> run_sweep_tau(const SweepConfig& cfg);
std::vector<ResultRecord> run_sweep_n(const SweepConfig& cfg);

struct TransportSample {
  double t = 0.0;
  std::vector<double> occupation;
  double norm = 0.0;
};

struct TransportResult {
  int n_sites = 0;
  int start_site = 0;
  int target_site = 0;
  double total_time = 0.0;
  double arrival_probability = 0.0;
  std::vector<TransportSample> trajectory;
  EvolveStats stats;
};

/// Single atom (spin up) carried across the chain; occupations sampled at
/// every segment boundary. Uses the first entry of sites and tau_over_th.
TransportResult run_transport(const SweepConfig& cfg);

struct WitnessReport {
  std::size_t product_samples = 0;
  double min_product_witness = 0.0;
  double ideal_witness = 0.0;
  double ideal_concurrence = 0.0;
  double reconstruction_error = 0.0;
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;
  /// NaN unless shots > 0.
  double sampled_ideal_witness = 0.0;
};

/// Witness sanity suite: Haar-random product states, the ideal protocol
/// output and the measurement-setting reconstruction.
WitnessReport run_witness_check(const SweepConfig& cfg,
                                std::size_t product_samples = 10000);

struct OracleReport {
  std::size_t samples = 0;
  double max_error_single = 0.0;
  double max_error_same_spin = 0.0;
  double max_error_opposite_spin = 0.0;

  double max_error() const;
};

/// Two-site simulator against the closed-form amplitudes, each channel
/// compared up to its own global phase. Samples t in [0, 10/J] and
/// U/J in [5, 200].
OracleReport run_oracle_check(std::size_t samples, std::uint64_t seed,
                              const PropagatorConfig& pcfg = {});

/// Eigenvalues of the 4x4 witness, ascending.
std::array<double, 4> witness_spectrum();

void write_records_csv(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<ResultRecord>& records);
void write_transport_csv(std::ostream& os, const SweepConfig& cfg,
                         const TransportResult& result);

}  // namespace latticeshuttle
