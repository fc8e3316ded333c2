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

#include <iosfwd>
#include <string>
#include <vector>

#include "latticeshuttle/hamiltonian.hpp"

namespace latticeshuttle {

enum class SegmentKind { kHold, kRamp };

/// How crossfade ramps of duration tau are placed between holds.
enum class RampConvention {
  /// Every hold keeps its ideal duration; ramps add time.
  kAppend,
  /// Holds are shortened by tau/2 per adjacent ramp, so each link's
  /// integrated coupling equals its ideal value and the total protocol
  /// time does not depend on tau.
  kAreaPreserving,
};

const char* to_string(RampConvention c);
RampConvention parse_ramp_convention(const std::string& name);

struct Segment {
  SegmentKind kind = SegmentKind::kHold;
  double duration = 0.0;
  CouplingProfile profile_start;
  CouplingProfile profile_end;
  std::string label;
};

enum class Direction { kLeft, kRight };

class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(int n_sites) : n_sites_(n_sites) {}

  int n_sites() const { return n_sites_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  /// Appends a segment. Next to a ramp the profiles must join
  /// continuously; two adjacent holds may differ (an instantaneous switch).
  void push(Segment segment);

  double total_duration() const;

  /// Start time of every segment plus the final end time.
  std::vector<double> boundaries() const;

 private:
  int n_sites_ = 0;
  std::vector<Segment> segments_;
};

/// Hop duration pi / (2 J).
double hop_time(double j);

/// Moves one atom from `start_site` in `direction` by `hops` links
/// (`hops` < 0 means "to the chain end"). Holds of t_h alternate the
/// active link parity; ramps of duration `tau` crossfade between them.
Schedule compile_transport(int n_sites, int start_site, Direction direction,
                           double tau, double j,
                           RampConvention convention = RampConvention::kAppend,
                           int hops = -1, double u = 0.0);

/// Brings atoms at sites 1 and N (N even) into the central double well,
/// holds for t_I = pi / (2 J_ex) with J_ex = 4 J^2 / U, and returns them.
Schedule compile_entangle(int n_sites, double tau, double j, double u,
                          RampConvention convention = RampConvention::kAppend);

/// Coupling profile at time t in [0, total_duration].
CouplingProfile profile_at(const Schedule& schedule, double t);

/// One line per segment:
/// "label kind duration j_odd_start j_even_start j_odd_end j_even_end".
void write_schedule(std::ostream& os, const Schedule& schedule);

}  // namespace latticeshuttle
