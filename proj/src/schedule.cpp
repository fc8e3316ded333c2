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

#include "latticeshuttle/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

const char* to_string(RampConvention c) {
  return c == RampConvention::kAppend ? "append" : "area";
}

RampConvention parse_ramp_convention(const std::string& name) {
  if (name == "append") return RampConvention::kAppend;
  if (name == "area") return RampConvention::kAreaPreserving;
  throw ConfigError("unknown ramp convention '" + name +
                    "' (expected append or area)");
}

void Schedule::push(Segment segment) {
  if (!(segment.duration >= 0.0)) {
    throw ConfigError("segment duration must be non-negative");
  }
  // Hold-to-hold transitions are instantaneous switches; ramps must join
  // their neighbours continuously.
  const bool ramp_involved = !segments_.empty() &&
                             (segment.kind == SegmentKind::kRamp ||
                              segments_.back().kind == SegmentKind::kRamp);
  if (ramp_involved && !(segments_.back().profile_end == segment.profile_start)) {
    throw ConfigError("segment '" + segment.label +
                      "' does not continue the previous profile");
  }
  segments_.push_back(std::move(segment));
}

double Schedule::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration;
  return total;
}

std::vector<double> Schedule::boundaries() const {
  std::vector<double> t{0.0};
  for (const auto& s : segments_) t.push_back(t.back() + s.duration);
  return t;
}

double hop_time(double j) {
  if (!(j > 0.0)) throw ConfigError("hop time needs J > 0");
  return std::numbers::pi / (2.0 * j);
}

namespace {

struct Hold {
  double duration;
  int link;
  std::string label;
};

CouplingProfile link_profile(int link, double j, double u) {
  return link % 2 == 1 ? CouplingProfile{j, 0.0, u, 0.0}
                       : CouplingProfile{0.0, j, u, 0.0};
}

Schedule assemble(int n_sites, const std::vector<Hold>& holds, double tau,
                  double j, double u, RampConvention convention) {
  if (!(tau >= 0.0)) throw ConfigError("ramp time must be non-negative");
  Schedule schedule(n_sites);
  int ramp_no = 0;
  for (std::size_t k = 0; k < holds.size(); ++k) {
    const auto profile = link_profile(holds[k].link, j, u);
    double duration = holds[k].duration;
    if (convention == RampConvention::kAreaPreserving && tau > 0.0) {
      const int adjacent_ramps = (k > 0 ? 1 : 0) + (k + 1 < holds.size() ? 1 : 0);
      duration -= 0.5 * tau * adjacent_ramps;
      if (duration < 0.0) {
        throw ConfigError("ramp time " + std::to_string(tau) +
                          " exceeds the hold it overlaps (" + holds[k].label + ")");
      }
    }
    schedule.push({SegmentKind::kHold, duration, profile, profile, holds[k].label});
    if (k + 1 < holds.size() && tau > 0.0) {
      const auto next = link_profile(holds[k + 1].link, j, u);
      schedule.push({SegmentKind::kRamp, tau, profile, next,
                     "ramp-" + std::to_string(++ramp_no)});
    }
  }
  return schedule;
}

}  // namespace

Schedule compile_transport(int n_sites, int start_site, Direction direction,
                           double tau, double j, RampConvention convention,
                           int hops, double u) {
  if (n_sites < 2) throw ConfigError("transport needs at least 2 sites");
  if (start_site < 1 || start_site > n_sites) {
    throw ConfigError("start site " + std::to_string(start_site) +
                      " outside the chain");
  }
  const int room = direction == Direction::kRight ? n_sites - start_site
                                                   : start_site - 1;
  if (hops < 0) hops = room;
  if (hops == 0 || hops > room) {
    throw ConfigError("transport from site " + std::to_string(start_site) +
                      " would leave the chain");
  }
  const double th = hop_time(j);
  std::vector<Hold> holds;
  int site = start_site;
  for (int k = 1; k <= hops; ++k) {
    const int link = direction == Direction::kRight ? site : site - 1;
    holds.push_back({th, link, "hop-" + std::to_string(k)});
    site += direction == Direction::kRight ? 1 : -1;
  }
  return assemble(n_sites, holds, tau, j, u, convention);
}

Schedule compile_entangle(int n_sites, double tau, double j, double u,
                          RampConvention convention) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw ConfigError("entangling protocol needs an even number of sites, got " +
                      std::to_string(n_sites));
  }
  const double th = hop_time(j);
  const double t_int = interaction_time(j, u);
  const int inward = (n_sites - 2) / 2;
  std::vector<Hold> holds;
  int hop_no = 0;
  // The left atom's hop k uses link k; the right atom's mirror link has the
  // same parity because N - 1 is odd.
  for (int k = 1; k <= inward; ++k) {
    holds.push_back({th, k, "hop-" + std::to_string(++hop_no)});
  }
  holds.push_back({t_int, n_sites / 2, "interact"});
  for (int k = inward; k >= 1; --k) {
    holds.push_back({th, k, "hop-" + std::to_string(++hop_no)});
  }
  return assemble(n_sites, holds, tau, j, u, convention);
}

CouplingProfile profile_at(const Schedule& schedule, double t) {
  if (schedule.empty()) throw ConfigError("profile_at: empty schedule");
  const double total = schedule.total_duration();
  if (!(t >= 0.0 && t <= total)) {
    throw ConfigError("profile_at: time " + std::to_string(t) +
                      " outside [0, " + std::to_string(total) + "]");
  }
  double start = 0.0;
  const auto& segs = schedule.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const auto& s = segs[k];
    const bool last = k + 1 == segs.size();
    if (t < start + s.duration || last) {
      if (s.kind == SegmentKind::kHold || s.duration == 0.0) return s.profile_start;
      const double f = std::clamp((t - start) / s.duration, 0.0, 1.0);
      return CouplingProfile::Lerp(s.profile_start, s.profile_end, f);
    }
    start += s.duration;
  }
  return segs.back().profile_end;
}

void write_schedule(std::ostream& os, const Schedule& schedule) {
  const auto old_precision = os.precision(12);
  for (const auto& s : schedule.segments()) {
    os << s.label << ' ' << (s.kind == SegmentKind::kHold ? "hold" : "ramp") << ' '
       << s.duration << ' ' << s.profile_start.j_odd << ' ' << s.profile_start.j_even
       << ' ' << s.profile_end.j_odd << ' ' << s.profile_end.j_even << '\n';
  }
  os.precision(old_precision);
}

}  // namespace latticeshuttle
