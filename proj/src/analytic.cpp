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

#include "latticeshuttle/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_interaction(double u) {
  if (!(u > 0.0)) {
    throw ConfigError("closed forms need U > 0; the U = 0 limit is degenerate");
  }
}

}  // namespace

HopAmplitudes single_atom_amplitudes(double j, double t) {
  if (!(j >= 0.0)) throw ConfigError("tunnelling must be non-negative");
  return {std::cos(j * t), kI * std::sin(j * t)};
}

TwoAtomCoefficients two_atom_coefficients(double j, double u, double t) {
  require_interaction(u);
  const double r = j / u;
  const double s = std::sqrt(1.0 + 16.0 * r * r);
  const double sp = std::sqrt(1.0 + 64.0 * r * r);
  const double x = s * u * t / 2.0;
  const double y = sp * u * t / 4.0;
  const Complex phase = std::exp(kI * (u * t / 4.0));
  const Complex sym = std::cos(y) + kI * std::sin(y) / sp;

  TwoAtomCoefficients c;
  c.s = s;
  c.s_prime = sp;
  c.a_same = std::cos(x) + kI * std::sin(x) / s;
  c.c_same = kI * (2.0 * std::numbers::sqrt2 * j / (s * u)) * std::sin(x);
  c.a_diff = 0.5 * phase + 0.5 * sym;
  c.b_diff = -0.5 * phase + 0.5 * sym;
  c.c_diff = kI * (4.0 * j / (sp * u)) * std::sin(y);
  return c;
}

double exchange_coupling(double j, double u) {
  require_interaction(u);
  return 4.0 * j * j / u;
}

double interaction_time(double j, double u) {
  const double jex = exchange_coupling(j, u);
  if (!(jex > 0.0)) throw ConfigError("interaction time needs J > 0");
  return std::numbers::pi / (2.0 * jex);
}

TwoQubitState effective_gate_state(const TwoQubitState& input, double j_ex,
                                   double t) {
  const double c = std::cos(j_ex * t);
  const Complex is = kI * std::sin(j_ex * t);
  return {input[0], c * input[1] + is * input[2], c * input[2] + is * input[1],
          input[3]};
}

double total_time(int n_sites, double j, double u) {
  if (n_sites < 2) throw ConfigError("total time needs N >= 2");
  return (n_sites - 2) * std::numbers::pi / (2.0 * j) + interaction_time(j, u);
}

double PhysicalUnits::angular_frequency() const {
  if (!(j_over_h_hz > 0.0)) throw ConfigError("J/h must be positive");
  return 2.0 * std::numbers::pi * j_over_h_hz;
}

double to_physical(double t, const PhysicalUnits& units) {
  return t / units.angular_frequency();
}

double double_occupancy(double j, double u, double t) {
  const auto c = two_atom_coefficients(j, u, t);
  return (2.0 * std::norm(c.c_same) + 2.0 * std::norm(c.c_diff)) / 4.0;
}

double max_double_occupancy(double j, double u, double t_max) {
  require_interaction(u);
  if (!(t_max >= 0.0)) throw ConfigError("t_max must be non-negative");
  const double fastest = std::sqrt(u * u + 16.0 * j * j);  // rad per unit time
  const auto samples = static_cast<std::size_t>(
      std::max(2000.0, std::ceil(t_max * fastest * 40.0 / std::numbers::pi)));
  const double dt = t_max / static_cast<double>(samples);
  double best_t = 0.0;
  double best = 0.0;
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = dt * static_cast<double>(k);
    const double p = double_occupancy(j, u, t);
    if (p > best) {
      best = p;
      best_t = t;
    }
  }
  // Golden-section refinement inside the bracketing cells.
  double lo = std::max(0.0, best_t - dt);
  double hi = std::min(t_max, best_t + dt);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, t_max); ++it) {
    const double a = hi - g * (hi - lo);
    const double b = lo + g * (hi - lo);
    if (double_occupancy(j, u, a) > double_occupancy(j, u, b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::max(best, double_occupancy(j, u, 0.5 * (lo + hi)));
}

double double_occupancy_bound(double j, double u) {
  require_interaction(u);
  const double j2 = j * j;
  const double u2 = u * u;
  return (2.0 * 8.0 * j2 / (u2 + 16.0 * j2) + 2.0 * 16.0 * j2 / (u2 + 64.0 * j2)) /
         4.0;
}

}  // namespace latticeshuttle
