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

#include "latticeshuttle/propagator.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <string>

#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/observables.hpp"

namespace latticeshuttle {

const char* to_string(RampIntegrator integrator) {
  return integrator == RampIntegrator::kMidpoint ? "midpoint" : "cf4";
}

RampIntegrator parse_ramp_integrator(const std::string& name) {
  if (name == "midpoint") return RampIntegrator::kMidpoint;
  if (name == "cf4") return RampIntegrator::kCommutatorFree4;
  throw ConfigError("unknown ramp integrator '" + name +
                    "' (expected midpoint or cf4)");
}

void PropagatorConfig::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("propagator tolerance must be positive");
  if (!(max_substep > 0.0)) throw ConfigError("max_substep must be positive");
  if (krylov_dim < 2 || max_krylov_dim < krylov_dim) {
    throw ConfigError("krylov_dim must be >= 2 and <= max_krylov_dim");
  }
  if (max_doublings < 1) throw ConfigError("max_doublings must be positive");
}

void EvolveStats::merge(const EvolveStats& other) {
  matvecs += other.matvecs;
  krylov_steps += other.krylov_steps;
  ramp_substeps += other.ramp_substeps;
  max_norm_drift = std::max(max_norm_drift, other.max_norm_drift);
  max_energy_drift = std::max(max_energy_drift, other.max_energy_drift);
}

namespace {

constexpr Complex kI{0.0, 1.0};

/// Coefficients of exp(-i T dt) e_1 for the leading `size` block of the
/// Lanczos tridiagonal matrix.
struct TridiagonalExp {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd q;

  TridiagonalExp(const std::vector<double>& alpha, const std::vector<double>& beta,
                 Eigen::Index size) {
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index j = 0; j < size; ++j) {
      tri(j, j) = alpha[j];
      if (j + 1 < size) tri(j, j + 1) = tri(j + 1, j) = beta[j + 1];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(tri);
    lambda = eig.eigenvalues();
    q = eig.eigenvectors();
  }

  Eigen::VectorXcd operator()(double dt) const {
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      phases[k] = std::exp(-kI * (lambda[k] * dt)) * q(0, k);
    }
    return q.cast<Complex>() * phases;
  }
};

/// Lanczos propagation of v in place over `duration`, with the summed
/// step error kept below `tolerance`. The basis grows until the error
/// estimate for the attempted step is met (up to max_krylov_dim vectors);
/// past that the step is halved. No renormalization.
void propagate(Eigen::VectorXcd& v, const SparseHamiltonian& h, double duration,
               double tolerance, const PropagatorConfig& cfg, EvolveStats& stats) {
  if (duration == 0.0) return;
  const auto n = static_cast<Eigen::Index>(h.dim());
  const double breakdown = 1e-12 * std::max(1.0, h.one_norm());
  const Eigen::Index m_max = std::min<Eigen::Index>(cfg.max_krylov_dim, n);
  const Eigen::Index m_soft = std::min<Eigen::Index>(cfg.krylov_dim, m_max);

  // Per-thread scratch, reused across calls to avoid reallocating the basis.
  thread_local Eigen::MatrixXcd basis;
  thread_local Eigen::VectorXcd w;
  if (basis.rows() != n || basis.cols() < m_max + 1) basis.resize(n, m_max + 1);
  w.resize(n);
  std::vector<double> alpha(static_cast<std::size_t>(m_max), 0.0);
  std::vector<double> beta(static_cast<std::size_t>(m_max + 1), 0.0);

  double remaining = duration;
  double guess = duration;
  std::size_t steps = 0;
  while (remaining > 0.0) {
    if (++steps > cfg.max_steps) {
      throw NonConvergenceError("Krylov step budget exhausted with " +
                                std::to_string(remaining) + " time left");
    }
    const double v_norm = v.norm();
    if (v_norm == 0.0) return;
    basis.col(0) = v / v_norm;

    double dt = std::min(guess, remaining);
    auto allowed = [&](double step) { return tolerance * step / duration; };
    auto estimate = [&](const TridiagonalExp& texp, Eigen::Index size, bool exhausted,
                        double step, Eigen::VectorXcd& y) {
      y = texp(step);
      return exhausted ? 0.0 : beta[size] * std::abs(y[size - 1]) * v_norm;
    };

    Eigen::Index size = 0;
    bool exhausted = false;
    bool converged = false;
    Eigen::VectorXcd y;
    for (Eigen::Index j = 0; j < m_max; ++j) {
      h.multiply(basis.col(j).data(), w.data());
      ++stats.matvecs;
      alpha[j] = basis.col(j).dot(w).real();
      w -= alpha[j] * basis.col(j);
      if (j > 0) w -= beta[j] * basis.col(j - 1);
      // Full reorthogonalization.
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
      const double b = w.norm();
      size = j + 1;
      if (b < breakdown) {
        exhausted = true;
        beta[size] = 0.0;
        break;
      }
      beta[size] = b;
      basis.col(size) = w / b;
      if (size >= 2) {
        const TridiagonalExp texp(alpha, beta, size);
        if (estimate(texp, size, false, dt, y) <= allowed(dt)) {
          converged = true;
          break;
        }
      }
    }

    const TridiagonalExp texp(alpha, beta, size);
    int halvings = 0;
    if (exhausted || !converged) {
      while (estimate(texp, size, exhausted, dt, y) > allowed(dt)) {
        dt *= 0.5;
        if (++halvings > 60) throw NonConvergenceError("Krylov step size underflow");
      }
    }
    v = v_norm * (basis.leftCols(size) * y);
    ++stats.krylov_steps;
    remaining = dt >= remaining ? 0.0 : remaining - dt;
    if (halvings > 0) {
      guess = dt;
    } else if (size <= m_soft) {
      guess = 2.0 * dt;
    } else {
      guess = dt;
    }
  }
}

// Diagnostics go to stderr so they never mix with CSV on stdout.
spdlog::logger& log() {
  static const auto logger = [] {
    auto existing = spdlog::get("latticeshuttle");
    return existing ? existing : spdlog::stderr_color_mt("latticeshuttle");
  }();
  return *logger;
}

void finish_norm(Eigen::VectorXcd& v, double reference, double tolerance,
                 EvolveStats& stats) {
  const double norm = v.norm();
  const double drift = std::abs(norm - reference);
  stats.max_norm_drift = std::max(stats.max_norm_drift, drift);
  if (drift > tolerance) {
    log().warn("norm drifted by {:.3e} during evolution (tolerance {:.1e})",
                 drift, tolerance);
  }
  if (norm > 0.0) v *= reference / norm;
}

void require_compatible(const StateVector& state, const SparseHamiltonian& h) {
  if (!(*state.basis() == *h.basis())) {
    throw ConfigError("state and Hamiltonian live on different bases");
  }
}

}  // namespace

StateVector evolve_hold(const StateVector& state, const SparseHamiltonian& h,
                        double duration, const PropagatorConfig& cfg,
                        EvolveStats* stats) {
  cfg.validate();
  require_compatible(state, h);
  if (!(duration >= 0.0)) throw ConfigError("hold duration must be non-negative");
  if (duration == 0.0) return state;

  EvolveStats local;
  const double e_start = expectation(h, state);
  Eigen::VectorXcd v = state.amplitudes();
  propagate(v, h, duration, cfg.tolerance, cfg, local);
  finish_norm(v, state.norm(), cfg.tolerance, local);
  StateVector out(state.basis(), std::move(v));
  const double e_end = expectation(h, out);
  local.matvecs += 2;
  local.max_energy_drift = std::abs(e_end - e_start) / std::max(h.one_norm(), 1e-300);
  if (stats) stats->merge(local);
  return out;
}

namespace {

// substep_rate carries the converged substeps per unit time from one ramp to
// the next so that a schedule of similar ramps skips the coarse end of the ladder.
StateVector ramp_with_hint(const StateVector& state, const SparseHamiltonian& h_start,
                           const SparseHamiltonian& h_end, double duration,
                           const PropagatorConfig& cfg, EvolveStats* stats,
                           double& substep_rate) {
  require_compatible(state, h_start);
  require_compatible(state, h_end);
  if (!(duration >= 0.0)) throw ConfigError("ramp duration must be non-negative");
  if (duration == 0.0) return state;
  if (h_start.values() == h_end.values()) {
    return evolve_hold(state, h_start, duration, cfg, stats);
  }

  EvolveStats local;
  auto run = [&](std::size_t substeps) {
    Eigen::VectorXcd v = state.amplitudes();
    const double dt = duration / static_cast<double>(substeps);
    // Krylov error budget: a tenth of the tolerance over the whole ramp.
    const double tol = 0.1 * cfg.tolerance / static_cast<double>(substeps);
    const auto n = static_cast<double>(substeps);
    for (std::size_t k = 0; k < substeps; ++k) {
      const auto kk = static_cast<double>(k);
      if (cfg.ramp_integrator == RampIntegrator::kMidpoint) {
        propagate(v, interpolate(h_start, h_end, (kk + 0.5) / n), dt, tol, cfg, local);
      } else {
        propagate(v, interpolate(h_start, h_end, (kk + 1.0 / 6.0) / n), 0.5 * dt,
                  0.5 * tol, cfg, local);
        propagate(v, interpolate(h_start, h_end, (kk + 5.0 / 6.0) / n), 0.5 * dt,
                  0.5 * tol, cfg, local);
      }
    }
    local.ramp_substeps += substeps;
    return v;
  };

  // Halving the step shrinks the error by 2^order, so the fine result is off
  // by about change / (2^order - 1).
  const double shrink =
      cfg.ramp_integrator == RampIntegrator::kMidpoint ? 3.0 : 15.0;
  auto substeps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(duration / cfg.max_substep)));
  substeps = std::max(substeps, static_cast<std::size_t>(
                                     std::floor(0.5 * substep_rate * duration)));
  Eigen::VectorXcd coarse = run(substeps);
  for (int d = 0; d < cfg.max_doublings; ++d) {
    substeps *= 2;
    Eigen::VectorXcd fine = run(substeps);
    const double change = (fine - coarse).norm();
    if (change / shrink < cfg.tolerance) {
      substep_rate = static_cast<double>(substeps) / duration;
      finish_norm(fine, state.norm(), cfg.tolerance, local);
      if (stats) stats->merge(local);
      return StateVector(state.basis(), std::move(fine));
    }
    coarse = std::move(fine);
  }
  throw NonConvergenceError("ramp integration did not self-converge after " +
                            std::to_string(cfg.max_doublings) + " doublings");
}

}  // namespace

StateVector evolve_ramp(const StateVector& state, const SparseHamiltonian& h_start,
                        const SparseHamiltonian& h_end, double duration,
                        const PropagatorConfig& cfg, EvolveStats* stats) {
  cfg.validate();
  double rate = 0.0;
  return ramp_with_hint(state, h_start, h_end, duration, cfg, stats, rate);
}

StateVector evolve_schedule(const StateVector& state, const Schedule& schedule,
                            const PropagatorConfig& cfg, const Observer& observer,
                            double sample_interval, EvolveStats* stats) {
  cfg.validate();
  if (!schedule.empty() && schedule.n_sites() != state.basis()->n_sites()) {
    throw ConfigError("schedule and state disagree on the number of sites");
  }
  const auto structure = HamiltonianStructure::Build(state.basis());
  const bool sampled = observer && sample_interval > 0.0;
  double substep_rate = 0.0;

  StateVector v = state;
  double t = 0.0;
  std::size_t next_sample = 1;
  if (observer) observer(0.0, v);

  for (const auto& seg : schedule.segments()) {
    const double seg_start = t;
    const double seg_end = t + seg.duration;
    const auto h_a = build_hamiltonian(structure, seg.profile_start);
    const auto h_b = seg.kind == SegmentKind::kRamp
                         ? build_hamiltonian(structure, seg.profile_end)
                         : h_a;

    auto advance = [&](double a, double b) {
      if (b <= a) return;
      if (seg.kind == SegmentKind::kHold) {
        v = evolve_hold(v, h_a, b - a, cfg, stats);
      } else {
        const double fa = std::clamp((a - seg_start) / seg.duration, 0.0, 1.0);
        const double fb = std::clamp((b - seg_start) / seg.duration, 0.0, 1.0);
        v = ramp_with_hint(v, interpolate(h_a, h_b, fa), interpolate(h_a, h_b, fb),
                           b - a, cfg, stats, substep_rate);
      }
    };

    double cursor = seg_start;
    if (sampled) {
      while (true) {
        const double ts = sample_interval * static_cast<double>(next_sample);
        if (ts >= seg_end) break;
        advance(cursor, ts);
        cursor = ts;
        observer(ts, v);
        ++next_sample;
      }
    }
    advance(cursor, seg_end);
    t = seg_end;
    if (observer && !sampled) observer(t, v);
  }
  if (sampled) observer(t, v);
  return v;
}

StateVector time_reverse(const StateVector& state) {
  return StateVector(state.basis(), state.amplitudes().conjugate());
}

Observer trajectory_csv_observer(std::ostream& os) {
  auto header_written = std::make_shared<bool>(false);
  return [&os, header_written](double t, const StateVector& v) {
    const auto profile = occupation_profile(v);
    if (!*header_written) {
      os << "t";
      for (std::size_t i = 1; i <= profile.total.size(); ++i) os << ",n_" << i;
      os << ",norm\n";
      *header_written = true;
    }
    const auto old_precision = os.precision(12);
    os << t;
    for (double n : profile.total) os << ',' << n;
    os << ',' << v.norm() << '\n';
    os.precision(old_precision);
  };
}

}  // namespace latticeshuttle
