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

#include "latticeshuttle/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/basis.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/observables.hpp"

namespace latticeshuttle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::array<Complex, 2> kPlus = {1.0 / std::numbers::sqrt2,
                                          1.0 / std::numbers::sqrt2};

PropagatorConfig propagator_config(const SweepConfig& cfg) {
  PropagatorConfig p;
  p.tolerance = cfg.tolerance;
  p.ramp_integrator = cfg.ramp_integrator;
  return p;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint64_t, 1> out{};
  seq.generate(reinterpret_cast<std::uint32_t*>(out.data()),
               reinterpret_cast<std::uint32_t*>(out.data()) + 2);
  return out[0];
}

/// Max entry error after aligning the global phase of `sim` to `exact`.
double phase_aligned_error(const std::vector<Complex>& sim,
                           const std::vector<Complex>& exact) {
  Complex ov = 0.0;
  for (std::size_t k = 0; k < sim.size(); ++k) ov += std::conj(exact[k]) * sim[k];
  const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  double err = 0.0;
  for (std::size_t k = 0; k < sim.size(); ++k) {
    err = std::max(err, std::abs(sim[k] - phase * exact[k]));
  }
  return err;
}

std::size_t ordinal(const FockBasis& basis, std::initializer_list<Mode> modes) {
  FockConfig c{basis.n_sites(), std::vector<std::uint8_t>(basis.n_modes(), 0)};
  for (const auto& m : modes) ++c.occupations[FockConfig::ModeIndex(m.site, m.spin)];
  return basis.index_of(c);
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::kTransport: return "transport";
    case Experiment::kEntangle: return "entangle";
    case Experiment::kSweepTau: return "sweep_tau";
    case Experiment::kSweepN: return "sweep_n";
    case Experiment::kWitness: return "witness";
    case Experiment::kOracle: return "oracle";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (auto e : {Experiment::kTransport, Experiment::kEntangle, Experiment::kSweepTau,
                 Experiment::kSweepN, Experiment::kWitness, Experiment::kOracle}) {
    if (name == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

SweepConfig SweepConfig::resolved() const {
  SweepConfig r = *this;
  if (r.sites.empty()) {
    switch (r.experiment) {
      case Experiment::kTransport: r.sites = {20}; break;
      case Experiment::kSweepN: r.sites = {20, 40, 60, 80, 100, 120, 140}; break;
      default: r.sites = {100}; break;
    }
  }
  if (r.tau_over_th.empty()) {
    if (r.experiment == Experiment::kSweepTau) {
      if (r.points < 1) throw ConfigError("points must be at least 1");
      for (int k = 0; k < r.points; ++k) {
        r.tau_over_th.push_back(
            r.points == 1 ? 0.0
                          : static_cast<double>(15 * k) / (100.0 * (r.points - 1)));
      }
    } else if (r.experiment == Experiment::kSweepN) {
      r.tau_over_th = {0.1};
    } else {
      r.tau_over_th = {0.0};
    }
  }
  if (r.experiment == Experiment::kTransport && r.start_site == 0) {
    r.start_site = r.direction == Direction::kRight ? 1 : r.sites.front();
  }
  r.validate();
  return r;
}

void SweepConfig::validate() const {
  if (!(u_over_j > 0.0)) throw ConfigError("u_over_j must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  if (points < 1) throw ConfigError("points must be at least 1");
  if (j_over_h_khz && !(*j_over_h_khz > 0.0)) {
    throw ConfigError("j_over_h_khz must be positive");
  }
  for (int n : sites) {
    if (n < 2) throw ConfigError("sites must be at least 2");
    const bool needs_even = experiment == Experiment::kEntangle ||
                            experiment == Experiment::kSweepTau ||
                            experiment == Experiment::kSweepN;
    if (needs_even && n % 2 != 0) {
      throw ConfigError("entangling runs need an even number of sites, got " +
                        std::to_string(n));
    }
  }
  for (double tau : tau_over_th) {
    if (!(tau >= 0.0 && tau < 1.0)) throw ConfigError("tau_over_th must lie in [0, 1)");
    if (experiment == Experiment::kSweepTau && tau > 0.2) {
      throw ConfigError("sweep_tau grid must lie in [0, 0.2]");
    }
  }
  if (experiment == Experiment::kSweepTau && sites.size() > 1) {
    throw ConfigError("sweep_tau runs on a single chain length");
  }
  if (experiment == Experiment::kSweepN && tau_over_th.size() > 1) {
    throw ConfigError("sweep_n runs at a single tau_over_th");
  }
}

ResultRecord run_entangle_point(int n_sites, double u_over_j, double tau_over_th,
                                const PropagatorConfig& pcfg,
                                RampConvention convention, std::uint64_t shots,
                                std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.n_sites = n_sites;
  rec.tau_over_th = tau_over_th;
  rec.x = tau_over_th;
  rec.witness_sampled = kNaN;
  constexpr double j = 1.0;
  const double tau = tau_over_th * hop_time(j);
  const auto schedule = compile_entangle(n_sites, tau, j, u_over_j * j, convention);
  rec.total_time = schedule.total_duration();

  const auto basis = enumerate_basis(n_sites, 2);
  const auto initial = product_state(basis, {{1, kPlus}, {n_sites, kPlus}});
  try {
    const auto final_state = evolve_schedule(initial, schedule, pcfg, {}, 0.0, &rec.stats);
    const auto outcome = project_two_sites(final_state, 1, n_sites);
    rec.p_1n = outcome.p_project;
    if (outcome.normalized) {
      rec.c_1n = concurrence(outcome);
      rec.witness = witness_expectation(outcome);
      if (shots > 0) {
        std::mt19937_64 rng(seed);
        rec.witness_sampled = sample_witness(outcome, shots, rng);
      }
    } else {
      rec.c_1n = rec.witness = kNaN;
    }
  } catch (const NonConvergenceError& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.p_1n = rec.c_1n = rec.witness = kNaN;
  }
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

namespace {

std::vector<ResultRecord> run_grid(const SweepConfig& cfg, bool x_is_n) {
  const auto pcfg = propagator_config(cfg);
  std::vector<std::pair<int, double>> grid;
  for (int n : cfg.sites) {
    for (double tau : cfg.tau_over_th) grid.emplace_back(n, tau);
  }
  auto records = parallel_map(grid.size(), cfg.threads, [&](std::size_t i) {
    auto rec = run_entangle_point(grid[i].first, cfg.u_over_j, grid[i].second, pcfg,
                                  cfg.ramp_convention, cfg.shots,
                                  point_seed(cfg.seed, i));
    if (x_is_n) rec.x = rec.n_sites;
    return rec;
  });
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.x < b.x; });
  const auto spectrum = witness_spectrum();
  for (const auto& r : records) {
    if (r.ok && !std::isnan(r.witness) &&
        (r.witness < spectrum.front() - 1e-9 || r.witness > spectrum.back() + 1e-9)) {
      throw std::logic_error("witness value outside the operator spectrum");
    }
  }
  return records;
}

}  // namespace

std::vector<ResultRecord> run_entangle(const SweepConfig& cfg) {
  return run_grid(cfg.resolved(), false);
}

std::vector<ResultRecord> run_sweep_tau(const SweepConfig& cfg) {
  auto r = cfg;
  r.experiment = Experiment::kSweepTau;
  return run_grid(r.resolved(), false);
}

std::vector<ResultRecord> run_sweep_n(const SweepConfig& cfg) {
  auto r = cfg;
  r.experiment = Experiment::kSweepN;
  return run_grid(r.resolved(), true);
}

TransportResult run_transport(const SweepConfig& cfg) {
  auto r = cfg;
  r.experiment = Experiment::kTransport;
  r = r.resolved();
  constexpr double j = 1.0;
  TransportResult out;
  out.n_sites = r.sites.front();
  out.start_site = r.start_site;
  const auto schedule =
      compile_transport(out.n_sites, out.start_site, r.direction,
                        r.tau_over_th.front() * hop_time(j), j, r.ramp_convention);
  out.total_time = schedule.total_duration();
  const int hops = static_cast<int>(std::count_if(
      schedule.segments().begin(), schedule.segments().end(),
      [](const Segment& s) { return s.kind == SegmentKind::kHold; }));
  out.target_site = r.direction == Direction::kRight ? out.start_site + hops
                                                     : out.start_site - hops;

  const auto basis = enumerate_basis(out.n_sites, 1);
  const auto initial = StateVector::BasisState(
      basis, ordinal(*basis, {Mode{out.start_site, Spin::kUp}}));
  auto observer = [&out](double t, const StateVector& v) {
    out.trajectory.push_back({t, occupation_profile(v).total, v.norm()});
  };
  const auto final_state =
      evolve_schedule(initial, schedule, propagator_config(r), observer, 0.0, &out.stats);
  out.arrival_probability = occupation_profile(final_state).total[out.target_site - 1];
  return out;
}

std::array<double, 4> witness_spectrum() {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(witness_matrix());
  const auto& ev = eig.eigenvalues();
  return {ev[0], ev[1], ev[2], ev[3]};
}

WitnessReport run_witness_check(const SweepConfig& cfg, std::size_t product_samples) {
  WitnessReport rep;
  rep.product_samples = product_samples;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  auto random_qubit = [&] {
    std::array<Complex, 2> q{Complex(gauss(rng), gauss(rng)),
                             Complex(gauss(rng), gauss(rng))};
    const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    q[0] /= n;
    q[1] /= n;
    return q;
  };
  rep.min_product_witness = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < product_samples; ++k) {
    const auto a = random_qubit();
    const auto b = random_qubit();
    const TwoQubitState psi{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
    rep.min_product_witness =
        std::min(rep.min_product_witness, witness_expectation(outcome_from_state(psi)));
  }

  const TwoQubitState plus_plus{0.5, 0.5, 0.5, 0.5};
  const auto ideal = outcome_from_state(
      effective_gate_state(plus_plus, 1.0, std::numbers::pi / 2.0));
  rep.ideal_witness = witness_expectation(ideal);
  rep.ideal_concurrence = concurrence(ideal);
  rep.reconstruction_error =
      (assemble_witness(witness_settings()) - witness_matrix()).cwiseAbs().maxCoeff();
  const auto spectrum = witness_spectrum();
  rep.spectrum_min = spectrum.front();
  rep.spectrum_max = spectrum.back();
  rep.sampled_ideal_witness = kNaN;
  if (cfg.shots > 0) {
    std::mt19937_64 shot_rng(point_seed(cfg.seed, 0));
    rep.sampled_ideal_witness = sample_witness(ideal, cfg.shots, shot_rng);
  }
  return rep;
}

double OracleReport::max_error() const {
  return std::max({max_error_single, max_error_same_spin, max_error_opposite_spin});
}

OracleReport run_oracle_check(std::size_t samples, std::uint64_t seed,
                              const PropagatorConfig& pcfg) {
  OracleReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time_dist(0.0, 10.0);
  std::uniform_real_distribution<double> log_ratio(std::log(5.0), std::log(200.0));
  constexpr double j = 1.0;

  const auto one = enumerate_basis(2, 1);
  const auto two = enumerate_basis(2, 2);
  const auto& b1 = *one;
  const auto& b2 = *two;
  const auto up1 = ordinal(b1, {Mode{1, Spin::kUp}});
  const auto up2 = ordinal(b1, {Mode{2, Spin::kUp}});
  const auto uu = ordinal(b2, {Mode{1, Spin::kUp}, Mode{2, Spin::kUp}});
  const auto uu_left = ordinal(b2, {Mode{1, Spin::kUp}, Mode{1, Spin::kUp}});
  const auto uu_right = ordinal(b2, {Mode{2, Spin::kUp}, Mode{2, Spin::kUp}});
  const auto ud = ordinal(b2, {Mode{1, Spin::kUp}, Mode{2, Spin::kDown}});
  const auto du = ordinal(b2, {Mode{1, Spin::kDown}, Mode{2, Spin::kUp}});
  const auto pair_left = ordinal(b2, {Mode{1, Spin::kUp}, Mode{1, Spin::kDown}});
  const auto pair_right = ordinal(b2, {Mode{2, Spin::kUp}, Mode{2, Spin::kDown}});

  const auto h1 = build_hamiltonian(one, {j, 0.0, 0.0, 0.0});
  const auto s2 = HamiltonianStructure::Build(two);

  for (std::size_t k = 0; k < samples; ++k) {
    const double t = time_dist(rng);
    const double u = j * std::exp(log_ratio(rng));

    const auto single = evolve_hold(StateVector::BasisState(one, up1), h1, t, pcfg);
    const auto amp = single_atom_amplitudes(j, t);
    rep.max_error_single = std::max(
        rep.max_error_single,
        phase_aligned_error({single[up1], single[up2]}, {amp.stay, amp.hop}));

    const auto h2 = build_hamiltonian(s2, {j, 0.0, u, 0.0});
    const auto c = two_atom_coefficients(j, u, t);
    const auto same = evolve_hold(StateVector::BasisState(two, uu), h2, t, pcfg);
    rep.max_error_same_spin = std::max(
        rep.max_error_same_spin,
        phase_aligned_error({same[uu], same[uu_left], same[uu_right]},
                            {c.a_same, c.c_same, c.c_same}));

    const auto diff = evolve_hold(StateVector::BasisState(two, ud), h2, t, pcfg);
    rep.max_error_opposite_spin = std::max(
        rep.max_error_opposite_spin,
        phase_aligned_error({diff[ud], diff[du], diff[pair_left], diff[pair_right]},
                            {c.a_diff, c.b_diff, c.c_diff, c.c_diff}));
  }
  return rep;
}

namespace {

void write_number(std::ostream& os, double v) {
  if (std::isnan(v)) {
    os << "NaN";
  } else {
    os << v;
  }
}

std::string sites_label(const std::vector<int>& sites) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < sites.size(); ++i) ss << (i ? "," : "") << sites[i];
  return ss.str();
}

}  // namespace

void write_records_csv(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<ResultRecord>& records) {
  const bool by_n = cfg.experiment == Experiment::kSweepN;
  const bool sampled = cfg.shots > 0;
  const auto old_precision = os.precision(12);
  os << "# latticeshuttle v" << kVersion << " experiment=" << to_string(cfg.experiment)
     << " N=" << sites_label(cfg.sites) << " U_over_J=" << cfg.u_over_j
     << " ramp=" << to_string(cfg.ramp_convention)
     << " extension_columns=witness" << (sampled ? ",witness_sampled" : "") << '\n';
  os << (by_n ? "N" : "tau_over_th") << ",p_1n,c_1n,witness"
     << (sampled ? ",witness_sampled" : "") << ",wall_time\n";
  for (const auto& r : records) {
    write_number(os, r.x);
    for (double v : {r.p_1n, r.c_1n, r.witness}) {
      os << ',';
      write_number(os, v);
    }
    if (sampled) {
      os << ',';
      write_number(os, r.witness_sampled);
    }
    os << ',';
    write_number(os, r.wall_time);
    os << '\n';
  }
  os.precision(old_precision);
}

void write_transport_csv(std::ostream& os, const SweepConfig& cfg,
                         const TransportResult& result) {
  const auto old_precision = os.precision(12);
  os << "# latticeshuttle v" << kVersion << " experiment=transport N=" << result.n_sites
     << " U_over_J=" << cfg.u_over_j << " ramp=" << to_string(cfg.ramp_convention)
     << " start=" << result.start_site << " target=" << result.target_site << '\n';
  os << "t";
  for (int i = 1; i <= result.n_sites; ++i) os << ",n_" << i;
  os << ",norm\n";
  for (const auto& s : result.trajectory) {
    os << s.t;
    for (double n : s.occupation) os << ',' << n;
    os << ',' << s.norm << '\n';
  }
  os << "# arrival_probability=" << result.arrival_probability << '\n';
  os.precision(old_precision);
}

}  // namespace latticeshuttle
