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

// Command-line front end: transport, entangle, sweep-tau, sweep-n,
// witness-check and oracle-check.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/config.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/hamiltonian.hpp"
#include "latticeshuttle/schedule.hpp"
#include "latticeshuttle/sweep.hpp"

namespace ls = latticeshuttle;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw ls::ConfigError("cannot open output file '" + path + "'");
    stream = &file;
  }
};

void report_physical_time(const ls::SweepConfig& cfg) {
  if (!cfg.j_over_h_khz) return;
  const ls::PhysicalUnits units{*cfg.j_over_h_khz * 1e3};
  for (int n : cfg.sites) {
    if (n % 2 != 0) continue;
    const double t = ls::total_time(n, 1.0, cfg.u_over_j);
    std::cerr << "# t_T(N=" << n << ") = " << ls::to_physical(t, units) * 1e3
              << " ms\n";
  }
}

int run(const ls::SweepConfig& cfg, bool print_schedule, const std::string& dump_h) {
  Output out(cfg.output_path);
  auto& os = *out.stream;
  constexpr double j = 1.0;

  if (print_schedule || !dump_h.empty()) {
    const int n = cfg.sites.front();
    const double tau = cfg.tau_over_th.front() * ls::hop_time(j);
    const auto schedule =
        cfg.experiment == ls::Experiment::kTransport
            ? ls::compile_transport(n, cfg.start_site, cfg.direction, tau, j,
                                    cfg.ramp_convention)
            : ls::compile_entangle(n, tau, j, cfg.u_over_j, cfg.ramp_convention);
    if (print_schedule) ls::write_schedule(std::cerr, schedule);
    if (!dump_h.empty()) {
      std::ofstream coo(dump_h);
      if (!coo) throw ls::ConfigError("cannot open '" + dump_h + "'");
      const int particles = cfg.experiment == ls::Experiment::kTransport ? 1 : 2;
      ls::build_hamiltonian(ls::enumerate_basis(n, particles),
                            schedule.segments().front().profile_start)
          .write_coo(coo);
    }
  }

  switch (cfg.experiment) {
    case ls::Experiment::kTransport: {
      const auto result = ls::run_transport(cfg);
      ls::write_transport_csv(os, cfg, result);
      std::cerr << "# arrival_probability(site " << result.target_site
                << ") = " << result.arrival_probability << '\n';
      return 0;
    }
    case ls::Experiment::kEntangle:
    case ls::Experiment::kSweepTau:
    case ls::Experiment::kSweepN: {
      const auto records = cfg.experiment == ls::Experiment::kSweepTau ? ls::run_sweep_tau(cfg)
                           : cfg.experiment == ls::Experiment::kSweepN ? ls::run_sweep_n(cfg)
                                                                       : ls::run_entangle(cfg);
      ls::write_records_csv(os, cfg, records);
      report_physical_time(cfg);
      int status = 0;
      for (const auto& r : records) {
        if (!r.ok) {
          std::cerr << "error: point N=" << r.n_sites << " tau/t_h=" << r.tau_over_th
                    << " failed: " << r.error << '\n';
          status = kExitNonConvergence;
        }
      }
      return status;
    }
    case ls::Experiment::kWitness: {
      const auto rep = ls::run_witness_check(cfg);
      os << "product_samples=" << rep.product_samples << '\n'
         << "min_product_witness=" << rep.min_product_witness << '\n'
         << "ideal_witness=" << rep.ideal_witness << '\n'
         << "ideal_concurrence=" << rep.ideal_concurrence << '\n'
         << "reconstruction_error=" << rep.reconstruction_error << '\n'
         << "spectrum=[" << rep.spectrum_min << ", " << rep.spectrum_max << "]\n";
      if (cfg.shots > 0) os << "sampled_ideal_witness=" << rep.sampled_ideal_witness << '\n';
      const bool ok = rep.min_product_witness >= -1e-12 && rep.ideal_witness <= -0.9 &&
                      rep.reconstruction_error <= 1e-15;
      return ok ? 0 : 1;
    }
    case ls::Experiment::kOracle: {
      ls::PropagatorConfig pcfg;
      pcfg.tolerance = cfg.tolerance;
      const auto rep = ls::run_oracle_check(200, cfg.seed, pcfg);
      os << "samples=" << rep.samples << '\n'
         << "max_error_single=" << rep.max_error_single << '\n'
         << "max_error_same_spin=" << rep.max_error_same_spin << '\n'
         << "max_error_opposite_spin=" << rep.max_error_opposite_spin << '\n'
         << "max_error=" << rep.max_error() << '\n';
      return rep.max_error() < 1e-8 ? 0 : 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed transport and entangling protocols in optical superlattices"};
  app.require_subcommand(1);
  app.fallthrough();

  // Every flag maps onto one config key; values are validated by the shared
  // config parser so files and flags behave identically.
  std::map<std::string, std::string> flags;
  auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  add("--sites", "sites", "chain length, or comma-separated list for sweep-n");
  add("--u-over-j", "u_over_j", "onsite energy U/J (default 25)");
  add("--tau-over-th", "tau_over_th", "ramp time tau/t_h, or comma-separated list");
  add("--tol", "tol", "propagator tolerance (default 1e-9)");
  add("--points", "points", "grid size for the default sweep-tau grid over [0, 0.15]");
  add("--threads", "threads", "worker threads, 0 = all cores (1 = serial baseline)");
  add("--out", "out", "output path (default stdout)");
  add("--shots", "shots", "finite-shot witness sampling per setting (0 = off)");
  add("--j-over-h-khz", "j_over_h_khz", "report t_T in ms for this J/h in kHz");
  add("--seed", "seed", "seed for randomized checks and shot sampling");
  add("--ramp-convention", "ramp_convention", "append | area (default area)");
  add("--ramp-integrator", "ramp_integrator", "midpoint | cf4 (default cf4)");
  add("--direction", "direction", "transport direction: left | right");
  add("--start-site", "start_site", "transport start site (default: chain end)");
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file; flags override it");
  bool print_schedule = false;
  app.add_flag("--print-schedule", print_schedule, "print the compiled schedule to stderr");
  std::string dump_h;
  app.add_option("--dump-hamiltonian", dump_h,
                 "write the first segment's Hamiltonian as COO text");

  const std::map<std::string, ls::Experiment> commands = {
      {"transport", ls::Experiment::kTransport},
      {"entangle", ls::Experiment::kEntangle},
      {"sweep-tau", ls::Experiment::kSweepTau},
      {"sweep-n", ls::Experiment::kSweepN},
      {"witness-check", ls::Experiment::kWitness},
      {"oracle-check", ls::Experiment::kOracle}};
  for (const auto& [name, experiment] : commands) {
    app.add_subcommand(name, std::string("run the ") + ls::to_string(experiment) +
                                 " experiment");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    ls::SweepConfig cfg;
    if (!config_path.empty()) cfg = ls::parse_config(config_path);
    for (const auto& [key, value] : flags) {
      try {
        ls::apply_config_value(cfg, key, value);
      } catch (const ls::ConfigError& e) {
        throw ls::ConfigError(std::string("flag --") + key + ": " + e.what());
      }
    }
    for (const auto& [name, experiment] : commands) {
      if (app.got_subcommand(name)) cfg.experiment = experiment;
    }
    cfg = cfg.resolved();
    std::cerr << "# resolved config\n" << ls::format_config(cfg);
    return run(cfg, print_schedule, dump_h);
  } catch (const ls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ls::NonConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNonConvergence;
  }
}
