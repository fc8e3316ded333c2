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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "latticeshuttle/analytic.hpp"
#include "latticeshuttle/basis.hpp"
#include "latticeshuttle/config.hpp"
#include "latticeshuttle/errors.hpp"
#include "latticeshuttle/hamiltonian.hpp"
#include "latticeshuttle/observables.hpp"
#include "latticeshuttle/propagator.hpp"
#include "latticeshuttle/schedule.hpp"
#include "latticeshuttle/sweep.hpp"

namespace py = pybind11;
using namespace latticeshuttle;

namespace {

FockConfig to_config(const FockBasis& basis, const std::vector<int>& occupations) {
  FockConfig c{basis.n_sites(), {}};
  for (int n : occupations) {
    if (n < 0 || n > 255) throw ConfigError("occupation out of range");
    c.occupations.push_back(static_cast<std::uint8_t>(n));
  }
  return c;
}

py::dict record_to_dict(const ResultRecord& r) {
  py::dict d;
  d["n_sites"] = r.n_sites;
  d["tau_over_th"] = r.tau_over_th;
  d["p_1n"] = r.p_1n;
  d["c_1n"] = r.c_1n;
  d["witness"] = r.witness;
  d["witness_sampled"] = r.witness_sampled;
  d["total_time"] = r.total_time;
  d["wall_time"] = r.wall_time;
  d["norm_drift"] = r.stats.max_norm_drift;
  d["energy_drift"] = r.stats.max_energy_drift;
  d["ok"] = r.ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Superlattice transport and entangling-protocol simulator";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError",
                                              PyExc_RuntimeError);

  py::enum_<Spin>(m, "Spin").value("UP", Spin::kUp).value("DOWN", Spin::kDown);
  py::enum_<Direction>(m, "Direction")
      .value("LEFT", Direction::kLeft)
      .value("RIGHT", Direction::kRight);

  py::class_<FockBasis, std::shared_ptr<FockBasis>>(m, "FockBasis")
      .def_property_readonly("n_sites", &FockBasis::n_sites)
      .def_property_readonly("n_particles", &FockBasis::n_particles)
      .def_property_readonly("dim", &FockBasis::dim)
      .def("config_of",
           [](const FockBasis& b, std::size_t i) {
             const auto c = b.config_of(i);
             return std::vector<int>(c.occupations.begin(), c.occupations.end());
           },
           "Occupations of basis state i, flattened as 2*(site-1)+spin.")
      .def("index_of", [](const FockBasis& b, const std::vector<int>& occ) {
        return b.index_of(to_config(b, occ));
      });

  m.def("enumerate_basis",
        [](int n_sites, int n_particles) {
          return std::const_pointer_cast<FockBasis>(enumerate_basis(n_sites, n_particles));
        },
        py::arg("n_sites"), py::arg("n_particles"));

  py::class_<CouplingProfile>(m, "CouplingProfile")
      .def(py::init([](double j_odd, double j_even, double u, double tilt) {
             return CouplingProfile{j_odd, j_even, u, tilt};
           }),
           py::arg("j_odd") = 1.0, py::arg("j_even") = 0.0, py::arg("u") = 0.0,
           py::arg("tilt_slope") = 0.0)
      .def_readwrite("j_odd", &CouplingProfile::j_odd)
      .def_readwrite("j_even", &CouplingProfile::j_even)
      .def_readwrite("u", &CouplingProfile::u)
      .def_readwrite("tilt_slope", &CouplingProfile::tilt_slope)
      .def("__eq__", [](const CouplingProfile& a, const CouplingProfile& b) { return a == b; })
      .def("__repr__", [](const CouplingProfile& p) {
        std::ostringstream ss;
        ss << "CouplingProfile(j_odd=" << p.j_odd << ", j_even=" << p.j_even
           << ", u=" << p.u << ", tilt_slope=" << p.tilt_slope << ")";
        return ss.str();
      });

  py::class_<StateVector>(m, "StateVector")
      .def(py::init([](std::shared_ptr<FockBasis> basis, const Eigen::VectorXcd& amps) {
        return StateVector(std::move(basis), amps);
      }))
      .def_property_readonly("amplitudes",
                             [](const StateVector& v) { return v.amplitudes(); })
      .def_property_readonly("dim", &StateVector::dim)
      .def("norm", &StateVector::norm);

  m.def("basis_state", [](std::shared_ptr<FockBasis> basis, std::size_t i) {
    return StateVector::BasisState(std::move(basis), i);
  });
  m.def("product_state",
        [](std::shared_ptr<FockBasis> basis,
           const std::vector<std::pair<int, std::array<Complex, 2>>>& atoms) {
          if (atoms.size() == 1) return product_state(basis, {atoms[0]});
          if (atoms.size() == 2) return product_state(basis, {atoms[0], atoms[1]});
          throw ConfigError("product_state takes one or two atoms");
        },
        "One (site, [alpha, beta]) spinor per atom.");

  py::class_<SparseHamiltonian>(m, "SparseHamiltonian")
      .def_property_readonly("dim", &SparseHamiltonian::dim)
      .def_property_readonly("nnz", &SparseHamiltonian::nnz)
      .def_property_readonly("profile", &SparseHamiltonian::profile)
      .def("to_dense", &SparseHamiltonian::to_dense)
      .def("hermiticity_defect", &SparseHamiltonian::hermiticity_defect)
      .def("coo", [](const SparseHamiltonian& h) {
        std::ostringstream ss;
        h.write_coo(ss);
        return ss.str();
      });

  m.def("build_hamiltonian",
        [](std::shared_ptr<FockBasis> basis, const CouplingProfile& p) {
          return build_hamiltonian(basis, p);
        });
  m.def("apply", &apply);
  m.def("expectation", &expectation);
  m.def("interpolate", &interpolate);

  py::class_<Schedule>(m, "Schedule")
      .def_property_readonly("n_sites", &Schedule::n_sites)
      .def("total_duration", &Schedule::total_duration)
      .def("durations",
           [](const Schedule& s) {
             std::vector<double> d;
             for (const auto& seg : s.segments()) d.push_back(seg.duration);
             return d;
           })
      .def("labels",
           [](const Schedule& s) {
             std::vector<std::string> d;
             for (const auto& seg : s.segments()) d.push_back(seg.label);
             return d;
           })
      .def("__str__", [](const Schedule& s) {
        std::ostringstream ss;
        write_schedule(ss, s);
        return ss.str();
      });

  m.def("hop_time", &hop_time, py::arg("j") = 1.0);
  m.def("compile_transport",
        [](int n, int start, Direction dir, double tau, double j, const std::string& conv) {
          return compile_transport(n, start, dir, tau, j, parse_ramp_convention(conv));
        },
        py::arg("n_sites"), py::arg("start_site"), py::arg("direction"),
        py::arg("tau") = 0.0, py::arg("j") = 1.0, py::arg("convention") = "append");
  m.def("compile_entangle",
        [](int n, double tau, double j, double u, const std::string& conv) {
          return compile_entangle(n, tau, j, u, parse_ramp_convention(conv));
        },
        py::arg("n_sites"), py::arg("tau") = 0.0, py::arg("j") = 1.0,
        py::arg("u") = 25.0, py::arg("convention") = "append");
  m.def("profile_at", &profile_at);

  py::class_<PropagatorConfig>(m, "PropagatorConfig")
      .def(py::init<>())
      .def_readwrite("tolerance", &PropagatorConfig::tolerance)
      .def_readwrite("max_substep", &PropagatorConfig::max_substep)
      .def_readwrite("krylov_dim", &PropagatorConfig::krylov_dim)
      .def_readwrite("max_krylov_dim", &PropagatorConfig::max_krylov_dim);

  m.def("evolve_hold",
        [](const StateVector& v, const SparseHamiltonian& h, double t,
           const PropagatorConfig& cfg) { return evolve_hold(v, h, t, cfg); },
        py::arg("state"), py::arg("h"), py::arg("duration"),
        py::arg("cfg") = PropagatorConfig{});
  m.def("evolve_ramp",
        [](const StateVector& v, const SparseHamiltonian& a, const SparseHamiltonian& b,
           double t, const PropagatorConfig& cfg) { return evolve_ramp(v, a, b, t, cfg); },
        py::arg("state"), py::arg("h_start"), py::arg("h_end"), py::arg("duration"),
        py::arg("cfg") = PropagatorConfig{});
  m.def("evolve_schedule",
        [](const StateVector& v, const Schedule& s, const PropagatorConfig& cfg,
           std::function<void(double, const StateVector&)> observer, double interval) {
          return evolve_schedule(v, s, cfg, observer, interval);
        },
        py::arg("state"), py::arg("schedule"), py::arg("cfg") = PropagatorConfig{},
        py::arg("observer") = nullptr, py::arg("sample_interval") = 0.0);

  m.def("single_atom_amplitudes", [](double j, double t) {
    const auto a = single_atom_amplitudes(j, t);
    return std::make_pair(a.stay, a.hop);
  });
  m.def("two_atom_coefficients", [](double j, double u, double t) {
    const auto c = two_atom_coefficients(j, u, t);
    py::dict d;
    d["a_same"] = c.a_same;
    d["c_same"] = c.c_same;
    d["a_diff"] = c.a_diff;
    d["b_diff"] = c.b_diff;
    d["c_diff"] = c.c_diff;
    d["s"] = c.s;
    d["s_prime"] = c.s_prime;
    return d;
  });
  m.def("exchange_coupling", &exchange_coupling);
  m.def("interaction_time", &interaction_time);
  m.def("effective_gate_state", &effective_gate_state);
  m.def("total_time", &total_time);
  m.def("to_physical_seconds", [](double t, double j_over_h_hz) {
    return to_physical(t, PhysicalUnits{j_over_h_hz});
  });
  m.def("max_double_occupancy", &max_double_occupancy);

  py::class_<TwoQubitOutcome>(m, "TwoQubitOutcome")
      .def_readonly("amplitudes", &TwoQubitOutcome::amplitudes)
      .def_readonly("p_project", &TwoQubitOutcome::p_project)
      .def_readonly("normalized", &TwoQubitOutcome::normalized);

  m.def("occupation_profile", [](const StateVector& v) {
    const auto p = occupation_profile(v);
    py::dict d;
    d["up"] = p.up;
    d["down"] = p.down;
    d["total"] = p.total;
    return d;
  });
  m.def("project_two_sites", &project_two_sites, py::arg("state"), py::arg("site_a"),
        py::arg("site_b"), py::arg("floor") = 1e-12);
  m.def("outcome_from_state", &outcome_from_state);
  m.def("concurrence", &concurrence);
  m.def("witness_expectation", &witness_expectation);
  m.def("witness_matrix", &witness_matrix);
  m.def("witness_settings", [] {
    py::list out;
    for (const auto& t : witness_settings()) {
      out.append(py::make_tuple(t.label, t.weight, t.pre_rotations[0], t.pre_rotations[1]));
    }
    return out;
  });

  m.def("run_entangle_point",
        [](int n, double u_over_j, double tau_over_th, const std::string& conv, double tol) {
          PropagatorConfig cfg;
          cfg.tolerance = tol;
          return record_to_dict(
              run_entangle_point(n, u_over_j, tau_over_th, cfg, parse_ramp_convention(conv)));
        },
        py::arg("n_sites"), py::arg("u_over_j") = 25.0, py::arg("tau_over_th") = 0.0,
        py::arg("convention") = "area", py::arg("tol") = 1e-9);
  m.def("run_transport",
        [](int n, double tau_over_th, const std::string& conv) {
          SweepConfig cfg;
          cfg.sites = {n};
          cfg.tau_over_th = {tau_over_th};
          cfg.ramp_convention = parse_ramp_convention(conv);
          const auto r = run_transport(cfg);
          py::dict d;
          d["arrival_probability"] = r.arrival_probability;
          d["target_site"] = r.target_site;
          d["total_time"] = r.total_time;
          return d;
        },
        py::arg("n_sites"), py::arg("tau_over_th") = 0.0, py::arg("convention") = "area");
  m.def("run_oracle_check",
        [](std::size_t samples, std::uint64_t seed) {
          const auto r = run_oracle_check(samples, seed);
          py::dict d;
          d["max_error_single"] = r.max_error_single;
          d["max_error_same_spin"] = r.max_error_same_spin;
          d["max_error_opposite_spin"] = r.max_error_opposite_spin;
          d["max_error"] = r.max_error();
          return d;
        },
        py::arg("samples") = 100, py::arg("seed") = 1);
  m.def("parse_config_text", [](const std::string& text) {
    return format_config(parse_config_text(text, "<string>"));
  }, "Parses key=value text and returns the normalized config text.");
}
