// Python bindings for the dicke-duo core. Exposes the coupling constants,
// steady-state solvers, correlation curves, and the quantum-jump trajectory
// machinery; array-valued results cross over as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dicke/correlations.hpp"
#include "dicke/trajectories.hpp"
#include "dicke/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonance fluorescence of two dipole-interacting two-level atoms";
  m.attr("__version__") = dicke::kVersion;

  py::class_<dicke::CouplingConstants>(m, "CouplingConstants")
      .def(py::init<>())
      .def(py::init([](dicke::Cplx c12, dicke::Cplx c21) {
             return dicke::CouplingConstants{c12, c21};
           }),
           py::arg("c12"), py::arg("c21"))
      .def_readwrite("c12", &dicke::CouplingConstants::c12)
      .def_readwrite("c21", &dicke::CouplingConstants::c21)
      .def("__repr__", [](const dicke::CouplingConstants& c) {
        std::ostringstream os;
        os << "CouplingConstants(c12=" << c.c12.real() << "+" << c.c12.imag()
           << "j, c21=" << c.c21.real() << "+" << c.c21.imag() << "j)";
        return os.str();
      });

  m.def("coupling_equal_dipoles", &dicke::coupling_equal_dipoles, py::arg("theta"),
        py::arg("k0r"), py::arg("a") = 1.0,
        "Dipole-dipole coupling C for equal parallel dipoles at angle theta to "
        "the interatomic axis and dimensionless distance k0r.");

  m.def(
      "coupling_for",
      [](const std::array<double, 3>& d1, const std::array<double, 3>& d2,
         const std::array<double, 3>& r_hat, double k0r, double a) {
        return dicke::coupling_for(dicke::DipoleGeometry(d1, d2, r_hat, k0r), a);
      },
      py::arg("d1_hat"), py::arg("d2_hat"), py::arg("r_hat"), py::arg("k0r"),
      py::arg("a") = 1.0,
      "Both coupling constants C12, C21 for an arbitrary geometry of unit "
      "dipole vectors and unit interatomic axis.");

  py::class_<dicke::SystemParams>(m, "SystemParams")
      .def(py::init<double, dicke::Cplx, dicke::Cplx, dicke::CouplingConstants>(),
           py::arg("a"), py::arg("omega1"), py::arg("omega2"), py::arg("coupling"))
      .def_static("equal_dipoles", &dicke::SystemParams::equal_dipoles, py::arg("a"),
                  py::arg("omega"), py::arg("theta"), py::arg("k0r"),
                  "Both atoms driven with the same real Rabi frequency, equal "
                  "parallel dipoles at angle theta, distance k0r.")
      .def_readwrite("a", &dicke::SystemParams::a)
      .def_readwrite("omega1", &dicke::SystemParams::omega1)
      .def_readwrite("omega2", &dicke::SystemParams::omega2)
      .def_readwrite("coupling", &dicke::SystemParams::coupling);

  py::class_<dicke::SteadyStateDiagonals>(m, "SteadyStateDiagonals")
      .def_readonly("gg", &dicke::SteadyStateDiagonals::gg)
      .def_readonly("ss", &dicke::SteadyStateDiagonals::ss)
      .def_readonly("aa", &dicke::SteadyStateDiagonals::aa)
      .def_readonly("ee", &dicke::SteadyStateDiagonals::ee)
      .def_readonly("norm", &dicke::SteadyStateDiagonals::norm);

  py::class_<dicke::SteadyStateReport>(m, "SteadyStateReport")
      .def_readonly("rho_ss", &dicke::SteadyStateReport::rho_ss)
      .def_readonly("i_ss", &dicke::SteadyStateReport::i_ss)
      .def_readonly("residual", &dicke::SteadyStateReport::residual)
      .def_readonly("dicke_diagonals", &dicke::SteadyStateReport::dicke_diagonals);

  m.def("steady_state", &dicke::steady_state_numeric, py::arg("params"),
        "Stationary density matrix of the unconditional master equation, with "
        "the stationary emission rate and solver residual.");
  m.def("steady_state_analytic", &dicke::steady_state_analytic, py::arg("a"),
        py::arg("omega"), py::arg("c"),
        "Closed-form stationary Dicke populations for equal dipoles.");
  m.def("g0_analytic", &dicke::g0_analytic, py::arg("a"), py::arg("omega"),
        py::arg("c"), "Closed-form g(0) for equal dipoles.");
  m.def("g0_unity_crossing", &dicke::g0_unity_crossing, py::arg("a"),
        py::arg("omega"), py::arg("theta"), py::arg("k0r_min"), py::arg("k0r_max"),
        py::arg("grid_points") = 200,
        "Smallest distance in [k0r_min, k0r_max] where g(0) crosses 1, or None.");

  py::class_<dicke::CorrelationCurve>(m, "CorrelationCurve")
      .def_readonly("tau_grid", &dicke::CorrelationCurve::tau_grid)
      .def_readonly("g_values", &dicke::CorrelationCurve::g_values)
      .def_readonly("i_ss", &dicke::CorrelationCurve::i_ss)
      .def_readonly("params", &dicke::CorrelationCurve::params);

  m.def("g_tau", &dicke::g_tau, py::arg("params"), py::arg("tau_max"),
        py::arg("n_points"),
        "Normalized two-time photon correlation g(tau) on a uniform grid.");
  m.def("g_at_times", &dicke::g_at_times, py::arg("params"), py::arg("taus"),
        "g(tau) evaluated at the given sorted delays.");

  py::class_<dicke::EmissionRecord>(m, "EmissionRecord")
      .def(py::init<>())
      .def_readwrite("times", &dicke::EmissionRecord::times)
      .def_readwrite("channel_tags", &dicke::EmissionRecord::channel_tags)
      .def_readwrite("horizon", &dicke::EmissionRecord::horizon)
      .def_readwrite("seed", &dicke::EmissionRecord::seed)
      .def("__len__",
           [](const dicke::EmissionRecord& r) { return r.times.size(); });

  py::class_<dicke::TrajectoryEstimate>(m, "TrajectoryEstimate")
      .def_readonly("tau_bins", &dicke::TrajectoryEstimate::tau_bins)
      .def_readonly("g_traj", &dicke::TrajectoryEstimate::g_traj)
      .def_readonly("std_error", &dicke::TrajectoryEstimate::std_error)
      .def_readonly("mean_rate", &dicke::TrajectoryEstimate::mean_rate);

  m.def("simulate_trajectory", &dicke::simulate_trajectory, py::arg("params"),
        py::arg("horizon"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>(),
        "Quantum-jump trajectory from the ground state; returns the emission "
        "record over a horizon measured in units of 1/A.");
  m.def("g_traj_estimate", &dicke::g_traj_estimate, py::arg("records"),
        py::arg("bin_width"), py::arg("tau_max"),
        "Histogram estimate of g(tau) from emission records, with "
        "block-bootstrap standard errors.");
}
