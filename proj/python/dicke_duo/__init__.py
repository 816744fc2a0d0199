"""Resonance fluorescence of two dipole-interacting two-level atoms.

Thin Python layer over the C++ core: coupling constants, master-equation
steady states, photon correlation curves, and quantum-jump Monte Carlo
trajectories.
"""

from ._core import (
    CorrelationCurve,
    CouplingConstants,
    EmissionRecord,
    SteadyStateDiagonals,
    SteadyStateReport,
    SystemParams,
    TrajectoryEstimate,
    __version__,
    coupling_equal_dipoles,
    coupling_for,
    g0_analytic,
    g0_unity_crossing,
    g_at_times,
    g_tau,
    g_traj_estimate,
    simulate_trajectory,
    steady_state,
    steady_state_analytic,
)

__all__ = [
    "CorrelationCurve",
    "CouplingConstants",
    "EmissionRecord",
    "SteadyStateDiagonals",
    "SteadyStateReport",
    "SystemParams",
    "TrajectoryEstimate",
    "__version__",
    "coupling_equal_dipoles",
    "coupling_for",
    "g0_analytic",
    "g0_unity_crossing",
    "g_at_times",
    "g_tau",
    "g_traj_estimate",
    "simulate_trajectory",
    "steady_state",
    "steady_state_analytic",
]
