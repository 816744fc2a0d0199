#pragma once

#include <array>
#include <optional>

#include "dicke/two_atom.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Generator of the unconditional master equation
//   d rho/dt = -i (H_cond rho - rho H_cond^dagger) + R(rho)
// as a 16x16 matrix acting on column-stacked density matrices.
struct Liouvillian {
  Mat16 matrix;
  SystemParams params;
};

struct SteadyStateReport {
  Mat4 rho_ss;                          // hermitian, unit trace, product basis
  double i_ss = 0.0;                    // steady-state emission rate tr R(rho_ss)
  double residual = 0.0;                // ||L vec(rho_ss)||_2
  std::array<double, 4> dicke_diagonals{};  // populations of |g>,|s>,|a>,|e>
};

// Closed-form steady-state Dicke populations for equal dipoles driven with
// real Rabi frequency Omega on both atoms and scalar coupling C.
struct SteadyStateDiagonals {
  double gg = 0.0;
  double ss = 0.0;
  double aa = 0.0;
  double ee = 0.0;
  double norm = 0.0;  // common denominator N
};

Liouvillian build_liouvillian(const SystemParams& p);

// L applied to one density matrix (through the assembled 16x16 matrix).
Mat4 apply_liouvillian(const Liouvillian& l, const Mat4& rho);

// Step size used by the integrators when the caller does not pass one:
// 1e-3/A, reduced when |C| or |Omega| is large enough to threaten RK4
// stability at that step.
double default_step(const SystemParams& p);

// Fixed-step classical RK4 from rho0 over duration t (t is subdivided into
// equal steps no longer than dt). Throws std::invalid_argument for t < 0 or
// dt <= 0 and std::runtime_error if the iteration blows up, naming a smaller
// step to retry with.
Mat4 propagate(const Liouvillian& l, const Mat4& rho0, double t, double dt);

// Solves L vec(rho) = 0 by taking the null vector from the SVD of L and
// normalizing its trace. Throws std::runtime_error when the kernel is not
// one-dimensional (degenerate steady state, e.g. Omega = 0 with Re C = A)
// or when the residual check fails.
SteadyStateReport steady_state_numeric(const SystemParams& p);

SteadyStateDiagonals steady_state_analytic(double a, double omega, Cplx c);

// Dicke diagonals of the (non-normalized) reset of the steady state:
//   [(A+ReC) rho_ss + (A-ReC) rho_aa, (A+ReC) rho_ee, (A-ReC) rho_ee, 0].
// Throws std::domain_error when the steady-state emission rate vanishes
// (Omega = 0), where the normalized reset state is undefined.
std::array<double, 4> reset_diagonals_analytic(double a, double omega, Cplx c);

// Steady-state emission rate I_ss = 2 A Omega^2 (A^2 + 2 Omega^2 + A ReC) / N.
double i_ss_analytic(double a, double omega, Cplx c);

// Emission rate of the normalized reset state, 2 (A^2 + (ReC)^2) rho_ss_ee / I_ss.
// Throws std::domain_error when I_ss vanishes.
double i0_after_reset_analytic(double a, double omega, Cplx c);

// g(0) = (A^2 + (ReC)^2)/(2A^2) *
//        [1 + (A^2 (ImC)^2 - 4 Omega^2 A ReC) / (2 Omega^2 + A^2 + A ReC)^2].
// Requires omega > 0 for the correlation-function interpretation.
double g0_analytic(double a, double omega, Cplx c);

// Smallest k0r in [k0r_min, k0r_max] where the equal-dipole g(0) crosses 1,
// located by a sign scan over `grid_points` nodes plus bisection; nullopt if
// no sign change is found.
std::optional<double> g0_unity_crossing(double a, double omega, double theta,
                                        double k0r_min, double k0r_max,
                                        int grid_points);

}  // namespace dicke
