#pragma once

#include <array>

#include "dicke/coupling.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Parameters of the driven two-atom system in the rotating frame at exact
// resonance. `a` is the Einstein coefficient of each atom; omega1/omega2 are
// the (complex) Rabi frequencies of the driving laser at the two atom sites.
struct SystemParams {
  double a = 1.0;
  Cplx omega1{0.0, 0.0};
  Cplx omega2{0.0, 0.0};
  CouplingConstants coupling;

  SystemParams() = default;  // a = 1, undriven, uncoupled
  SystemParams(double a_, Cplx omega1_, Cplx omega2_, CouplingConstants coupling_);

  // Equal parallel dipoles, both atoms driven with the same real Rabi
  // frequency; the coupling reduces to a single scalar C(theta, k0r).
  static SystemParams equal_dipoles(double a_, double omega, double theta, double k0r);
};

// Collective jump operators R+- = (S1- +- e^{i phi} S2-)/sqrt(2) with
// phi = arg(C12 + conj(C21)), and their decay rates A +- |C12 + conj(C21)|/2.
struct JumpChannels {
  Mat4 r_plus;
  Mat4 r_minus;
  double rate_plus = 0.0;
  double rate_minus = 0.0;
  double phi = 0.0;
};

// Lowering operator S_atom^- of atom 1 or 2 in the product basis.
Mat4 lowering_operator(int atom);

// Unitary mapping product-basis components to Dicke-basis components;
// row order [|g>, |s>, |a>, |e>].
Mat4 dicke_transform();

// Non-hermitian conditional Hamiltonian
//   H_cond = (1/2i) [ A (S1+S1- + S2+S2-) + C12 S1+S2- + C21 S2+S1- ] + H_L,
//   H_L = (1/2) sum_i (Omega_i S_i+ + conj(Omega_i) S_i-).
Mat4 conditional_hamiltonian(const SystemParams& p);

// Reset operator (non-normalized state after an emission):
//   R(rho) = (1/2)(C12* + C21) S1- rho S2+ + (1/2)(C12 + C21*) S2- rho S1+
//            + A (S1- rho S1+ + S2- rho S2+).
Mat4 reset_apply(const SystemParams& p, const Mat4& rho);

// Throws std::domain_error if A - |C12 + conj(C21)|/2 < -1e-12 (unphysical
// coupling); a tiny negative rate from rounding is clamped to zero.
JumpChannels jump_channels(const SystemParams& p);

// Photon emission rate I(rho) = tr R(rho) for a normalized state.
double emission_rate(const SystemParams& p, const Mat4& rho);

// Dicke-basis populations <g|rho|g>, <s|rho|s>, <a|rho|a>, <e|rho|e>.
std::array<double, 4> dicke_populations(const Mat4& rho);

}  // namespace dicke
