#include "dicke/two_atom.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

SystemParams::SystemParams(double a_, Cplx omega1_, Cplx omega2_,
                           CouplingConstants coupling_)
    : a(a_), omega1(omega1_), omega2(omega2_), coupling(coupling_) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("Einstein coefficient must be positive and finite");
  }
}

SystemParams SystemParams::equal_dipoles(double a_, double omega, double theta,
                                         double k0r) {
  const Cplx c = coupling_equal_dipoles(theta, k0r, a_);
  return SystemParams(a_, Cplx(omega, 0.0), Cplx(omega, 0.0), CouplingConstants{c, c});
}

Mat4 lowering_operator(int atom) {
  Mat4 s = Mat4::Zero();
  if (atom == 1) {
    // sigma1^- (x) I: |2b> -> |1b>
    s(0, 2) = 1.0;
    s(1, 3) = 1.0;
  } else if (atom == 2) {
    // I (x) sigma2^-: |a2> -> |a1>
    s(0, 1) = 1.0;
    s(2, 3) = 1.0;
  } else {
    throw std::invalid_argument("atom index must be 1 or 2");
  }
  return s;
}

Mat4 dicke_transform() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 u = Mat4::Zero();
  u(kDickeG, 0) = 1.0;
  u(kDickeS, 1) = r;
  u(kDickeS, 2) = r;
  u(kDickeA, 1) = r;
  u(kDickeA, 2) = -r;
  u(kDickeE, 3) = 1.0;
  return u;
}

Mat4 conditional_hamiltonian(const SystemParams& p) {
  const Mat4 s1 = lowering_operator(1);
  const Mat4 s2 = lowering_operator(2);
  const Mat4 s1p = s1.adjoint();
  const Mat4 s2p = s2.adjoint();

  Mat4 damping = p.a * (s1p * s1 + s2p * s2);
  damping += p.coupling.c12 * (s1p * s2);
  damping += p.coupling.c21 * (s2p * s1);

  Mat4 laser = 0.5 * (p.omega1 * s1p + std::conj(p.omega1) * s1 +
                      p.omega2 * s2p + std::conj(p.omega2) * s2);

  return Cplx(0.0, -0.5) * damping + laser;  // 1/(2i) = -i/2
}

Mat4 reset_apply(const SystemParams& p, const Mat4& rho) {
  const Mat4 s1 = lowering_operator(1);
  const Mat4 s2 = lowering_operator(2);
  const Cplx w12 = 0.5 * (std::conj(p.coupling.c12) + p.coupling.c21);
  const Cplx w21 = 0.5 * (p.coupling.c12 + std::conj(p.coupling.c21));

  Mat4 out = p.a * (s1 * rho * s1.adjoint() + s2 * rho * s2.adjoint());
  out += w12 * (s1 * rho * s2.adjoint());
  out += w21 * (s2 * rho * s1.adjoint());
  return out;
}

JumpChannels jump_channels(const SystemParams& p) {
  const Cplx csum = p.coupling.c12 + std::conj(p.coupling.c21);
  const double kappa = 0.5 * std::abs(csum);
  double rate_minus = p.a - kappa;
  if (rate_minus < -1e-12) {
    throw std::domain_error(
        "unphysical coupling: A - |C12 + conj(C21)|/2 is negative");
  }
  if (rate_minus < 0.0) rate_minus = 0.0;

  // phi makes the cross terms of rate+ R+ rho R+^+ + rate- R- rho R-^+
  // reproduce the reset operator exactly.
  const double phi = (kappa == 0.0) ? 0.0 : std::arg(csum);
  const Cplx ph = std::polar(1.0, phi);
  const double r = 1.0 / std::sqrt(2.0);
  const Mat4 s1 = lowering_operator(1);
  const Mat4 s2 = lowering_operator(2);

  JumpChannels ch;
  ch.r_plus = r * (s1 + ph * s2);
  ch.r_minus = r * (s1 - ph * s2);
  ch.rate_plus = p.a + kappa;
  ch.rate_minus = rate_minus;
  ch.phi = phi;
  return ch;
}

double emission_rate(const SystemParams& p, const Mat4& rho) {
  return reset_apply(p, rho).trace().real();
}

std::array<double, 4> dicke_populations(const Mat4& rho) {
  const Mat4 u = dicke_transform();
  const Mat4 rd = u * rho * u.adjoint();
  return {rd(0, 0).real(), rd(1, 1).real(), rd(2, 2).real(), rd(3, 3).real()};
}

}  // namespace dicke
