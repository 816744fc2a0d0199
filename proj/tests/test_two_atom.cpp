#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/two_atom.hpp"
#include "support/test_support.hpp"

using namespace dicke;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vec4 basis(int i) {
  Vec4 v = Vec4::Zero();
  v(i) = 1.0;
  return v;
}

Vec4 dicke_state(int which) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (which) {
    case kDickeG: return basis(0);
    case kDickeS: return r * (basis(1) + basis(2));
    case kDickeA: return r * (basis(1) - basis(2));
    default: return basis(3);
  }
}

SystemParams random_equal_params(SplitMix64& rng) {
  const double theta = kPi * rng.uniform_open();
  const double k0r = 0.3 + 10.0 * rng.uniform_open();
  const double omega = 2.0 * rng.uniform_open();
  return SystemParams::equal_dipoles(1.0, omega, theta, k0r);
}

SystemParams random_general_params(SplitMix64& rng) {
  const DipoleGeometry geom(testsup::random_unit_vec(rng),
                            testsup::random_unit_vec(rng),
                            testsup::random_unit_vec(rng),
                            0.05 + 20.0 * rng.uniform_open());
  return SystemParams(1.0, testsup::random_cplx(rng), testsup::random_cplx(rng),
                      coupling_for(geom, 1.0));
}
}  // namespace

TEST_CASE("lowering operators act on the expected product states") {
  const Mat4 s1 = lowering_operator(1);
  const Mat4 s2 = lowering_operator(2);
  CHECK((s1 * basis(2) - basis(0)).norm() == 0.0);  // |21> -> |11>
  CHECK((s1 * basis(3) - basis(1)).norm() == 0.0);  // |22> -> |12>
  CHECK((s2 * basis(1) - basis(0)).norm() == 0.0);  // |12> -> |11>
  CHECK((s2 * basis(3) - basis(2)).norm() == 0.0);  // |22> -> |21>
  CHECK(s1.cwiseAbs().sum() == 2.0);
  CHECK(s2.cwiseAbs().sum() == 2.0);
  CHECK((s1 * s1).norm() == 0.0);
  CHECK((s2 * s2).norm() == 0.0);
  CHECK((s1 * s2 - s2 * s1).norm() == 0.0);
  CHECK_THROWS_AS(lowering_operator(0), std::invalid_argument);
  CHECK_THROWS_AS(lowering_operator(3), std::invalid_argument);
}

TEST_CASE("Dicke transform is unitary and maps the collective states") {
  const Mat4 u = dicke_transform();
  CHECK((u * u.adjoint() - Mat4::Identity()).norm() < 1e-15);
  for (int i = 0; i < 4; ++i) {
    CHECK((u * dicke_state(i) - basis(i)).norm() < 1e-15);
  }
}

TEST_CASE("conditional Hamiltonian for undriven uncoupled atoms") {
  const SystemParams p(1.0, 0.0, 0.0, CouplingConstants{});
  const Mat4 h = conditional_hamiltonian(p);
  Mat4 expect = Mat4::Zero();
  expect.diagonal() << 0.0, Cplx(0, -0.5), Cplx(0, -0.5), Cplx(0, -1.0);
  CHECK((h - expect).norm() < 1e-15);
  // Diagonal in the Dicke basis too.
  const Mat4 u = dicke_transform();
  CHECK((u * h * u.adjoint() - expect).norm() < 1e-14);
}

TEST_CASE("undriven equal dipoles diagonalize in the Dicke basis") {
  SplitMix64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const double theta = kPi * rng.uniform_open();
    const double k0r = 0.2 + 5.0 * rng.uniform_open();
    const Cplx c = coupling_equal_dipoles(theta, k0r, 1.0);
    const SystemParams p(1.0, 0.0, 0.0, CouplingConstants{c, c});
    const Mat4 u = dicke_transform();
    const Mat4 hd = u * conditional_hamiltonian(p) * u.adjoint();

    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) CHECK(std::abs(hd(i, j)) < 1e-12);

    // Level shifts +-Im C / 2 and damping rates {0, A+ReC, A-ReC, 2A}.
    CHECK(std::abs(hd(kDickeG, kDickeG)) < 1e-12);
    CHECK(std::abs(hd(kDickeS, kDickeS) - Cplx(0.5 * c.imag(), -0.5 * (1.0 + c.real()))) < 1e-12);
    CHECK(std::abs(hd(kDickeA, kDickeA) - Cplx(-0.5 * c.imag(), -0.5 * (1.0 - c.real()))) < 1e-12);
    CHECK(std::abs(hd(kDickeE, kDickeE) - Cplx(0.0, -1.0)) < 1e-12);
  }
}

TEST_CASE("near-zone limit: subradiant damping closes, superradiant doubles") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.0, kPi / 2, 1e-3);
  const JumpChannels ch = jump_channels(p);
  CHECK(ch.rate_minus < 1e-3);
  CHECK(std::abs(ch.rate_plus - 2.0) < 1e-3);
}

TEST_CASE("damping part of H_cond is positive semidefinite") {
  SplitMix64 rng(22);
  for (int k = 0; k < 200; ++k) {
    const SystemParams p = random_equal_params(rng);
    const Mat4 h = conditional_hamiltonian(p);
    const Mat4 damping = Cplx(0, 1) * (h - h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4> es(damping);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("reset trace equals the two-channel weight sum for pure states") {
  SplitMix64 rng(23);
  for (int k = 0; k < 500; ++k) {
    const SystemParams p = random_general_params(rng);
    const Vec4 psi = testsup::random_pure_state(rng);
    const Mat4 rho = psi * psi.adjoint();
    const JumpChannels ch = jump_channels(p);
    const double via_channels = ch.rate_plus * (ch.r_plus * psi).squaredNorm() +
                                ch.rate_minus * (ch.r_minus * psi).squaredNorm();
    CHECK(std::abs(emission_rate(p, rho) - via_channels) < 1e-12);
  }
}

TEST_CASE("two channels reconstruct the reset operator") {
  SplitMix64 rng(24);
  for (int k = 0; k < 100; ++k) {
    const SystemParams p = random_general_params(rng);
    const Mat4 rho = testsup::random_hermitian(rng);
    const JumpChannels ch = jump_channels(p);
    const Mat4 via_channels =
        ch.rate_plus * (ch.r_plus * rho * ch.r_plus.adjoint()) +
        ch.rate_minus * (ch.r_minus * rho * ch.r_minus.adjoint());
    CHECK((via_channels - reset_apply(p, rho)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reset of the doubly excited state populates s and a") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.9, kPi / 2, 1.0);
  const double rc = p.coupling.c12.real();
  const Mat4 rho = basis(3) * basis(3).adjoint();
  const auto pops = dicke_populations(reset_apply(p, rho));
  CHECK(std::abs(pops[kDickeG]) < 1e-14);
  CHECK(std::abs(pops[kDickeS] - (1.0 + rc)) < 1e-14);
  CHECK(std::abs(pops[kDickeA] - (1.0 - rc)) < 1e-14);
  CHECK(std::abs(pops[kDickeE]) < 1e-14);
}

TEST_CASE("emission rate Dicke closed form for equal dipoles") {
  SplitMix64 rng(25);
  for (int k = 0; k < 200; ++k) {
    const SystemParams p = random_equal_params(rng);
    const Mat4 rho = testsup::random_density(rng);
    const auto pops = dicke_populations(rho);
    const double rc = p.coupling.c12.real();
    const double expect = (1.0 + rc) * pops[kDickeS] + (1.0 - rc) * pops[kDickeA] +
                          2.0 * pops[kDickeE];
    CHECK(std::abs(emission_rate(p, rho) - expect) < 1e-12);
    CHECK(emission_rate(p, rho) > -1e-12);
  }
}

TEST_CASE("jump channel structure") {
  SplitMix64 rng(26);
  for (int k = 0; k < 200; ++k) {
    const SystemParams p = random_general_params(rng);
    const JumpChannels ch = jump_channels(p);
    CHECK(std::abs(ch.rate_plus + ch.rate_minus - 2.0) < 1e-12);
    CHECK(ch.rate_minus >= 0.0);
    const Cplx csum = p.coupling.c12 + std::conj(p.coupling.c21);
    if (std::abs(csum) > 1e-12) {
      CHECK(std::abs(ch.phi - std::arg(csum)) < 1e-12);
    }
    // Three lowerings annihilate everything: at most two photons can be
    // emitted without re-excitation (R^2 itself maps |e> down to |g>).
    const Mat4 r2p = ch.r_plus * ch.r_plus;
    const Mat4 r2m = ch.r_minus * ch.r_minus;
    CHECK((r2p * ch.r_plus).norm() < 1e-15);
    CHECK((r2m * ch.r_minus).norm() < 1e-15);
    const Vec4 cascade = r2p * basis(3);
    CHECK(std::abs(std::abs(cascade(0)) - 1.0) < 1e-12);  // |<g|R+^2|e>| = 1
    CHECK(cascade.tail<3>().norm() < 1e-15);
  }
}

TEST_CASE("equal-dipole channel actions on the Dicke ladder") {
  const SystemParams p = SystemParams::equal_dipoles(1.0, 0.5, kPi / 2, 1.0);
  const JumpChannels ch = jump_channels(p);
  CHECK(std::abs(ch.phi) < 1e-12);  // C12 + conj(C21) = 2 Re C > 0 here
  CHECK((ch.r_plus * dicke_state(kDickeE) - dicke_state(kDickeS)).norm() < 1e-14);
  CHECK((ch.r_plus * dicke_state(kDickeS) - dicke_state(kDickeG)).norm() < 1e-14);
  CHECK((ch.r_minus * dicke_state(kDickeE) - dicke_state(kDickeA)).norm() < 1e-14);
  CHECK((ch.r_minus * dicke_state(kDickeS)).norm() < 1e-14);
  CHECK((ch.r_plus * dicke_state(kDickeA)).norm() < 1e-14);
  CHECK((ch.r_minus * dicke_state(kDickeA) + dicke_state(kDickeG)).norm() < 1e-14);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SystemParams(0.0, 0.0, 0.0, CouplingConstants{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(-1.0, 0.0, 0.0, CouplingConstants{}),
                  std::invalid_argument);
  const SystemParams unphysical(1.0, 0.0, 0.0,
                                CouplingConstants{Cplx(3.0, 0.0), Cplx(3.0, 0.0)});
  CHECK_THROWS_AS(jump_channels(unphysical), std::domain_error);
}
