#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "dicke/coupling.hpp"
#include "dicke/rng.hpp"
#include "support/test_support.hpp"

using dicke::AtomPair;
using dicke::CouplingConstants;
using dicke::DipoleGeometry;
using dicke::SplitMix64;
using std::complex;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kThetaSet[4] = {0.0, kPi / 8, kPi / 4, kPi / 2};
}  // namespace

TEST_CASE("perpendicular dipoles at k0r = 1") {
  // alpha = beta = 1 and the bracket collapses to 1, so C/A = (3/2) e^i;
  // reference digits evaluated independently at high precision.
  const complex<double> c = dicke::coupling_equal_dipoles(kPi / 2, 1.0, 1.0);
  CHECK(std::abs(c.real() - 0.810453458802209576) < 1e-14);
  CHECK(std::abs(c.imag() - 1.262206477211844763) < 1e-14);
}

TEST_CASE("parallel dipoles at k0r = 1") {
  // alpha = 0, beta = -2: C/A = -3 e^i (1 + i).
  const complex<double> c = dicke::coupling_equal_dipoles(0.0, 1.0, 1.0);
  CHECK(std::abs(c.real() - 0.903506036819270368) < 1e-14);
  CHECK(std::abs(c.imag() + 4.145319872028108667) < 1e-14);
}

TEST_CASE("scaling with the Einstein coefficient is linear") {
  const complex<double> c1 = dicke::coupling_equal_dipoles(0.7, 2.3, 1.0);
  const complex<double> c5 = dicke::coupling_equal_dipoles(0.7, 2.3, 5.0);
  CHECK(std::abs(c5 - 5.0 * c1) < 1e-12);
}

TEST_CASE("scalar form matches the vector form for realized geometries") {
  SplitMix64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double theta = kPi * rng.uniform_open();
    const double k0r = 0.05 + 20.0 * rng.uniform_open();
    const DipoleGeometry geom = dicke::equal_dipole_geometry(theta, k0r);
    const complex<double> vec_form = dicke::coupling_constant(geom, AtomPair::k12, 1.0);
    const complex<double> scalar_form = dicke::coupling_equal_dipoles(theta, k0r, 1.0);
    // |C| grows like 1/(k0r)^3 toward the near zone, so compare relatively.
    CHECK(std::abs(vec_form - scalar_form) < 1e-12 * (1.0 + std::abs(scalar_form)));
  }
}

TEST_CASE("real dipoles give identical C12 and C21") {
  SplitMix64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const DipoleGeometry geom(testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng),
                              0.01 + 30.0 * rng.uniform_open());
    const CouplingConstants c = dicke::coupling_for(geom, 1.0);
    CHECK(c.c12 == c.c21);
  }
}

TEST_CASE("collective decay rate A - |C12 + conj(C21)|/2 stays nonnegative") {
  SplitMix64 rng(13);
  for (int k = 0; k < 10000; ++k) {
    const DipoleGeometry geom(testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng),
                              1e-3 + 50.0 * rng.uniform_open());
    const CouplingConstants c = dicke::coupling_for(geom, 1.0);
    const double kappa = 0.5 * std::abs(c.c12 + std::conj(c.c21));
    CHECK(1.0 - kappa >= -1e-12);
  }
}

TEST_CASE("magnitude stays under the far-field envelope") {
  SplitMix64 rng(14);
  for (int k = 0; k < 2000; ++k) {
    const double xi = 1e-3 + 100.0 * rng.uniform_open();
    const DipoleGeometry geom(testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng),
                              testsup::random_unit_vec(rng), xi);
    const complex<double> c = dicke::coupling_constant(geom, AtomPair::k12, 1.0);
    const double envelope = 6.0 * (1.0 / xi + 1.0 / (xi * xi) + 1.0 / (xi * xi * xi));
    CHECK(std::abs(c) <= envelope * (1.0 + 1e-12));
  }
}

TEST_CASE("Re C approaches A at the smallest allowed distance") {
  for (double theta : kThetaSet) {
    const complex<double> c = dicke::coupling_equal_dipoles(theta, 1e-3, 1.0);
    CHECK(c.real() > 0.999);
    CHECK(c.real() < 1.001);
  }
}

TEST_CASE("near-zone Im C dwarfs its k0r = 1 value") {
  const double im_close = std::abs(dicke::coupling_equal_dipoles(kPi / 2, 0.1, 1.0).imag());
  const double im_far = std::abs(dicke::coupling_equal_dipoles(kPi / 2, 1.0, 1.0).imag());
  CHECK(im_close > 100.0 * im_far);
}

TEST_CASE("coupling dies off at k0r = 200") {
  for (double theta : kThetaSet) {
    CHECK(std::abs(dicke::coupling_equal_dipoles(theta, 200.0, 1.0)) < 0.02);
  }
}

TEST_CASE("input validation") {
  const std::array<double, 3> ez{0.0, 0.0, 1.0};
  const std::array<double, 3> bad{0.0, 0.0, 2.0};
  CHECK_THROWS_AS(DipoleGeometry(bad, ez, ez, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DipoleGeometry(ez, ez, ez, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(DipoleGeometry(ez, ez, ez, -1.0), std::invalid_argument);

  const DipoleGeometry too_close(ez, ez, ez, 1e-4);
  CHECK_THROWS_AS(dicke::coupling_constant(too_close, AtomPair::k12, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(dicke::coupling_equal_dipoles(0.3, 1e-4, 1.0), std::domain_error);
  CHECK_THROWS_AS(dicke::coupling_equal_dipoles(0.3, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(dicke::coupling_equal_dipoles(0.3, 1.0, -2.0), std::invalid_argument);
}
