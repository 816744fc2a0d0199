#pragma once

#include <array>
#include <complex>

namespace dicke {

// Below k0r = 1e-3 the 1/(k0 r)^3 near-zone term dominates by six orders of
// magnitude and the two-level, rotating-wave description is no longer
// trustworthy; coupling evaluation rejects such distances.
inline constexpr double kMinK0r = 1e-3;

// Relative placement and orientation of the two dipoles. d1_hat and d2_hat
// are the (real) unit dipole moments, r_hat the unit vector along the
// interatomic axis, k0r the dimensionless distance k0 * r.
struct DipoleGeometry {
  std::array<double, 3> d1_hat;
  std::array<double, 3> d2_hat;
  std::array<double, 3> r_hat;
  double k0r;

  // Throws std::invalid_argument if any vector is not unit length (1e-12)
  // or k0r <= 0. The kMinK0r cutoff is enforced where couplings are
  // evaluated, so a geometry object itself can describe any k0r > 0.
  DipoleGeometry(const std::array<double, 3>& d1, const std::array<double, 3>& d2,
                 const std::array<double, 3>& r, double k0r_);
};

enum class AtomPair { k12, k21 };

struct CouplingConstants {
  std::complex<double> c12{0.0, 0.0};
  std::complex<double> c21{0.0, 0.0};
};

// Dipole-dipole coupling constant C_ij in units where the Einstein
// coefficient of each atom is `a`:
//
//   C_ij = (3 a / 2) e^{i xi} [ (1/(i xi)) alpha + (1/xi^2 - 1/(i xi^3)) beta ],
//
// with xi = k0r, alpha = d_i.d_j - (d_i.r)(r.d_j), beta = d_i.d_j - 3 (d_i.r)(r.d_j).
std::complex<double> coupling_constant(const DipoleGeometry& geom, AtomPair pair,
                                       double a);

// Both orders at once.
CouplingConstants coupling_for(const DipoleGeometry& geom, double a);

// Equal parallel dipoles at angle theta to the interatomic axis:
// alpha = sin^2(theta), beta = 1 - 3 cos^2(theta), and C12 = C21.
std::complex<double> coupling_equal_dipoles(double theta, double k0r, double a);

// A geometry realizing the equal-dipole configuration (d1 = d2 at angle theta
// to r_hat); used to cross-check the scalar form against the vector form.
DipoleGeometry equal_dipole_geometry(double theta, double k0r);

}  // namespace dicke
