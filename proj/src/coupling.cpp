#include "dicke/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

namespace {

double dot(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

void require_unit(const std::array<double, 3>& v, const char* name) {
  const double n2 = dot(v, v);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(name) + " must be a unit vector");
  }
}

void require_distance(double k0r) {
  if (!(k0r > 0.0)) {
    throw std::invalid_argument("k0r must be positive");
  }
  if (k0r < kMinK0r) {
    throw std::domain_error("k0r below validated range (minimum 1e-3)");
  }
}

// Shared kernel: C = (3a/2) e^{i xi} [ alpha / (i xi) + beta (1/xi^2 - 1/(i xi^3)) ].
// 1/i = -i, so alpha/(i xi) = -i alpha/xi and -1/(i xi^3) = +i/xi^3.
std::complex<double> coupling_kernel(double alpha, double beta, double xi, double a) {
  const std::complex<double> phase = std::polar(1.0, xi);
  const std::complex<double> bracket(beta / (xi * xi),
                                     -alpha / xi + beta / (xi * xi * xi));
  return 1.5 * a * phase * bracket;
}

}  // namespace

DipoleGeometry::DipoleGeometry(const std::array<double, 3>& d1,
                               const std::array<double, 3>& d2,
                               const std::array<double, 3>& r, double k0r_)
    : d1_hat(d1), d2_hat(d2), r_hat(r), k0r(k0r_) {
  require_unit(d1_hat, "d1_hat");
  require_unit(d2_hat, "d2_hat");
  require_unit(r_hat, "r_hat");
  if (!(k0r > 0.0)) {
    throw std::invalid_argument("k0r must be positive");
  }
}

std::complex<double> coupling_constant(const DipoleGeometry& geom, AtomPair pair,
                                       double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("Einstein coefficient must be positive");
  }
  require_distance(geom.k0r);
  const std::array<double, 3>& di = (pair == AtomPair::k12) ? geom.d1_hat : geom.d2_hat;
  const std::array<double, 3>& dj = (pair == AtomPair::k12) ? geom.d2_hat : geom.d1_hat;
  const double dd = dot(di, dj);
  const double proj = dot(di, geom.r_hat) * dot(geom.r_hat, dj);
  const double alpha = dd - proj;
  const double beta = dd - 3.0 * proj;
  return coupling_kernel(alpha, beta, geom.k0r, a);
}

CouplingConstants coupling_for(const DipoleGeometry& geom, double a) {
  return {coupling_constant(geom, AtomPair::k12, a),
          coupling_constant(geom, AtomPair::k21, a)};
}

std::complex<double> coupling_equal_dipoles(double theta, double k0r, double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("Einstein coefficient must be positive");
  }
  require_distance(k0r);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double alpha = s * s;
  const double beta = 1.0 - 3.0 * c * c;
  return coupling_kernel(alpha, beta, k0r, a);
}

DipoleGeometry equal_dipole_geometry(double theta, double k0r) {
  const std::array<double, 3> r_hat{0.0, 0.0, 1.0};
  const std::array<double, 3> d{std::sin(theta), 0.0, std::cos(theta)};
  return DipoleGeometry(d, d, r_hat, k0r);
}

}  // namespace dicke
