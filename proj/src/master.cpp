#include "dicke/master.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dicke {

namespace {

// Liouvillian assembly templated on the scalar so the stationary solve can
// run in extended precision: at strong near-zone coupling the kernel
// extraction is conditioned like |Im C|/(slowest rate), and double alone
// leaves errors near 1e-7 in g(0). Instantiated at double it is the matrix
// handed out by build_liouvillian, which the unit tests pin against the
// operator definitions in two_atom.cpp.
template <typename Real>
struct LiouvilleOps {
  using C = std::complex<Real>;
  using M4 = Eigen::Matrix<C, 4, 4>;
  using M16 = Eigen::Matrix<C, 16, 16>;

  // Standard Kronecker product: out(4i+k, 4j+l) = x(i,j) y(k,l).
  static M16 kron(const M4& x, const M4& y) {
    M16 out;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        out.template block<4, 4>(4 * i, 4 * j) = x(i, j) * y;
      }
    }
    return out;
  }

  static M4 lowering(int atom) {
    M4 s = M4::Zero();
    if (atom == 1) {
      s(0, 2) = Real(1);
      s(1, 3) = Real(1);
    } else {
      s(0, 1) = Real(1);
      s(2, 3) = Real(1);
    }
    return s;
  }

  static C widen(Cplx z) { return C(Real(z.real()), Real(z.imag())); }

  static M16 liouvillian(const SystemParams& p) {
    const Real a = Real(p.a);
    const C c12 = widen(p.coupling.c12);
    const C c21 = widen(p.coupling.c21);
    const C o1 = widen(p.omega1);
    const C o2 = widen(p.omega2);
    const M4 s1 = lowering(1);
    const M4 s2 = lowering(2);
    const M4 id = M4::Identity();

    M4 damping = a * (s1.adjoint() * s1 + s2.adjoint() * s2);
    damping += c12 * (s1.adjoint() * s2);
    damping += c21 * (s2.adjoint() * s1);
    M4 laser = Real(0.5) * (o1 * s1.adjoint() + std::conj(o1) * s1 +
                            o2 * s2.adjoint() + std::conj(o2) * s2);
    const M4 h = C(Real(0), Real(-0.5)) * damping + laser;  // 1/(2i) = -i/2

    const C w12 = Real(0.5) * (std::conj(c12) + c21);
    const C w21 = Real(0.5) * (c12 + std::conj(c21));

    // vec(H rho) = (I (x) H) vec, vec(rho H^+) = (conj(H) (x) I) vec; the
    // jump terms use vec(S_i rho S_j^+) = ((S_j^+)^T (x) S_i) vec, S_j real.
    M16 l = C(Real(0), Real(-1)) * kron(id, h) +
            C(Real(0), Real(1)) * kron(h.conjugate(), id);
    l += a * (kron(s1, s1) + kron(s2, s2));
    l += w12 * kron(s2, s1);
    l += w21 * kron(s1, s2);
    return l;
  }

  // Kernel vector of L, trace-normalized and hermitized. Throws when the
  // kernel is not one-dimensional.
  static M4 stationary(const SystemParams& p) {
    const M16 l = liouvillian(p);
    const Eigen::JacobiSVD<M16> svd(l, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Real smax = sv(0);
    int kernel_dim = 0;
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) < Real(1e-14) * smax) ++kernel_dim;
    }
    if (kernel_dim != 1) {
      throw std::runtime_error(
          "degenerate steady state: Liouvillian kernel is not one-dimensional");
    }

    M4 rho;
    for (int col = 0; col < 4; ++col) {
      for (int row = 0; row < 4; ++row) {
        rho(row, col) = svd.matrixV()(4 * col + row, 15);
      }
    }
    // The null vector carries an arbitrary overall phase; dividing by the
    // complex trace removes it exactly (the trace of the physical state is
    // real and of order one), after which hermitizing only shaves rounding.
    const C tr = rho.trace();
    if (!(std::abs(tr) > Real(1e-6))) {
      throw std::runtime_error("steady-state solve failed: traceless kernel vector");
    }
    rho /= tr;
    rho = Real(0.5) * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
  }

  static Real reset_trace(const SystemParams& p, const M4& rho) {
    const C w12 = Real(0.5) * (std::conj(widen(p.coupling.c12)) + widen(p.coupling.c21));
    const C w21 = Real(0.5) * (widen(p.coupling.c12) + std::conj(widen(p.coupling.c21)));
    const M4 s1 = lowering(1);
    const M4 s2 = lowering(2);
    M4 out = Real(p.a) * (s1 * rho * s1.adjoint() + s2 * rho * s2.adjoint());
    out += w12 * (s1 * rho * s2.adjoint());
    out += w21 * (s2 * rho * s1.adjoint());
    return out.trace().real();
  }
};

}  // namespace

Liouvillian build_liouvillian(const SystemParams& p) {
  return Liouvillian{LiouvilleOps<double>::liouvillian(p), p};
}

Mat4 apply_liouvillian(const Liouvillian& l, const Mat4& rho) {
  return unvec(l.matrix * vec(rho));
}

double default_step(const SystemParams& p) {
  const double rate_scale = p.a + std::abs(p.coupling.c12) + std::abs(p.coupling.c21) +
                            std::abs(p.omega1) + std::abs(p.omega2);
  return std::min(1e-3 / p.a, 0.5 / rate_scale);
}

Mat4 propagate(const Liouvillian& l, const Mat4& rho0, double t, double dt) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be >= 0");
  if (!(dt > 0.0)) throw std::invalid_argument("step size must be positive");
  if (t == 0.0) return rho0;

  const long n = static_cast<long>(std::ceil(t / dt - 1e-12));
  const double h = t / static_cast<double>(n);
  const Mat16& m = l.matrix;

  Vec16 y = vec(rho0);
  const double blowup = 1e12 * std::max(1.0, y.squaredNorm());
  for (long k = 0; k < n; ++k) {
    const Vec16 k1 = m * y;
    const Vec16 k2 = m * (y + (0.5 * h) * k1);
    const Vec16 k3 = m * (y + (0.5 * h) * k2);
    const Vec16 k4 = m * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y.squaredNorm() < blowup)) {
      std::ostringstream msg;
      msg << "RK4 propagation diverged at t=" << (k + 1) * h
          << "; retry with dt <= " << h / 4.0;
      throw std::runtime_error(msg.str());
    }
  }
  return unvec(y);
}

SteadyStateReport steady_state_numeric(const SystemParams& p) {
  using HP = LiouvilleOps<long double>;
  const HP::M4 rho_hp = HP::stationary(p);

  Mat4 rho;
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      rho(row, col) = Cplx(static_cast<double>(rho_hp(row, col).real()),
                           static_cast<double>(rho_hp(row, col).imag()));
    }
  }

  SteadyStateReport report;
  report.rho_ss = rho;
  const Liouvillian l = build_liouvillian(p);
  report.residual = (l.matrix * vec(rho)).norm();
  const double scale = std::max(p.a, l.matrix.cwiseAbs().maxCoeff());
  if (!(report.residual < 1e-9 * scale)) {
    throw std::runtime_error("steady-state solve failed the residual check");
  }
  // The stationary emission rate inherits the extended-precision state; in
  // the weak-drive corners it is the small denominator of g(0).
  report.i_ss = static_cast<double>(HP::reset_trace(p, rho_hp));
  report.dicke_diagonals = dicke_populations(rho);
  return report;
}

SteadyStateDiagonals steady_state_analytic(double a, double omega, Cplx c) {
  const double a2 = a * a;
  const double o2 = omega * omega;
  const double rc = c.real();
  const double ic = c.imag();
  const double common = a2 * rc * (2.0 * a + rc) + a2 * ic * ic;

  SteadyStateDiagonals d;
  d.norm = (a2 + 2.0 * o2) * (a2 + 2.0 * o2) + common;
  d.gg = ((a2 + o2) * (a2 + o2) + common) / d.norm;
  d.ss = o2 * (2.0 * a2 + o2) / d.norm;
  d.aa = o2 * o2 / d.norm;
  d.ee = d.aa;
  return d;
}

double i_ss_analytic(double a, double omega, Cplx c) {
  const SteadyStateDiagonals d = steady_state_analytic(a, omega, c);
  return 2.0 * a * omega * omega * (a * a + 2.0 * omega * omega + a * c.real()) /
         d.norm;
}

std::array<double, 4> reset_diagonals_analytic(double a, double omega, Cplx c) {
  const double i_ss = i_ss_analytic(a, omega, c);
  if (!(i_ss > 0.0)) {
    throw std::domain_error("steady-state emission rate vanishes; reset undefined");
  }
  const SteadyStateDiagonals d = steady_state_analytic(a, omega, c);
  const double rc = c.real();
  return {(a + rc) * d.ss + (a - rc) * d.aa, (a + rc) * d.ee, (a - rc) * d.ee, 0.0};
}

double i0_after_reset_analytic(double a, double omega, Cplx c) {
  const double i_ss = i_ss_analytic(a, omega, c);
  if (!(i_ss > 0.0)) {
    throw std::domain_error("steady-state emission rate vanishes; reset undefined");
  }
  const SteadyStateDiagonals d = steady_state_analytic(a, omega, c);
  const double rc = c.real();
  return 2.0 * (a * a + rc * rc) * d.ee / i_ss;
}

double g0_analytic(double a, double omega, Cplx c) {
  const double a2 = a * a;
  const double rc = c.real();
  const double ic = c.imag();
  const double o2 = omega * omega;
  const double denom = 2.0 * o2 + a2 + a * rc;
  return (a2 + rc * rc) / (2.0 * a2) *
         (1.0 + (a2 * ic * ic - 4.0 * o2 * a * rc) / (denom * denom));
}

std::optional<double> g0_unity_crossing(double a, double omega, double theta,
                                        double k0r_min, double k0r_max,
                                        int grid_points) {
  if (!(k0r_min >= kMinK0r) || !(k0r_max > k0r_min) || grid_points < 2) {
    throw std::invalid_argument("invalid crossing-scan range");
  }
  auto excess = [&](double k0r) {
    return g0_analytic(a, omega, coupling_equal_dipoles(theta, k0r, a)) - 1.0;
  };

  const double dx = (k0r_max - k0r_min) / (grid_points - 1);
  double x_prev = k0r_min;
  double f_prev = excess(x_prev);
  for (int i = 1; i < grid_points; ++i) {
    const double x = k0r_min + i * dx;
    const double f = excess(x);
    if (f_prev == 0.0) return x_prev;
    if (f_prev * f < 0.0) {
      double lo = x_prev, hi = x;
      double f_lo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = excess(mid);
        if (f_lo * f_mid <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          f_lo = f_mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    x_prev = x;
    f_prev = f;
  }
  if (f_prev == 0.0) return x_prev;
  return std::nullopt;
}

}  // namespace dicke
