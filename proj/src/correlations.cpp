#include "dicke/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

void rk4_advance(const Mat16& m, Vec16& y, double duration, double dt) {
  if (duration <= 0.0) return;
  const long n = static_cast<long>(std::ceil(duration / dt - 1e-12));
  const double h = duration / static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    const Vec16 k1 = m * y;
    const Vec16 k2 = m * (y + (0.5 * h) * k1);
    const Vec16 k3 = m * (y + (0.5 * h) * k2);
    const Vec16 k4 = m * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

std::vector<double> regression_curve(const SystemParams& p,
                                     const SteadyStateReport& ss,
                                     const std::vector<double>& taus) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] >= 0.0) || (i > 0 && taus[i] < taus[i - 1])) {
      throw std::invalid_argument("tau grid must be nonnegative and nondecreasing");
    }
  }
  if (!(ss.i_ss > 1e-14 * p.a)) {
    throw std::domain_error(
        "steady-state emission rate vanishes; correlation undefined");
  }

  // Quantum regression: evolve the normalized reset state and read the rate.
  // tr reset_apply(rho_ss) = i_ss, so dividing by i_ss normalizes the trace.
  const Liouvillian l = build_liouvillian(p);
  const double dt = default_step(p);
  Vec16 y = vec(Mat4(reset_apply(p, ss.rho_ss) / ss.i_ss));

  std::vector<double> g(taus.size());
  double t = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    rk4_advance(l.matrix, y, taus[i] - t, dt);
    t = taus[i];
    g[i] = emission_rate(p, unvec(y)) / ss.i_ss;
  }
  return g;
}

}  // namespace

std::vector<double> g_at_times(const SystemParams& p, const std::vector<double>& taus) {
  return regression_curve(p, steady_state_numeric(p), taus);
}

CorrelationCurve g_tau(const SystemParams& p, double tau_max, int n_points) {
  if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
  if (n_points < 2) throw std::invalid_argument("need at least two grid points");

  CorrelationCurve curve{std::vector<double>(n_points), {}, 0.0, p};
  for (int i = 0; i < n_points; ++i) {
    curve.tau_grid[i] = tau_max * static_cast<double>(i) / (n_points - 1);
  }
  const SteadyStateReport ss = steady_state_numeric(p);
  curve.g_values = regression_curve(p, ss, curve.tau_grid);
  curve.i_ss = ss.i_ss;
  return curve;
}

}  // namespace dicke
