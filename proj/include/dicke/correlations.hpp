#pragma once

#include <vector>

#include "dicke/master.hpp"

namespace dicke {

struct CorrelationCurve {
  std::vector<double> tau_grid;
  std::vector<double> g_values;
  double i_ss = 0.0;
  SystemParams params;
};

// Normalized second-order correlation via the quantum regression route:
// reset the steady state, normalize, propagate with the full Liouvillian,
// read the emission rate, divide by I_ss. Throws std::domain_error when
// I_ss vanishes (no steady-state emission, g undefined).
std::vector<double> g_at_times(const SystemParams& p, const std::vector<double>& taus);

// g(tau) on a uniform grid of n_points over [0, tau_max] (endpoints included).
CorrelationCurve g_tau(const SystemParams& p, double tau_max, int n_points);

}  // namespace dicke
