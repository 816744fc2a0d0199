#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dicke/master.hpp"

namespace dicke {

// One stochastic trajectory: emission times (strictly increasing, in
// [0, horizon]) with the collective channel ('+' or '-') of each photon.
struct EmissionRecord {
  std::vector<double> times;
  std::vector<char> channel_tags;
  double horizon = 0.0;
  std::uint64_t seed = 0;
};

struct TrajectoryEstimate {
  std::vector<double> tau_bins;   // bin centers
  std::vector<double> g_traj;     // histogram estimate of g(tau)
  std::vector<double> std_error;  // block-bootstrap standard error per bin
  double mean_rate = 0.0;         // total emissions / total recorded time
};

struct WaitingSample {
  bool emitted = false;
  double time = 0.0;  // emission time, or the horizon when !emitted
  Vec4 state;         // conditional (non-normalized) state at `time`
};

struct JumpOutcome {
  Vec4 state;          // normalized post-jump state
  char channel = '+';  // '+' or '-'
};

// Conditional (no-photon) evolution |psi(t)> = exp(-i H_cond t) |psi(0)>,
// integrated by fixed-step RK4. The one-step transfer matrix is cached, so
// advancing by whole steps costs one 4x4 matrix-vector product.
class ConditionalEvolution {
 public:
  // dt <= 0 selects default_step(p).
  ConditionalEvolution(const SystemParams& p, const Vec4& psi0, double dt = -1.0);

  void advance(double duration);  // subdivided into steps no longer than dt
  const Vec4& state() const { return psi_; }
  double time() const { return t_; }
  double norm2() const { return psi_.squaredNorm(); }
  double step_size() const { return dt_; }

 private:
  Mat4 generator_;  // -i H_cond
  Mat4 step_;       // cached RK4 transfer matrix for one full dt
  Vec4 psi_;
  double dt_;
  double t_ = 0.0;
};

// P0(t) = || exp(-i H_cond t) psi ||^2, the probability of no emission in
// [0, t] given the normalized initial state psi.
double no_photon_probability(const SystemParams& p, const Vec4& psi, double t,
                             double dt = -1.0);

// w1(t) = -dP0/dt, evaluated through the identity w1 = tr R(|pt><pt|) with
// |pt> the conditional state at t.
double first_photon_density(const SystemParams& p, const Vec4& psi, double t,
                            double dt = -1.0);

// Inverts P0(t) = u by bracketing on the integration grid and bisecting to
// |t error| < 1e-8/A. u must lie in (0, 1); psi must be normalized.
WaitingSample sample_waiting_time(const SystemParams& p, const Vec4& psi, double u,
                                  double horizon, double dt = -1.0);

// Picks channel + with probability w+/(w+ + w-), where
// w+- = rate+- ||R+- psi||^2, and returns the normalized post-jump state.
// Throws std::logic_error if psi cannot emit (both weights zero).
JumpOutcome jump_sample(const SystemParams& p, const Vec4& psi_at_emission, double v);

// Unraveled trajectory from |g>, with a 20/A warm-up segment discarded before
// the recording window; recorded times are measured from the window start.
EmissionRecord simulate_trajectory(const SystemParams& p, double horizon,
                                   std::uint64_t seed);

// Histogram estimator of g(tau) from one or more records: all ordered pairs
// within tau_max of a trigger photon, triggers restricted to
// t <= horizon - tau_max, normalized by the squared mean rate. Standard
// errors come from a per-segment block bootstrap (about 20 blocks, 200
// replicates, deterministic reseeding from the record seeds). Throws
// std::runtime_error when fewer than 100 emissions are available.
TrajectoryEstimate g_traj_estimate(const std::vector<EmissionRecord>& records,
                                   double bin_width, double tau_max);

// Text format: "# seed=<u64>", "# horizon=<float>", then one emission time
// per line (units 1/A, 17 significant digits). Channel tags are an in-memory
// annotation and are not part of the file format.
void write_emission_record(std::ostream& os, const EmissionRecord& rec);
EmissionRecord read_emission_record(std::istream& is);

}  // namespace dicke
