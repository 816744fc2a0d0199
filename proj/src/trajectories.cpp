#include "dicke/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dicke/rng.hpp"

namespace dicke {

namespace {

// RK4 applied to a constant linear generator m over one step h is exactly the
// degree-4 Taylor polynomial of exp(h m); precomputing it turns a step into
// one matrix-vector product.
Mat4 rk4_step_matrix(const Mat4& m, double h) {
  const Mat4 hm = h * m;
  const Mat4 hm2 = hm * hm;
  return Mat4::Identity() + hm + 0.5 * hm2 + (1.0 / 6.0) * hm2 * hm +
         (1.0 / 24.0) * hm2 * hm2;
}

// Conditional state after `duration` starting from psi, with nsub equal RK4
// substeps; used by the bisection refinement, which always re-integrates from
// the bracket start instead of interpolating states.
Vec4 integrate_from(const Mat4& generator, const Vec4& psi, double duration,
                    int nsub) {
  if (duration <= 0.0) return psi;
  const Mat4 step = rk4_step_matrix(generator, duration / nsub);
  Vec4 out = psi;
  for (int k = 0; k < nsub; ++k) out = step * out;
  return out;
}

void require_normalized(const Vec4& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) {
    throw std::invalid_argument("state must be normalized");
  }
}

double resolve_step(const SystemParams& p, double dt) {
  return dt > 0.0 ? dt : default_step(p);
}

}  // namespace

ConditionalEvolution::ConditionalEvolution(const SystemParams& p, const Vec4& psi0,
                                           double dt)
    : generator_(Cplx(0.0, -1.0) * conditional_hamiltonian(p)),
      psi_(psi0),
      dt_(resolve_step(p, dt)) {
  step_ = rk4_step_matrix(generator_, dt_);
}

void ConditionalEvolution::advance(double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("duration must be >= 0");
  double remaining = duration;
  while (remaining > 0.0) {
    if (remaining >= dt_) {
      psi_ = step_ * psi_;
      remaining -= dt_;
    } else {
      psi_ = rk4_step_matrix(generator_, remaining) * psi_;
      remaining = 0.0;
    }
    if (!(psi_.squaredNorm() < 1e6)) {
      throw std::runtime_error("conditional RK4 propagation diverged; reduce dt");
    }
  }
  t_ += duration;
}

double no_photon_probability(const SystemParams& p, const Vec4& psi, double t,
                             double dt) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  require_normalized(psi);
  ConditionalEvolution evo(p, psi, dt);
  evo.advance(t);
  return evo.norm2();
}

double first_photon_density(const SystemParams& p, const Vec4& psi, double t,
                            double dt) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
  require_normalized(psi);
  ConditionalEvolution evo(p, psi, dt);
  evo.advance(t);
  const Vec4& cond = evo.state();
  return emission_rate(p, cond * cond.adjoint());
}

WaitingSample sample_waiting_time(const SystemParams& p, const Vec4& psi, double u,
                                  double horizon, double dt) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("u must lie in (0, 1)");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  require_normalized(psi);

  const double step = resolve_step(p, dt);
  const Mat4 generator = Cplx(0.0, -1.0) * conditional_hamiltonian(p);
  const Mat4 full_step = rk4_step_matrix(generator, step);
  const double tol = 1e-8 / p.a;

  Vec4 cur = psi;
  double t = 0.0;
  while (t < horizon) {
    const double h = std::min(step, horizon - t);
    const Vec4 nxt = (h == step) ? Vec4(full_step * cur)
                                 : integrate_from(generator, cur, h, 1);
    if (nxt.squaredNorm() <= u) {
      // Crossing inside [t, t+h]: bisect on fresh sub-integrations from the
      // bracket start.
      double lo = 0.0, hi = h;
      Vec4 at_hi = nxt;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const Vec4 at_mid = integrate_from(generator, cur, mid, 4);
        if (at_mid.squaredNorm() <= u) {
          hi = mid;
          at_hi = at_mid;
        } else {
          lo = mid;
        }
      }
      return {true, t + hi, at_hi};
    }
    cur = nxt;
    t += h;
  }
  return {false, horizon, cur};
}

JumpOutcome jump_sample(const SystemParams& p, const Vec4& psi_at_emission,
                        double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("v must lie in [0, 1]");
  const JumpChannels ch = jump_channels(p);
  const Vec4 plus = ch.r_plus * psi_at_emission;
  const Vec4 minus = ch.r_minus * psi_at_emission;
  const double w_plus = ch.rate_plus * plus.squaredNorm();
  const double w_minus = ch.rate_minus * minus.squaredNorm();
  const double total = w_plus + w_minus;
  if (!(total > 0.0)) {
    throw std::logic_error("jump requested from a state that cannot emit");
  }
  // <= keeps the all-weight-on-plus case away from normalizing a null vector.
  if (w_plus > 0.0 && v * total <= w_plus) {
    return {plus.normalized(), '+'};
  }
  return {minus.normalized(), '-'};
}

EmissionRecord simulate_trajectory(const SystemParams& p, double horizon,
                                   std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");

  const double warmup = 20.0 / p.a;
  const double t_total = warmup + horizon;
  const double dt = default_step(p);

  SplitMix64 rng(seed);
  Vec4 psi = Vec4::Zero();
  psi(0) = 1.0;  // |g>

  EmissionRecord rec;
  rec.horizon = horizon;
  rec.seed = seed;

  double t = 0.0;
  while (t < t_total) {
    const double u = rng.uniform_open();
    const WaitingSample w = sample_waiting_time(p, psi, u, t_total - t, dt);
    if (!w.emitted) break;
    t += w.time;
    const JumpOutcome jump = jump_sample(p, w.state, rng.uniform_open());
    psi = jump.state;
    if (t > warmup) {
      rec.times.push_back(t - warmup);
      rec.channel_tags.push_back(jump.channel);
    }
  }
  return rec;
}

TrajectoryEstimate g_traj_estimate(const std::vector<EmissionRecord>& records,
                                   double bin_width, double tau_max) {
  if (records.empty()) throw std::invalid_argument("no records given");
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin_width must be positive");
  const int n_bins = static_cast<int>(std::llround(tau_max / bin_width));
  if (n_bins < 1) throw std::invalid_argument("tau_max must cover at least one bin");
  const double window = n_bins * bin_width;

  // Per-block tallies for the bootstrap: emission count, trigger-eligible
  // duration, and pair counts keyed by the trigger's block.
  struct Block {
    double duration = 0.0;
    double trigger_duration = 0.0;
    double emissions = 0.0;
    std::vector<double> pairs;
  };
  std::vector<Block> blocks;
  const int blocks_per_record = static_cast<int>(
      std::max<std::size_t>(1, (20 + records.size() - 1) / records.size()));

  std::size_t n_total = 0;
  double t_total = 0.0;
  double t_eff_total = 0.0;
  std::vector<double> pair_counts(n_bins, 0.0);
  std::uint64_t boot_seed = 0x8f1bbcdcull;

  for (const EmissionRecord& rec : records) {
    if (!(rec.horizon > 0.0)) throw std::invalid_argument("record without horizon");
    const double t_eff = std::max(0.0, rec.horizon - window);
    n_total += rec.times.size();
    t_total += rec.horizon;
    t_eff_total += t_eff;
    boot_seed = derive_stream_seed(boot_seed, rec.seed);

    const double block_len = rec.horizon / blocks_per_record;
    const std::size_t first_block = blocks.size();
    for (int b = 0; b < blocks_per_record; ++b) {
      Block blk;
      blk.duration = block_len;
      const double b_lo = b * block_len;
      const double b_hi = (b + 1) * block_len;
      blk.trigger_duration = std::clamp(t_eff, b_lo, b_hi) - b_lo;
      blk.pairs.assign(n_bins, 0.0);
      blocks.push_back(std::move(blk));
    }

    const std::vector<double>& ts = rec.times;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const int b = std::min<int>(blocks_per_record - 1,
                                  static_cast<int>(ts[i] / block_len));
      Block& blk = blocks[first_block + b];
      blk.emissions += 1.0;
      if (ts[i] > t_eff) continue;
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        const double tau = ts[j] - ts[i];
        if (tau >= window) break;
        const int bin = std::min(n_bins - 1, static_cast<int>(tau / bin_width));
        pair_counts[bin] += 1.0;
        blk.pairs[bin] += 1.0;
      }
    }
  }

  if (n_total < 100) {
    throw std::runtime_error("insufficient statistics: fewer than 100 emissions");
  }
  if (!(t_eff_total > 0.0)) {
    throw std::invalid_argument("tau_max exceeds every record horizon");
  }

  const double rate = static_cast<double>(n_total) / t_total;
  TrajectoryEstimate est;
  est.mean_rate = rate;
  est.tau_bins.resize(n_bins);
  est.g_traj.resize(n_bins);
  est.std_error.assign(n_bins, 0.0);
  for (int k = 0; k < n_bins; ++k) {
    est.tau_bins[k] = (k + 0.5) * bin_width;
    est.g_traj[k] = pair_counts[k] / (t_eff_total * bin_width * rate * rate);
  }

  // Block bootstrap: resample whole blocks with replacement, recompute the
  // full normalized estimate each time (rate fluctuations included).
  constexpr int kReplicates = 200;
  const std::size_t n_blocks = blocks.size();
  SplitMix64 rng(boot_seed);
  std::vector<double> mean(n_bins, 0.0), m2(n_bins, 0.0);
  std::vector<double> g_rep(n_bins);
  int attempts = 0;
  for (int r = 0; r < kReplicates; ++r) {
    if (++attempts > 100 * kReplicates) {
      throw std::runtime_error("block bootstrap failed: resamples keep coming up empty");
    }
    double emissions = 0.0, duration = 0.0, trig = 0.0;
    std::vector<double> pairs(n_bins, 0.0);
    for (std::size_t d = 0; d < n_blocks; ++d) {
      const Block& blk = blocks[rng.next() % n_blocks];
      emissions += blk.emissions;
      duration += blk.duration;
      trig += blk.trigger_duration;
      for (int k = 0; k < n_bins; ++k) pairs[k] += blk.pairs[k];
    }
    if (!(emissions > 0.0) || !(trig > 0.0)) {
      --r;  // degenerate resample; with >= 100 emissions this is rare
      continue;
    }
    const double rep_rate = emissions / duration;
    for (int k = 0; k < n_bins; ++k) {
      g_rep[k] = pairs[k] / (trig * bin_width * rep_rate * rep_rate);
      const double delta = g_rep[k] - mean[k];
      mean[k] += delta / (r + 1);
      m2[k] += delta * (g_rep[k] - mean[k]);
    }
  }
  for (int k = 0; k < n_bins; ++k) {
    est.std_error[k] = std::sqrt(m2[k] / (kReplicates - 1));
  }
  return est;
}

void write_emission_record(std::ostream& os, const EmissionRecord& rec) {
  os << "# seed=" << rec.seed << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", rec.horizon);
  os << "# horizon=" << buf << "\n";
  for (double t : rec.times) {
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    os << buf << "\n";
  }
}

EmissionRecord read_emission_record(std::istream& is) {
  EmissionRecord rec;
  std::string line;
  bool have_seed = false, have_horizon = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# seed=", 0) == 0) {
      rec.seed = std::stoull(line.substr(7));
      have_seed = true;
    } else if (line.rfind("# horizon=", 0) == 0) {
      rec.horizon = std::stod(line.substr(10));
      have_horizon = true;
    } else if (line[0] == '#') {
      continue;
    } else {
      rec.times.push_back(std::stod(line));
    }
  }
  if (!have_seed || !have_horizon) {
    throw std::runtime_error("malformed emission record: missing header");
  }
  return rec;
}

}  // namespace dicke
