// dicke-duo: command-line front end over the two-atom resonance-fluorescence
// library. Subcommands: coupling, g0-scan, gtau, trajectory. All numeric
// output is CSV with a canonical-parameter comment line; exit codes are
// 0 success, 1 usage error, 2 numeric/consistency failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dicke/correlations.hpp"
#include "dicke/rng.hpp"
#include "dicke/trajectories.hpp"
#include "dicke/version.hpp"

namespace {

using nlohmann::json;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{1, msg}; }
[[noreturn]] void numeric_error(const std::string& msg) { throw CliError{2, msg}; }

std::string fmt_g(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
  return buf;
}

std::string fmt_list(const std::vector<double>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += fmt_g(vs[i], 17);
  }
  return s;
}

struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 0;

  std::vector<double> grid() const {
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) {
      v[i] = (steps == 1) ? min : min + (max - min) * i / (steps - 1);
    }
    return v;
  }

  std::string canonical() const {
    return fmt_g(min, 17) + ":" + fmt_g(max, 17) + ":" + std::to_string(steps);
  }
};

Range parse_range(const std::string& text) {
  Range r;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.min, &r.max, &r.steps,
                  &trailing) != 3) {
    usage_error("range must be min:max:steps, got '" + text + "'");
  }
  if (r.steps < 1) usage_error("range needs at least one step: '" + text + "'");
  if (r.steps == 1 && r.min != r.max) {
    usage_error("single-step range must have min == max: '" + text + "'");
  }
  if (r.max < r.min) usage_error("range max below min: '" + text + "'");
  return r;
}

void check_k0r_values(const std::vector<double>& grid) {
  for (double v : grid) {
    if (!(v >= dicke::kMinK0r)) {
      usage_error("k0r values must be >= 1e-3 (got " + fmt_g(v, 17) + ")");
    }
  }
}

// Flat JSON config: same keys as the long flags; command-line flags win.
class Config {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) usage_error("cannot read config file: " + path);
    try {
      in >> data_;
    } catch (const json::exception& e) {
      usage_error("config is not valid JSON: " + std::string(e.what()));
    }
    if (!data_.is_object()) usage_error("config must be a flat JSON object");
    loaded_ = true;
  }

  bool loaded() const { return loaded_; }

  void merge_double(const CLI::Option* opt, const char* key, double& target) {
    if (!take(opt, key)) return;
    if (!data_[key].is_number()) usage_error(bad_type(key, "a number"));
    target = data_[key].get<double>();
  }

  void merge_int(const CLI::Option* opt, const char* key, int& target) {
    if (!take(opt, key)) return;
    if (!data_[key].is_number_integer()) usage_error(bad_type(key, "an integer"));
    target = data_[key].get<int>();
  }

  void merge_seed(const CLI::Option* opt, const char* key,
                  std::optional<std::uint64_t>& target) {
    if (!take(opt, key)) return;
    if (!data_[key].is_number_unsigned()) {
      usage_error(bad_type(key, "an unsigned integer"));
    }
    target = data_[key].get<std::uint64_t>();
  }

  void merge_list(const CLI::Option* opt, const char* key,
                  std::vector<double>& target) {
    if (!take(opt, key)) return;
    if (!data_[key].is_array()) usage_error(bad_type(key, "an array of numbers"));
    target = data_[key].get<std::vector<double>>();
  }

  void merge_string(const CLI::Option* opt, const char* key, std::string& target) {
    if (!take(opt, key)) return;
    if (!data_[key].is_string()) usage_error(bad_type(key, "a string"));
    target = data_[key].get<std::string>();
  }

  void reject_unknown() const {
    for (const auto& item : data_.items()) {
      if (std::find(used_.begin(), used_.end(), item.key()) == used_.end()) {
        usage_error("config key '" + item.key() + "' is not a parameter of this command");
      }
    }
  }

 private:
  bool take(const CLI::Option* opt, const char* key) {
    if (!loaded_) return false;
    used_.push_back(key);
    return opt->count() == 0 && data_.contains(key);
  }

  static std::string bad_type(const char* key, const char* want) {
    return std::string("config key '") + key + "' must be " + want;
  }

  json data_;
  bool loaded_ = false;
  mutable std::vector<std::string> used_;
};

std::string canonical_line(const std::string& cmd,
                           std::vector<std::pair<std::string, std::string>> kv) {
  std::sort(kv.begin(), kv.end());
  std::string s = cmd;
  for (const auto& [k, v] : kv) {
    s += " --" + k + " " + v;
  }
  return s;
}

std::ofstream open_output(const std::string& path, const std::string& canon) {
  std::ofstream out(path, std::ios::binary);
  if (!out) usage_error("cannot open output file: " + path);
  out << "# dicke-duo " << dicke::kVersion << " params: " << canon << "\n";
  return out;
}

// ---------------------------------------------------------------------------

struct CouplingCmd {
  std::vector<double> theta;
  std::string k0r_text;
  double a = 1.0;
  std::string out;
  std::string config_path;
  CLI::Option *theta_opt, *k0r_opt, *a_opt, *out_opt;

  int run() {
    Config cfg;
    if (!config_path.empty()) cfg.load(config_path);
    cfg.merge_list(theta_opt, "theta", theta);
    cfg.merge_string(k0r_opt, "k0r", k0r_text);
    cfg.merge_double(a_opt, "A", a);
    cfg.merge_string(out_opt, "out", out);
    cfg.reject_unknown();

    if (theta.empty()) usage_error("--theta is required");
    if (k0r_text.empty()) usage_error("--k0r is required");
    if (out.empty()) usage_error("--out is required");
    if (!(a > 0.0)) usage_error("--A must be positive");
    const Range k0r = parse_range(k0r_text);
    const std::vector<double> grid = k0r.grid();
    check_k0r_values(grid);

    const std::string canon = canonical_line(
        "coupling",
        {{"A", fmt_g(a, 17)}, {"k0r", k0r.canonical()}, {"theta", fmt_list(theta)}});
    std::ofstream os = open_output(out, canon);
    os << "k0r,theta,re_c_over_A,im_c_over_A\n";
    for (double th : theta) {
      for (double xi : grid) {
        const dicke::Cplx c = dicke::coupling_equal_dipoles(th, xi, a);
        os << fmt_g(xi, 12) << "," << fmt_g(th, 12) << ","
           << fmt_g(c.real() / a, 12) << "," << fmt_g(c.imag() / a, 12) << "\n";
      }
    }
    return 0;
  }
};

struct G0ScanCmd {
  std::vector<double> omega;
  std::vector<double> theta;
  std::string k0r_text;
  std::string out;
  std::string config_path;
  CLI::Option *omega_opt, *theta_opt, *k0r_opt, *out_opt;

  int run() {
    Config cfg;
    if (!config_path.empty()) cfg.load(config_path);
    cfg.merge_list(omega_opt, "omega", omega);
    cfg.merge_list(theta_opt, "theta", theta);
    cfg.merge_string(k0r_opt, "k0r", k0r_text);
    cfg.merge_string(out_opt, "out", out);
    cfg.reject_unknown();

    if (omega.empty()) usage_error("--omega is required");
    if (theta.empty()) usage_error("--theta is required");
    if (k0r_text.empty()) usage_error("--k0r is required");
    if (out.empty()) usage_error("--out is required");
    for (double w : omega) {
      if (!(w > 0.0)) usage_error("--omega values must be positive");
    }
    const Range k0r = parse_range(k0r_text);
    const std::vector<double> grid = k0r.grid();
    check_k0r_values(grid);

    const std::string canon = canonical_line("g0-scan", {{"k0r", k0r.canonical()},
                                                         {"omega", fmt_list(omega)},
                                                         {"theta", fmt_list(theta)}});
    std::ofstream os = open_output(out, canon);
    os << "k0r,theta,omega_over_A,g0\n";
    for (double w : omega) {
      for (double th : theta) {
        for (double xi : grid) {
          const double g0 =
              dicke::g0_analytic(1.0, w, dicke::coupling_equal_dipoles(th, xi, 1.0));
          os << fmt_g(xi, 12) << "," << fmt_g(th, 12) << "," << fmt_g(w, 12) << ","
             << fmt_g(g0, 12) << "\n";
        }
        if (k0r.steps >= 2) {
          const auto crossing =
              dicke::g0_unity_crossing(1.0, w, th, k0r.min, k0r.max, k0r.steps);
          std::cout << "g0=1 crossing: omega=" << fmt_g(w, 12)
                    << " theta=" << fmt_g(th, 12);
          if (crossing) {
            std::cout << " k0r=" << fmt_g(*crossing, 12) << "\n";
          } else {
            std::cout << " none\n";
          }
        } else {
          std::cout << "g0=1 crossing: omega=" << fmt_g(w, 12)
                    << " theta=" << fmt_g(th, 12) << " none (single-point grid)\n";
        }
      }
    }
    return 0;
  }
};

struct GtauCmd {
  double omega = NAN, theta = NAN, k0r = NAN, tau_max = NAN;
  int points = 0;
  std::string out;
  std::string config_path;
  CLI::Option *omega_opt, *theta_opt, *k0r_opt, *tau_opt, *points_opt, *out_opt;

  int run() {
    Config cfg;
    if (!config_path.empty()) cfg.load(config_path);
    cfg.merge_double(omega_opt, "omega", omega);
    cfg.merge_double(theta_opt, "theta", theta);
    cfg.merge_double(k0r_opt, "k0r", k0r);
    cfg.merge_double(tau_opt, "tau-max", tau_max);
    cfg.merge_int(points_opt, "points", points);
    cfg.merge_string(out_opt, "out", out);
    cfg.reject_unknown();

    if (std::isnan(omega)) usage_error("--omega is required");
    if (std::isnan(theta)) usage_error("--theta is required");
    if (std::isnan(k0r)) usage_error("--k0r is required");
    if (std::isnan(tau_max)) usage_error("--tau-max is required");
    if (points == 0) usage_error("--points is required");
    if (out.empty()) usage_error("--out is required");
    if (!(omega > 0.0)) usage_error("--omega must be positive (correlation undefined)");
    if (!(k0r >= dicke::kMinK0r)) usage_error("--k0r must be >= 1e-3");
    if (!(tau_max > 0.0)) usage_error("--tau-max must be positive");
    if (points < 2) usage_error("--points must be at least 2");

    const std::string canon = canonical_line("gtau", {{"k0r", fmt_g(k0r, 17)},
                                                      {"omega", fmt_g(omega, 17)},
                                                      {"points", std::to_string(points)},
                                                      {"tau-max", fmt_g(tau_max, 17)},
                                                      {"theta", fmt_g(theta, 17)}});
    dicke::CorrelationCurve curve;
    try {
      const dicke::SystemParams p =
          dicke::SystemParams::equal_dipoles(1.0, omega, theta, k0r);
      curve = dicke::g_tau(p, tau_max, points);
    } catch (const std::exception& e) {
      numeric_error(e.what());
    }
    std::ofstream os = open_output(out, canon);
    os << "tau_A,g_tau\n";
    for (std::size_t i = 0; i < curve.tau_grid.size(); ++i) {
      os << fmt_g(curve.tau_grid[i], 12) << "," << fmt_g(curve.g_values[i], 12) << "\n";
    }
    return 0;
  }
};

struct TrajectoryCmd {
  double omega = NAN, theta = NAN, k0r = NAN, horizon = NAN, bin = NAN, tau_max = NAN;
  std::optional<std::uint64_t> seed;
  int ensemble = 1;
  std::string out;
  std::string config_path;
  CLI::Option *omega_opt, *theta_opt, *k0r_opt, *horizon_opt, *seed_opt,
      *ensemble_opt, *bin_opt, *tau_opt, *out_opt;

  int run() {
    Config cfg;
    if (!config_path.empty()) cfg.load(config_path);
    cfg.merge_double(omega_opt, "omega", omega);
    cfg.merge_double(theta_opt, "theta", theta);
    cfg.merge_double(k0r_opt, "k0r", k0r);
    cfg.merge_double(horizon_opt, "horizon", horizon);
    cfg.merge_seed(seed_opt, "seed", seed);
    cfg.merge_int(ensemble_opt, "ensemble", ensemble);
    cfg.merge_double(bin_opt, "bin", bin);
    cfg.merge_double(tau_opt, "tau-max", tau_max);
    cfg.merge_string(out_opt, "out", out);
    cfg.reject_unknown();

    if (std::isnan(omega)) usage_error("--omega is required");
    if (std::isnan(theta)) usage_error("--theta is required");
    if (std::isnan(k0r)) usage_error("--k0r is required");
    if (std::isnan(horizon)) usage_error("--horizon is required");
    if (!seed) usage_error("--seed is required");
    if (std::isnan(bin)) usage_error("--bin is required");
    if (std::isnan(tau_max)) usage_error("--tau-max is required");
    if (out.empty()) usage_error("--out is required");
    if (!(omega > 0.0)) usage_error("--omega must be positive");
    if (!(k0r >= dicke::kMinK0r)) usage_error("--k0r must be >= 1e-3");
    if (!(horizon >= 100.0)) usage_error("--horizon must be at least 100 (units 1/A)");
    if (!(bin > 0.0)) usage_error("--bin must be positive");
    if (!(tau_max > bin / 2.0)) usage_error("--tau-max must cover at least one bin");
    if (ensemble < 1) usage_error("--ensemble must be at least 1");

    const std::string canon = canonical_line(
        "trajectory",
        {{"bin", fmt_g(bin, 17)},
         {"ensemble", std::to_string(ensemble)},
         {"horizon", fmt_g(horizon, 17)},
         {"k0r", fmt_g(k0r, 17)},
         {"omega", fmt_g(omega, 17)},
         {"seed", std::to_string(*seed)},
         {"tau-max", fmt_g(tau_max, 17)},
         {"theta", fmt_g(theta, 17)}});

    try {
      const dicke::SystemParams p =
          dicke::SystemParams::equal_dipoles(1.0, omega, theta, k0r);

      // Ensemble members run concurrently; per-member seeds are derived from
      // the master seed, so the records are independent of scheduling.
      std::vector<std::future<dicke::EmissionRecord>> futures;
      futures.reserve(ensemble);
      for (int k = 0; k < ensemble; ++k) {
        const std::uint64_t member_seed = dicke::derive_stream_seed(*seed, k);
        futures.push_back(std::async(std::launch::async, [p, member_seed, this] {
          return dicke::simulate_trajectory(p, horizon, member_seed);
        }));
      }
      std::vector<dicke::EmissionRecord> records;
      records.reserve(ensemble);
      for (auto& f : futures) records.push_back(f.get());

      const std::size_t slash = out.find_last_of('/');
      const std::size_t dot = out.find_last_of('.');
      const bool has_ext = dot != std::string::npos &&
                           (slash == std::string::npos || dot > slash);
      const std::string stem = has_ext ? out.substr(0, dot) : out;
      for (int k = 0; k < ensemble; ++k) {
        const std::string rec_path = stem + ".rec" + std::to_string(k) + ".txt";
        std::ofstream ros(rec_path, std::ios::binary);
        if (!ros) usage_error("cannot open record file: " + rec_path);
        dicke::write_emission_record(ros, records[k]);
      }

      dicke::TrajectoryEstimate est;
      try {
        est = dicke::g_traj_estimate(records, bin, tau_max);
      } catch (const std::runtime_error& e) {
        numeric_error(std::string("trajectory statistics unusable: ") + e.what());
      }

      const std::vector<double> g_master = dicke::g_at_times(p, est.tau_bins);
      std::ofstream os = open_output(out, canon);
      os << "tau_A,g_traj,stderr,g_master\n";
      for (std::size_t i = 0; i < est.tau_bins.size(); ++i) {
        os << fmt_g(est.tau_bins[i], 17) << "," << fmt_g(est.g_traj[i], 17) << ","
           << fmt_g(est.std_error[i], 17) << "," << fmt_g(g_master[i], 17) << "\n";
      }
      os.close();

      std::size_t emissions = 0;
      for (const auto& r : records) emissions += r.times.size();
      const double i_ss = dicke::steady_state_numeric(p).i_ss;
      std::cout << "trajectories=" << ensemble << " emissions=" << emissions
                << " mean_rate=" << fmt_g(est.mean_rate, 12)
                << " i_ss=" << fmt_g(i_ss, 12) << "\n";

      // Ergodic consistency: every bin within max(10%, 5 stderr) of the
      // master-equation curve.
      double worst_excess = 0.0;
      std::size_t worst_bin = 0;
      for (std::size_t i = 0; i < est.tau_bins.size(); ++i) {
        const double tol = std::max(0.10 * std::abs(g_master[i]), 5.0 * est.std_error[i]);
        const double excess = std::abs(est.g_traj[i] - g_master[i]) - tol;
        if (excess > worst_excess) {
          worst_excess = excess;
          worst_bin = i;
        }
      }
      if (worst_excess > 0.0) {
        std::ostringstream msg;
        msg << "ergodic consistency failed at tau=" << fmt_g(est.tau_bins[worst_bin], 12)
            << ": g_traj=" << fmt_g(est.g_traj[worst_bin], 12)
            << " g_master=" << fmt_g(g_master[worst_bin], 12)
            << " stderr=" << fmt_g(est.std_error[worst_bin], 12);
        numeric_error(msg.str());
      }
      std::cout << "consistency: PASS\n";
    } catch (const CliError&) {
      throw;
    } catch (const std::exception& e) {
      numeric_error(e.what());
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resonance fluorescence of two dipole-interacting atoms"};
  app.require_subcommand(1);

  CouplingCmd coupling;
  CLI::App* c = app.add_subcommand("coupling", "dipole-dipole coupling C(theta, k0r)");
  coupling.theta_opt =
      c->add_option("--theta", coupling.theta, "dipole angles, radians")->delimiter(',');
  coupling.k0r_opt = c->add_option("--k0r", coupling.k0r_text, "range min:max:steps");
  coupling.a_opt = c->add_option("--A", coupling.a, "Einstein coefficient");
  coupling.out_opt = c->add_option("--out", coupling.out, "output CSV path");
  c->add_option("--config", coupling.config_path, "flat JSON parameter file");

  G0ScanCmd g0scan;
  CLI::App* g = app.add_subcommand("g0-scan", "g(0) versus distance");
  g0scan.omega_opt =
      g->add_option("--omega", g0scan.omega, "Rabi frequencies, units of A")->delimiter(',');
  g0scan.theta_opt =
      g->add_option("--theta", g0scan.theta, "dipole angles, radians")->delimiter(',');
  g0scan.k0r_opt = g->add_option("--k0r", g0scan.k0r_text, "range min:max:steps");
  g0scan.out_opt = g->add_option("--out", g0scan.out, "output CSV path");
  g->add_option("--config", g0scan.config_path, "flat JSON parameter file");

  GtauCmd gtau;
  CLI::App* t = app.add_subcommand("gtau", "correlation curve g(tau)");
  gtau.omega_opt = t->add_option("--omega", gtau.omega, "Rabi frequency, units of A");
  gtau.theta_opt = t->add_option("--theta", gtau.theta, "dipole angle, radians");
  gtau.k0r_opt = t->add_option("--k0r", gtau.k0r, "dimensionless distance");
  gtau.tau_opt = t->add_option("--tau-max", gtau.tau_max, "largest delay, units 1/A");
  gtau.points_opt = t->add_option("--points", gtau.points, "grid points");
  gtau.out_opt = t->add_option("--out", gtau.out, "output CSV path");
  t->add_option("--config", gtau.config_path, "flat JSON parameter file");

  TrajectoryCmd traj;
  CLI::App* j = app.add_subcommand("trajectory", "quantum-jump Monte Carlo run");
  traj.omega_opt = j->add_option("--omega", traj.omega, "Rabi frequency, units of A");
  traj.theta_opt = j->add_option("--theta", traj.theta, "dipole angle, radians");
  traj.k0r_opt = j->add_option("--k0r", traj.k0r, "dimensionless distance");
  traj.horizon_opt = j->add_option("--horizon", traj.horizon, "recorded time, units 1/A");
  traj.seed_opt = j->add_option("--seed", traj.seed, "master seed");
  traj.ensemble_opt = j->add_option("--ensemble", traj.ensemble, "number of trajectories");
  traj.bin_opt = j->add_option("--bin", traj.bin, "histogram bin width, units 1/A");
  traj.tau_opt = j->add_option("--tau-max", traj.tau_max, "largest delay, units 1/A");
  traj.out_opt = j->add_option("--out", traj.out, "output CSV path");
  j->add_option("--config", traj.config_path, "flat JSON parameter file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (c->parsed()) return coupling.run();
    if (g->parsed()) return g0scan.run();
    if (t->parsed()) return gtau.run();
    if (j->parsed()) return traj.run();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
