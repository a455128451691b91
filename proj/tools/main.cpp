// Copyright 2026 The holoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// holoq command-line driver. Talks to the library through the C API only.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holoq.h"

#include "config.hpp"
#include "svg.hpp"

namespace {

using holoq_cli::Axis;
using holoq_cli::Config;
using holoq_cli::Svg;
using nlohmann::ordered_json;

/// Bad flags, unreadable config, invalid physical parameters. Exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measured quantity violated its documented bound. Exit 3.
class GateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 42;
  bool json_only = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path, "key=value config file");
  cmd->add_option("--seed", opts->seed, "master seed for stochastic runs");
  cmd->add_option("--out", opts->out_dir, "output directory");
  cmd->add_flag("--json", opts->json_only, "suppress SVG output");
}

Config load_config(const CommonOpts& opts) {
  if (opts.config_path.empty()) {
    return Config();
  }
  try {
    return Config::load(opts.config_path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

// Precedence: --out flag, then HOLOQ_OUT_DIR, then config, then ./holoq_out.
std::filesystem::path resolve_out_dir(const CommonOpts& opts, const Config& config) {
  std::string dir = opts.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("HOLOQ_OUT_DIR"); env != nullptr && *env != '\0') {
      dir = env;
    }
  }
  if (dir.empty()) {
    dir = config.get_string("out_dir", "holoq_out");
  }
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw ConfigError("cannot create output directory " + path.string() + ": " +
                      ec.message());
  }
  return path;
}

void check(holoq_status status, const std::string& what) {
  if (status != HOLOQ_OK) {
    throw ConfigError(what + ": " + holoq_last_error_message());
  }
}

template <typename T>
using Handle = std::unique_ptr<T, void (*)(T*)>;

template <typename T>
Handle<T> wrap(T* raw, void (*deleter)(T*)) {
  return Handle<T>(raw, deleter);
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << j.dump(2) << "\n";
}

// Timestamps are quarantined here so report.json stays byte-reproducible.
void write_run_metadata(const std::filesystem::path& out_dir, const std::string& command,
                        std::uint64_t seed) {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
  ordered_json meta;
  meta["schema_version"] = 1;
  meta["command"] = command;
  meta["library_version"] = holoq_version();
  meta["seed"] = seed;
  meta["generated_at"] = stamp;
  write_json_file(out_dir / "run_metadata.json", meta);
}

ordered_json gate_entry(double value, double bound, bool pass) {
  ordered_json g;
  g["value"] = value;
  g["bound"] = bound;
  g["pass"] = pass;
  return g;
}

void enforce_gates(const std::vector<std::string>& failures) {
  if (failures.empty()) {
    return;
  }
  std::string message = "numerical contract violated:";
  for (const auto& f : failures) {
    message += "\n  " + f;
  }
  throw GateError(message);
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/* ---- evolve ---------------------------------------------------------- */

int cmd_evolve(const CommonOpts& opts) {
  const Config config = load_config(opts);
  const auto out_dir = resolve_out_dir(opts, config);

  const double x_min = config.get_double("x_min", -40.0);
  const double x_max = config.get_double("x_max", 40.0);
  const std::size_t n_points = config.get_u64("n_points", 1024);
  const double x0 = config.get_double("x0", -10.0);
  const double sigma0 = config.get_double("sigma0", 1.0);
  const double p0 = config.get_double("p0", 2.0);
  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);
  const double dt = config.get_double("dt", 0.005);
  const std::size_t n_steps = config.get_u64("n_steps", 1000);

  holoq_grid* grid_raw = nullptr;
  check(holoq_grid_create(x_min, x_max, n_points, &grid_raw), "grid");
  auto grid = wrap(grid_raw, holoq_grid_free);
  holoq_wavefunction* psi_raw = nullptr;
  check(holoq_gaussian_packet(grid.get(), x0, sigma0, p0, hbar, &psi_raw), "packet");
  auto psi = wrap(psi_raw, holoq_wavefunction_free);

  holoq_wavefunction* final_raw = nullptr;
  check(holoq_evolve(psi.get(), n_steps, mass, hbar, dt, &final_raw), "evolve");
  auto final_psi = wrap(final_raw, holoq_wavefunction_free);

  double norm_final = 0.0;
  double s_initial = 0.0;
  double s_final = 0.0;
  double predicted_width2 = 0.0;
  double measured_width2 = 0.0;
  check(holoq_wavefunction_norm(final_psi.get(), &norm_final), "norm");
  check(holoq_wavefunction_entropy_bits(psi.get(), &s_initial), "entropy");
  check(holoq_wavefunction_entropy_bits(final_psi.get(), &s_final), "entropy");
  const double t_total = static_cast<double>(n_steps) * dt;
  check(holoq_gaussian_width_squared(sigma0, mass, hbar, t_total, &predicted_width2),
        "width");
  check(holoq_wavefunction_position_variance(final_psi.get(), &measured_width2),
        "variance");

  const double norm_drift = std::abs(norm_final - 1.0);
  const double entropy_drift = std::max(std::abs(s_initial), std::abs(s_final));
  const double width_fit_error = std::abs(measured_width2 - predicted_width2);

  const bool norm_ok = norm_drift < 1e-10;
  const bool entropy_ok = entropy_drift < 1e-9;
  const bool width_ok = width_fit_error < 1e-6;

  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = "evolve";
  report["params"] = {{"x_min", x_min},       {"x_max", x_max}, {"n_points", n_points},
                      {"x0", x0},             {"sigma0", sigma0}, {"p0", p0},
                      {"mass", mass},         {"hbar", hbar},   {"dt", dt},
                      {"n_steps", n_steps},   {"t_total", t_total}};
  report["norm_drift"] = norm_drift;
  report["entropy_drift"] = entropy_drift;
  report["width_fit_error"] = width_fit_error;
  report["predicted_width_squared"] = predicted_width2;
  report["measured_width_squared"] = measured_width2;
  report["gates"] = {{"norm_drift", gate_entry(norm_drift, 1e-10, norm_ok)},
                     {"entropy_drift", gate_entry(entropy_drift, 1e-9, entropy_ok)},
                     {"width_fit_error", gate_entry(width_fit_error, 1e-6, width_ok)}};
  write_json_file(out_dir / "report.json", report);
  write_run_metadata(out_dir, "evolve", opts.seed);

  if (!opts.json_only) {
    double dx = 0.0;
    check(holoq_grid_spacing(grid.get(), &dx), "spacing");
    const double width = 960.0;
    const double height = 540.0;
    Svg svg(width, height);
    const Axis ax(x_min, x_max, 70.0, width - 30.0);
    std::vector<double> density(n_points);
    double peak = 0.0;
    std::vector<std::vector<double>> snapshots;
    std::vector<double> snap_times;
    const std::size_t fractions[] = {0, 1, 2, 3, 4};
    for (const std::size_t f : fractions) {
      const std::size_t steps = n_steps * f / 4;
      holoq_wavefunction* snap_raw = nullptr;
      check(holoq_evolve(psi.get(), steps, mass, hbar, dt, &snap_raw), "snapshot");
      auto snap = wrap(snap_raw, holoq_wavefunction_free);
      check(holoq_wavefunction_density(snap.get(), density.data(), density.size()),
            "density");
      for (const double v : density) {
        peak = std::max(peak, v);
      }
      snapshots.push_back(density);
      snap_times.push_back(static_cast<double>(steps) * dt);
    }
    const Axis ay(0.0, peak * 1.05, height - 50.0, 40.0);
    svg.line(70.0, height - 50.0, width - 30.0, height - 50.0, "#444444");
    svg.line(70.0, height - 50.0, 70.0, 40.0, "#444444");
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
      std::vector<std::pair<double, double>> pts;
      pts.reserve(n_points);
      for (std::size_t i = 0; i < n_points; ++i) {
        pts.emplace_back(ax(x_min + static_cast<double>(i) * dx), ay(snapshots[s][i]));
      }
      svg.polyline(pts, colors[s % 5], 1.5);
      svg.text(80.0, 55.0 + 16.0 * static_cast<double>(s),
               "t = " + fmt_g(snap_times[s]), 12.0);
    }
    svg.text(width / 2.0, height - 18.0, "x", 13.0, "middle");
    svg.text(14.0, 30.0, "probability density", 13.0);
    svg.save((out_dir / "evolve.svg").string());
  }

  std::vector<std::string> failures;
  if (!norm_ok) failures.push_back("norm_drift " + fmt_g(norm_drift) + " >= 1e-10");
  if (!entropy_ok) failures.push_back("entropy_drift " + fmt_g(entropy_drift) + " >= 1e-9");
  if (!width_ok) failures.push_back("width_fit_error " + fmt_g(width_fit_error) + " >= 1e-6");
  enforce_gates(failures);
  std::printf("evolve: norm_drift=%.3g entropy_drift=%.3g width_fit_error=%.3g -> ok\n",
              norm_drift, entropy_drift, width_fit_error);
  return 0;
}

/* ---- wick ------------------------------------------------------------ */

int cmd_wick(const CommonOpts& opts) {
  const Config config = load_config(opts);
  const auto out_dir = resolve_out_dir(opts, config);

  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);
  const double x0 = config.get_double("x0", 0.0);
  const double x_min = config.get_double("x_min", -5.0);
  const double x_max = config.get_double("x_max", 5.0);
  const std::size_t n_x = config.get_u64("n_x", 101);
  const double tau_min = config.get_double("tau_min", 0.1);
  const double tau_max = config.get_double("tau_max", 1.0);
  const std::size_t n_tau = config.get_u64("n_tau", 10);

  if (n_tau == 0) {
    throw ConfigError("wick: the imaginary-time list is empty (n_tau = 0)");
  }
  if (n_x < 2) {
    throw ConfigError("wick: need at least two x sample points");
  }
  if (!(tau_min > 0.0) || tau_max < tau_min) {
    throw ConfigError("wick: need 0 < tau_min <= tau_max");
  }

  double max_discrepancy = 0.0;
  for (std::size_t it = 0; it < n_tau; ++it) {
    const double tau =
        n_tau == 1 ? tau_min
                   : tau_min + (tau_max - tau_min) * static_cast<double>(it) /
                                   static_cast<double>(n_tau - 1);
    for (std::size_t ix = 0; ix < n_x; ++ix) {
      const double x = x_min + (x_max - x_min) * static_cast<double>(ix) /
                                   static_cast<double>(n_x - 1);
      double d = 0.0;
      check(holoq_wick_check(x, x0, tau, mass, hbar, &d), "wick_check");
      max_discrepancy = std::max(max_discrepancy, d);
    }
  }

  // Simpson quadrature of the heat kernel over +-12 sigma; the truncated
  // tail mass is far below the 1e-9 gate.
  double max_norm_deviation = 0.0;
  for (std::size_t it = 0; it < n_tau; ++it) {
    const double tau =
        n_tau == 1 ? tau_min
                   : tau_min + (tau_max - tau_min) * static_cast<double>(it) /
                                   static_cast<double>(n_tau - 1);
    const double sigma = std::sqrt(hbar * tau / mass);
    const double lo = x0 - 12.0 * sigma;
    const double hi = x0 + 12.0 * sigma;
    const std::size_t n_div = 2000;  // even
    const double h = (hi - lo) / static_cast<double>(n_div);
    double sum = 0.0;
    for (std::size_t i = 0; i <= n_div; ++i) {
      double k = 0.0;
      check(holoq_heat_kernel(lo + static_cast<double>(i) * h, x0, tau, mass, hbar, &k),
            "heat_kernel");
      const double w = (i == 0 || i == n_div) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += w * k;
    }
    const double integral = sum * h / 3.0;
    max_norm_deviation = std::max(max_norm_deviation, std::abs(integral - 1.0));
  }

  const bool wick_ok = max_discrepancy < 1e-12;
  const bool norm_ok = max_norm_deviation < 1e-9;

  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = "wick";
  report["params"] = {{"mass", mass},      {"hbar", hbar},   {"x0", x0},
                      {"x_min", x_min},    {"x_max", x_max}, {"n_x", n_x},
                      {"tau_min", tau_min}, {"tau_max", tau_max}, {"n_tau", n_tau}};
  report["max_wick_discrepancy"] = max_discrepancy;
  report["max_normalization_deviation"] = max_norm_deviation;
  report["gates"] = {
      {"max_wick_discrepancy", gate_entry(max_discrepancy, 1e-12, wick_ok)},
      {"max_normalization_deviation", gate_entry(max_norm_deviation, 1e-9, norm_ok)}};
  write_json_file(out_dir / "report.json", report);
  write_run_metadata(out_dir, "wick", opts.seed);

  std::vector<std::string> failures;
  if (!wick_ok) {
    failures.push_back("max_wick_discrepancy " + fmt_g(max_discrepancy) + " >= 1e-12");
  }
  if (!norm_ok) {
    failures.push_back("max_normalization_deviation " + fmt_g(max_norm_deviation) +
                       " >= 1e-9");
  }
  enforce_gates(failures);
  std::printf("wick: max_discrepancy=%.3g max_normalization_deviation=%.3g -> ok\n",
              max_discrepancy, max_norm_deviation);
  return 0;
}

/* ---- paths ------------------------------------------------------------ */

int cmd_paths(const CommonOpts& opts) {
  const Config config = load_config(opts);
  const auto out_dir = resolve_out_dir(opts, config);

  const std::size_t n_paths = config.get_u64("n_paths", 100000);
  const std::size_t n_steps = config.get_u64("n_steps", 1000);
  const double tau_step = config.get_double("tau_step", 0.001);
  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);
  const double x_start = config.get_double("x_start", 0.0);
  const std::size_t n_particles = config.get_u64("n_particles", 3);

  std::vector<double> endpoints(n_paths);
  holoq_path_summary summary{};
  check(holoq_sample_path_ensemble(n_paths, n_steps, tau_step, mass, hbar, x_start,
                                   opts.seed, &summary, endpoints.data()),
        "ensemble");

  // Per-particle readouts plus the additive total.
  std::vector<double> particle_actions(n_particles);
  std::vector<double> particle_bits(n_particles);
  for (std::size_t n = 0; n < n_particles; ++n) {
    holoq_path* path_raw = nullptr;
    check(holoq_sample_path(n_steps, tau_step, mass, hbar, x_start,
                            opts.seed + 1 + n, &path_raw),
          "particle path");
    auto path = wrap(path_raw, holoq_path_free);
    check(holoq_path_action(path.get(), &particle_actions[n]), "action");
    check(holoq_path_information_bits(path.get(), &particle_bits[n]), "information");
  }
  double i_tot = 0.0;
  check(holoq_total_information_bits(particle_actions.data(), n_particles, hbar, &i_tot),
        "total information");
  double action_sum = 0.0;
  for (const double a : particle_actions) {
    action_sum += a;
  }
  double i_tot_recomputed = 0.0;
  check(holoq_information_bits(action_sum, hbar, &i_tot_recomputed), "information");
  const double i_tot_rel_err =
      i_tot == 0.0 ? std::abs(i_tot_recomputed) : std::abs(i_tot - i_tot_recomputed) /
                                                      std::abs(i_tot);

  const double target_action = static_cast<double>(n_steps) * hbar / 2.0;
  const double mean_rel_err = std::abs(summary.mean_action - target_action) / target_action;
  const bool mean_ok = mean_rel_err < 0.01;
  const bool total_ok = i_tot_rel_err <= 1e-12;

  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = "paths";
  report["params"] = {{"n_paths", n_paths}, {"n_steps", n_steps},
                      {"tau_step", tau_step}, {"mass", mass},
                      {"hbar", hbar},         {"x_start", x_start},
                      {"n_particles", n_particles}, {"seed", opts.seed}};
  report["mean_action"] = summary.mean_action;
  report["var_action"] = summary.var_action;
  report["mean_information_bits"] = summary.mean_information_bits;
  report["target_mean_action"] = target_action;
  report["particle_actions"] = particle_actions;
  report["particle_information_bits"] = particle_bits;
  report["total_information_bits"] = i_tot;
  report["total_information_rel_err"] = i_tot_rel_err;
  report["gates"] = {
      {"mean_action_rel_err", gate_entry(mean_rel_err, 0.01, mean_ok)},
      {"total_information_rel_err", gate_entry(i_tot_rel_err, 1e-12, total_ok)}};
  write_json_file(out_dir / "report.json", report);
  write_run_metadata(out_dir, "paths", opts.seed);

  {
    holoq_path* path_raw = nullptr;
    check(holoq_sample_path(n_steps, tau_step, mass, hbar, x_start, opts.seed, &path_raw),
          "sample path");
    auto path = wrap(path_raw, holoq_path_free);
    std::vector<double> positions(n_steps + 1);
    check(holoq_path_positions(path.get(), positions.data(), positions.size()),
          "positions");
    std::ofstream csv(out_dir / "sample_path.csv");
    if (!csv) {
      throw ConfigError("cannot write sample_path.csv");
    }
    csv << "step,tau,x\n";
    char buf[96];
    for (std::size_t i = 0; i < positions.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i,
                    static_cast<double>(i) * tau_step, positions[i]);
      csv << buf;
    }
  }

  if (!opts.json_only) {
    const double t_total = static_cast<double>(n_steps) * tau_step;
    double lo = endpoints[0];
    double hi = endpoints[0];
    for (const double x : endpoints) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const std::size_t n_bins = 61;
    const double bin_width = (hi - lo) / static_cast<double>(n_bins);
    std::vector<double> counts(n_bins, 0.0);
    for (const double x : endpoints) {
      std::size_t b = static_cast<std::size_t>((x - lo) / bin_width);
      if (b >= n_bins) {
        b = n_bins - 1;
      }
      counts[b] += 1.0;
    }
    std::vector<std::pair<double, double>> overlay;
    double peak = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double center = lo + (static_cast<double>(b) + 0.5) * bin_width;
      double k = 0.0;
      check(holoq_heat_kernel(center, x_start, t_total, mass, hbar, &k), "kernel");
      const double expected = static_cast<double>(n_paths) * bin_width * k;
      overlay.emplace_back(center, expected);
      peak = std::max(peak, std::max(counts[b], expected));
    }
    const double width = 960.0;
    const double height = 540.0;
    Svg svg(width, height);
    const Axis ax(lo, hi, 70.0, width - 30.0);
    const Axis ay(0.0, peak * 1.05, height - 50.0, 40.0);
    svg.line(70.0, height - 50.0, width - 30.0, height - 50.0, "#444444");
    svg.line(70.0, height - 50.0, 70.0, 40.0, "#444444");
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double x_left = ax(lo + static_cast<double>(b) * bin_width);
      const double x_right = ax(lo + static_cast<double>(b + 1) * bin_width);
      const double y_top = ay(counts[b]);
      svg.rect(x_left, y_top, x_right - x_left, height - 50.0 - y_top, "#1f77b4", 0.6);
    }
    std::vector<std::pair<double, double>> overlay_px;
    overlay_px.reserve(overlay.size());
    for (const auto& [x, y] : overlay) {
      overlay_px.emplace_back(ax(x), ay(y));
    }
    svg.polyline(overlay_px, "#d62728", 2.0);
    svg.text(width / 2.0, height - 18.0, "endpoint x", 13.0, "middle");
    svg.text(14.0, 30.0, "count (kernel overlay in red)", 13.0);
    svg.save((out_dir / "paths.svg").string());
  }

  std::vector<std::string> failures;
  if (!mean_ok) {
    failures.push_back("mean_action " + fmt_g(summary.mean_action) +
                       " deviates from target " + fmt_g(target_action) + " by more than 1%");
  }
  if (!total_ok) {
    failures.push_back("total information mismatch, relative error " +
                       fmt_g(i_tot_rel_err));
  }
  enforce_gates(failures);
  std::printf("paths: mean_action=%.6g mean_information_bits=%.6g i_tot=%.6g -> ok\n",
              summary.mean_action, summary.mean_information_bits, i_tot);
  return 0;
}

/* ---- ledger ------------------------------------------------------------ */

int cmd_ledger(const CommonOpts& opts) {
  const Config config = load_config(opts);
  const auto out_dir = resolve_out_dir(opts, config);

  const std::size_t n_measurements = config.get_u64("n_measurements", 1);
  const double gap = config.get_double("gap", 1.0);
  const double window = config.get_double("window", 0.2);
  const std::size_t mera_leaves = config.get_u64("mera_leaves", 64);
  const std::size_t dual_steps = config.get_u64("dual_steps", 256);
  const double mass = config.get_double("mass", 1.0);
  const double hbar = config.get_double("hbar", 1.0);

  if (!(gap > 0.0) || !(window > 0.0)) {
    throw ConfigError("ledger: gap and window must be positive");
  }

  // |+> so that alternating Z/X projections always decohere.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double plus[] = {inv_sqrt2, inv_sqrt2};
  holoq_density* rho_raw = nullptr;
  check(holoq_density_pure(plus, nullptr, 2, &rho_raw), "initial state");
  auto rho = wrap(rho_raw, holoq_density_free);

  holoq_schedule* schedule_raw = nullptr;
  check(holoq_schedule_create(&schedule_raw), "schedule");
  auto schedule = wrap(schedule_raw, holoq_schedule_free);
  double t = 0.0;
  check(holoq_schedule_add_unitary(schedule.get(), t, t + gap), "unitary span");
  t += gap;
  for (std::size_t k = 0; k < n_measurements; ++k) {
    holoq_family* family_raw = nullptr;
    if (k % 2 == 0) {
      check(holoq_family_pauli_z(&family_raw), "family");
    } else {
      check(holoq_family_pauli_x(&family_raw), "family");
    }
    auto family = wrap(family_raw, holoq_family_free);
    check(holoq_schedule_add_measurement(schedule.get(), t, t + window, family.get()),
          "measurement window");
    t += window;
    check(holoq_schedule_add_unitary(schedule.get(), t, t + gap), "unitary span");
    t += gap;
  }

  holoq_mera* mera_raw = nullptr;
  check(holoq_mera_build(mera_leaves, &mera_raw), "network");
  auto mera = wrap(mera_raw, holoq_mera_free);
  holoq_hologram* hologram_raw = nullptr;
  check(holoq_classicalize(mera.get(), &hologram_raw), "classicalize");
  auto hologram = wrap(hologram_raw, holoq_hologram_free);
  double a_tn_bits = 0.0;
  check(holoq_hologram_entropy_bits(hologram.get(), &a_tn_bits), "a_tn");

  holoq_ledger* bare_raw = nullptr;
  check(holoq_run_schedule(rho.get(), schedule.get(), opts.seed, &bare_raw), "schedule run");
  auto bare = wrap(bare_raw, holoq_ledger_free);
  holoq_ledger* ledger_raw = nullptr;
  check(holoq_attach_duals(bare.get(), a_tn_bits, mass, hbar, dual_steps, opts.seed + 1,
                           &ledger_raw),
        "duals");
  auto ledger = wrap(ledger_raw, holoq_ledger_free);

  std::size_t n_records = 0;
  std::size_t n_duals = 0;
  check(holoq_ledger_size(ledger.get(), &n_records), "ledger size");
  check(holoq_ledger_n_duals(ledger.get(), &n_duals), "dual count");
  std::vector<holoq_phase_record> records(n_records);
  for (std::size_t i = 0; i < n_records; ++i) {
    check(holoq_ledger_record(ledger.get(), i, &records[i]), "record");
  }

  char* json_raw = nullptr;
  check(holoq_ledger_to_json(ledger.get(), &json_raw), "ledger json");
  ordered_json ledger_json = ordered_json::parse(json_raw);
  holoq_string_free(json_raw);

  const std::size_t expected_lorentzian = 2 * n_measurements + 1;
  const std::size_t expected_duals = n_measurements + 1;
  const bool counts_ok = n_records == expected_lorentzian + expected_duals &&
                         n_duals == expected_duals;
  bool duals_ok = true;
  for (const auto& r : records) {
    if (r.regime == 1) {
      if (r.entropy_bits != a_tn_bits || !(r.information_bits > 0.0) || r.dual_of < 0) {
        duals_ok = false;
      }
      // Windows never gain a dual.
      const auto& target = records[static_cast<std::size_t>(r.dual_of)];
      if (target.kind == 1) {
        duals_ok = false;
      }
    }
  }

  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = "ledger";
  report["params"] = {{"n_measurements", n_measurements}, {"gap", gap},
                      {"window", window},                 {"mera_leaves", mera_leaves},
                      {"dual_steps", dual_steps},         {"mass", mass},
                      {"hbar", hbar},                     {"seed", opts.seed}};
  report["a_tn_bits"] = a_tn_bits;
  report["n_records"] = n_records;
  report["n_duals"] = n_duals;
  report["expected_lorentzian"] = expected_lorentzian;
  report["expected_duals"] = expected_duals;
  report["ledger"] = ledger_json;
  report["gates"] = {
      {"record_counts", gate_entry(static_cast<double>(n_records),
                                   static_cast<double>(expected_lorentzian + expected_duals),
                                   counts_ok)},
      {"dual_invariants", gate_entry(duals_ok ? 1.0 : 0.0, 1.0, duals_ok)}};
  write_json_file(out_dir / "report.json", report);
  write_run_metadata(out_dir, "ledger", opts.seed);

  if (!opts.json_only) {
    const double width = 960.0;
    const double height = 360.0;
    Svg svg(width, height);
    const double t_end = t;
    const Axis ax(0.0, t_end, 70.0, width - 30.0);
    const double row_l_top = 80.0;
    const double row_l_bot = 140.0;
    const double row_e_top = 220.0;
    const double row_e_bot = 280.0;
    svg.text(10.0, (row_l_top + row_l_bot) / 2.0, "real time", 12.0);
    svg.text(10.0, (row_e_top + row_e_bot) / 2.0, "imaginary", 12.0);
    // Shade measurement windows across both rows: no dual exists there.
    for (const auto& r : records) {
      if (r.regime == 0 && r.kind == 1) {
        svg.rect(ax(r.span_start), 60.0, ax(r.span_end) - ax(r.span_start), 240.0,
                 "#bbbbbb", 0.35);
      }
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      const double x = ax(r.span_start);
      const double w = ax(r.span_end) - ax(r.span_start);
      if (r.regime == 0) {
        const char* fill = r.kind == 0 ? "#1f77b4" : (r.kind == 1 ? "#7f7f7f" : "#2ca02c");
        svg.rect(x, row_l_top, w, row_l_bot - row_l_top, fill, 0.8);
        svg.text(x + w / 2.0, row_l_top - 8.0,
                 "S=" + fmt_g(r.entropy_bits) + " I=" + fmt_g(r.information_bits), 10.0,
                 "middle");
      } else {
        svg.rect(x, row_e_top, w, row_e_bot - row_e_top, "#ff7f0e", 0.8);
        svg.text(x + w / 2.0, row_e_bot + 14.0,
                 "S=" + fmt_g(r.entropy_bits) + " I=" + fmt_g(r.information_bits), 10.0,
                 "middle");
        const double cx = x + w / 2.0;
        svg.line(cx, row_l_bot, cx, row_e_top, "#d62728", 1.5);
        svg.line(cx, row_e_top, cx - 5.0, row_e_top - 8.0, "#d62728", 1.5);
        svg.line(cx, row_e_top, cx + 5.0, row_e_top - 8.0, "#d62728", 1.5);
      }
    }
    svg.line(70.0, 320.0, width - 30.0, 320.0, "#444444");
    svg.text(width / 2.0, 344.0, "time", 13.0, "middle");
    svg.save((out_dir / "ledger.svg").string());
  }

  std::vector<std::string> failures;
  if (!counts_ok) {
    failures.push_back("record counts: got " + std::to_string(n_records) + " records / " +
                       std::to_string(n_duals) + " duals, expected " +
                       std::to_string(expected_lorentzian + expected_duals) + " / " +
                       std::to_string(expected_duals));
  }
  if (!duals_ok) {
    failures.push_back("dual records violate S=A_TN, I>0 or target-kind invariants");
  }
  enforce_gates(failures);
  std::printf("ledger: %zu records (%zu duals), A_TN=%.0f bits -> ok\n", n_records,
              n_duals, a_tn_bits);
  return 0;
}

/* ---- mera -------------------------------------------------------------- */

int cmd_mera(const CommonOpts& opts) {
  const Config config = load_config(opts);
  const auto out_dir = resolve_out_dir(opts, config);

  const std::size_t n_leaves = config.get_u64("n_leaves", 64);

  holoq_mera* mera_raw = nullptr;
  check(holoq_mera_build(n_leaves, &mera_raw), "network");
  auto mera = wrap(mera_raw, holoq_mera_free);
  std::size_t n_sites = 0;
  std::size_t n_bonds = 0;
  std::size_t n_layers = 0;
  check(holoq_mera_n_sites(mera.get(), &n_sites), "sites");
  check(holoq_mera_n_bonds(mera.get(), &n_bonds), "bonds");
  check(holoq_mera_n_layers(mera.get(), &n_layers), "layers");

  holoq_hologram* hologram_raw = nullptr;
  check(holoq_classicalize(mera.get(), &hologram_raw), "classicalize");
  auto hologram = wrap(hologram_raw, holoq_hologram_free);
  std::size_t a_tn = 0;
  double entropy_bits = 0.0;
  check(holoq_hologram_a_tn(hologram.get(), &a_tn), "a_tn");
  check(holoq_hologram_entropy_bits(hologram.get(), &entropy_bits), "entropy");
  const bool area_ok = entropy_bits == static_cast<double>(a_tn);

  // Interval sweep at powers of two up to half the boundary, plus the whole
  // boundary (cut 0, excluded from the fit).
  std::vector<std::size_t> lengths;
  for (std::size_t l = 1; l <= n_leaves / 2; l *= 2) {
    lengths.push_back(l);
  }
  lengths.push_back(n_leaves);
  ordered_json cut_by_interval = ordered_json::array();
  std::vector<double> fit_x;
  std::vector<double> fit_y;
  for (const std::size_t l : lengths) {
    std::size_t cut = 0;
    check(holoq_minimal_cut(mera.get(), 0, l, &cut), "minimal cut");
    cut_by_interval.push_back({{"length", l}, {"cut", cut}});
    if (l >= 2 && l <= n_leaves / 2) {
      fit_x.push_back(std::log2(static_cast<double>(l)));
      fit_y.push_back(static_cast<double>(cut));
    }
  }

  // Least squares cut = slope * log2(l) + intercept over l in [2, n/2].
  bool have_fit = fit_x.size() >= 2;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  if (have_fit) {
    const double n = static_cast<double>(fit_x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < fit_x.size(); ++i) {
      sx += fit_x[i];
      sy += fit_y[i];
      sxx += fit_x[i] * fit_x[i];
      sxy += fit_x[i] * fit_y[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    intercept = (sy - slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < fit_x.size(); ++i) {
      const double pred = slope * fit_x[i] + intercept;
      ss_res += (fit_y[i] - pred) * (fit_y[i] - pred);
      ss_tot += (fit_y[i] - mean_y) * (fit_y[i] - mean_y);
    }
    r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  }
  const bool fit_ok = !have_fit || r_squared > 0.99;

  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = "mera";
  report["params"] = {{"n_leaves", n_leaves}};
  report["n_sites"] = n_sites;
  report["n_bonds"] = n_bonds;
  report["n_layers"] = n_layers;
  report["a_tn_bits"] = a_tn;
  report["entropy_bits"] = entropy_bits;
  report["cut_by_interval"] = cut_by_interval;
  if (have_fit) {
    report["regression"] = {{"slope", slope}, {"intercept", intercept},
                            {"r_squared", r_squared}};
  } else {
    report["regression"] = nullptr;
  }
  report["gates"] = {
      {"entropy_equals_area", gate_entry(entropy_bits, static_cast<double>(a_tn), area_ok)},
      {"cut_scaling_r_squared", gate_entry(r_squared, 0.99, fit_ok)}};
  write_json_file(out_dir / "report.json", report);
  write_run_metadata(out_dir, "mera", opts.seed);

  if (!opts.json_only && have_fit) {
    const double width = 720.0;
    const double height = 480.0;
    Svg svg(width, height);
    const Axis ax = Axis::from_data(fit_x, 70.0, width - 30.0, 0.08);
    const Axis ay = Axis::from_data(fit_y, height - 60.0, 40.0, 0.08);
    svg.line(70.0, height - 60.0, width - 30.0, height - 60.0, "#444444");
    svg.line(70.0, height - 60.0, 70.0, 40.0, "#444444");
    svg.polyline({{ax(fit_x.front()), ay(slope * fit_x.front() + intercept)},
                  {ax(fit_x.back()), ay(slope * fit_x.back() + intercept)}},
                 "#d62728", 1.5);
    for (std::size_t i = 0; i < fit_x.size(); ++i) {
      svg.circle(ax(fit_x[i]), ay(fit_y[i]), 4.0, "#1f77b4");
    }
    svg.text(width / 2.0, height - 24.0, "log2(interval length)", 13.0, "middle");
    svg.text(14.0, 28.0, "minimal cut (bonds)", 13.0);
    svg.text(width - 40.0, 52.0,
             "slope=" + fmt_g(slope) + " R2=" + fmt_g(r_squared), 12.0, "end");
    svg.save((out_dir / "mera.svg").string());
  }

  std::vector<std::string> failures;
  if (!area_ok) {
    failures.push_back("entropy_bits " + fmt_g(entropy_bits) + " != A_TN " +
                       std::to_string(a_tn));
  }
  if (!fit_ok) {
    failures.push_back("cut scaling r_squared " + fmt_g(r_squared) + " <= 0.99");
  }
  enforce_gates(failures);
  std::printf("mera: A_TN=%zu entropy_bits=%.17g r_squared=%.6g -> ok\n", a_tn,
              entropy_bits, r_squared);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoq: regime bookkeeping experiments for a free particle"};
  app.require_subcommand(1);

  CommonOpts evolve_opts, wick_opts, paths_opts, ledger_opts, mera_opts;
  CLI::App* evolve = app.add_subcommand("evolve", "dispersive packet, drift gates");
  add_common(evolve, &evolve_opts);
  CLI::App* wick = app.add_subcommand("wick", "imaginary-time kernel consistency sweep");
  add_common(wick, &wick_opts);
  CLI::App* paths = app.add_subcommand("paths", "Wiener ensemble and information totals");
  add_common(paths, &paths_opts);
  CLI::App* ledger = app.add_subcommand("ledger", "measurement schedule regime ledger");
  add_common(ledger, &ledger_opts);
  CLI::App* mera = app.add_subcommand("mera", "classicalized network area and cuts");
  add_common(mera, &mera_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*evolve) return cmd_evolve(evolve_opts);
    if (*wick) return cmd_wick(wick_opts);
    if (*paths) return cmd_paths(paths_opts);
    if (*ledger) return cmd_ledger(ledger_opts);
    if (*mera) return cmd_mera(mera_opts);
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const GateError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
