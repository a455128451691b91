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

#include "holoq/euclidean.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "holoq/constants.hpp"
#include "holoq/lorentzian.hpp"
#include "holoq/random.hpp"

namespace holoq {

void EuclideanParams::validate() const {
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("EuclideanParams: mass and hbar must be positive");
  }
}

BrownianPath::BrownianPath(double tau_step, std::vector<double> positions, double mass,
                           double hbar)
    : tau_step_(tau_step), positions_(std::move(positions)), mass_(mass), hbar_(hbar) {
  if (!(tau_step_ > 0.0)) {
    throw std::invalid_argument("BrownianPath: tau_step must be positive");
  }
  if (positions_.size() < 2) {
    throw std::invalid_argument("BrownianPath: needs at least two points");
  }
  for (double x : positions_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("BrownianPath: positions must be finite");
    }
  }
  if (!(mass_ > 0.0) || !(hbar_ > 0.0)) {
    throw std::invalid_argument("BrownianPath: mass and hbar must be positive");
  }
}

double heat_kernel(double x, double x0, double tau, double mass, double hbar) {
  if (!(tau > 0.0)) {
    throw std::domain_error("heat_kernel: tau must be positive");
  }
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("heat_kernel: mass and hbar must be positive");
  }
  const double d = x - x0;
  return std::sqrt(mass / (2.0 * kPi * hbar * tau)) *
         std::exp(-mass * d * d / (2.0 * hbar * tau));
}

double wick_check(double x, double x0, double tau, double mass, double hbar) {
  if (!(tau > 0.0)) {
    throw std::domain_error("wick_check: tau must be positive");
  }
  LorentzianParams params;
  params.mass = mass;
  params.hbar = hbar;
  const std::complex<double> continued =
      free_propagator_complex_time(x, x0, std::complex<double>(0.0, -tau), params);
  return std::abs(continued - heat_kernel(x, x0, tau, mass, hbar));
}

BrownianPath sample_path(std::size_t n_steps, double tau_step,
                         const EuclideanParams& params, std::uint64_t seed) {
  if (n_steps < 1) {
    throw std::invalid_argument("sample_path: n_steps must be >= 1");
  }
  if (!(tau_step > 0.0)) {
    throw std::invalid_argument("sample_path: tau_step must be positive");
  }
  params.validate();
  rng::RandomStream stream(seed);
  const double step_sigma = std::sqrt(params.hbar / params.mass * tau_step);
  std::vector<double> x(n_steps + 1);
  x[0] = params.x_start;
  for (std::size_t k = 0; k < n_steps; ++k) {
    x[k + 1] = x[k] + step_sigma * stream.gaussian();
  }
  return BrownianPath(tau_step, std::move(x), params.mass, params.hbar);
}

double euclidean_action(const BrownianPath& path) {
  const std::span<const double> x = path.positions();
  double action = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double dx = x[k + 1] - x[k];
    action += 0.5 * path.mass() * dx * dx / path.tau_step();
  }
  return action;
}

InfoReadout information(double action, double hbar) {
  if (action < 0.0) {
    throw std::domain_error("information: Euclidean action must be nonnegative");
  }
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("information: hbar must be positive");
  }
  return InfoReadout{action, action / (hbar * kBitFactor), hbar};
}

InfoReadout path_information(const BrownianPath& path) {
  return information(euclidean_action(path), path.hbar());
}

double total_information(std::span<const InfoReadout> readouts) {
  if (readouts.empty()) {
    return 0.0;
  }
  const double hbar = readouts.front().hbar;
  double total = 0.0;
  for (const InfoReadout& r : readouts) {
    if (r.hbar != hbar) {
      throw std::invalid_argument("total_information: readouts mix different hbar values");
    }
    total += r.information_bits;
  }
  return total;
}

PathEnsembleSummary sample_path_ensemble(std::size_t n_paths, std::size_t n_steps,
                                         double tau_step, const EuclideanParams& params,
                                         std::uint64_t master_seed,
                                         std::vector<double>* endpoints) {
  if (n_paths < 1) {
    throw std::invalid_argument("sample_path_ensemble: n_paths must be >= 1");
  }
  if (endpoints != nullptr) {
    endpoints->assign(n_paths, 0.0);
  }

  struct BlockStats {
    double sum = 0.0;
    double sum_sq = 0.0;
  };

  const std::size_t block_size = 1024;
  const std::size_t n_blocks = (n_paths + block_size - 1) / block_size;
  std::vector<BlockStats> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    const std::size_t end = std::min(begin + block_size, n_paths);
    BlockStats stats;
    for (std::size_t p = begin; p < end; ++p) {
      const BrownianPath path =
          sample_path(n_steps, tau_step, params, rng::derive_seed(master_seed, p));
      const double action = euclidean_action(path);
      stats.sum += action;
      stats.sum_sq += action * action;
      if (endpoints != nullptr) {
        (*endpoints)[p] = path.positions().back();
      }
    }
    blocks[b] = stats;
  };

  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min<std::size_t>({hw, n_blocks, 16});
  if (n_workers <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      run_block(b);
    }
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(n_workers);
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < n_workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&] {
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
          run_block(b);
        }
      }));
    }
    for (auto& f : futures) {
      f.get();
    }
  }

  // Ordered block reduction keeps the result independent of scheduling.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const BlockStats& b : blocks) {
    sum += b.sum;
    sum_sq += b.sum_sq;
  }

  PathEnsembleSummary summary;
  summary.n_paths = n_paths;
  summary.n_steps = n_steps;
  summary.mean_action = sum / static_cast<double>(n_paths);
  summary.var_action =
      n_paths > 1 ? (sum_sq - sum * sum / static_cast<double>(n_paths)) /
                        static_cast<double>(n_paths - 1)
                  : 0.0;
  summary.mean_information_bits = summary.mean_action / (params.hbar * kBitFactor);
  return summary;
}

void write_path_csv(const BrownianPath& path, std::ostream& out) {
  out << "step,tau,x\n";
  char line[96];
  const std::span<const double> x = path.positions();
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", k, path.tau(k), x[k]);
    out << line;
  }
}

}  // namespace holoq
