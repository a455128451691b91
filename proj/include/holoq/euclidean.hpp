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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace holoq {

struct EuclideanParams {
  double mass = 1.0;
  double hbar = 1.0;
  double x_start = 0.0;

  void validate() const;
};

/// Imaginary-time-discretized trajectory of a free particle. Increments of
/// a sampled path are independent Gaussians with variance (hbar/m) dtau,
/// i.e. diffusion constant D = hbar / (2 m), the Wick image of the free
/// Schroedinger equation.
class BrownianPath {
 public:
  BrownianPath(double tau_step, std::vector<double> positions, double mass, double hbar);

  double tau_step() const { return tau_step_; }
  std::size_t n_steps() const { return positions_.size() - 1; }
  std::span<const double> positions() const { return positions_; }
  double tau(std::size_t k) const { return static_cast<double>(k) * tau_step_; }
  double mass() const { return mass_; }
  double hbar() const { return hbar_; }

 private:
  double tau_step_;
  std::vector<double> positions_;
  double mass_;
  double hbar_;
};

/// Information readout of one particle trajectory: I = S_E / (hbar ln 2)
/// bits, the defining relation between off-shell Euclidean action and the
/// number of spin events read out.
struct InfoReadout {
  double action = 0.0;            // S_E >= 0
  double information_bits = 0.0;  // S_E / (hbar ln 2)
  double hbar = 1.0;
};

/// Euclidean heat kernel sqrt(m/(2 pi hbar tau)) exp(-m (x-x0)^2 / (2 hbar tau)).
/// Nonnegative, symmetric in (x, x0) and normalized over x. Throws
/// std::domain_error for tau <= 0.
double heat_kernel(double x, double x0, double tau, double mass, double hbar);

/// Evaluates the Lorentzian kernel at t = -i tau (principal branch, which
/// lands on the real heat kernel) and returns |continued - heat_kernel|.
/// Contract: < 1e-12 everywhere.
double wick_check(double x, double x0, double tau, double mass, double hbar);

/// Samples an n_steps-step Wiener path starting at params.x_start with
/// increment variance (hbar/m) tau_step. Deterministic for a fixed seed.
BrownianPath sample_path(std::size_t n_steps, double tau_step,
                         const EuclideanParams& params, std::uint64_t seed);

/// Off-shell kinetic action S_E = sum_k (m/2) (x_{k+1} - x_k)^2 / dtau >= 0.
double euclidean_action(const BrownianPath& path);

/// I = S_E / (hbar ln 2). Throws std::domain_error for S_E < 0.
InfoReadout information(double action, double hbar);

InfoReadout path_information(const BrownianPath& path);

/// I_tot = sum_n I_n. All readouts must share the same hbar.
double total_information(std::span<const InfoReadout> readouts);

/// Monte-Carlo summary over independently seeded paths. Statistics are
/// accumulated in path order, so a fixed master seed reproduces the exact
/// bytes regardless of thread count.
struct PathEnsembleSummary {
  std::size_t n_paths = 0;
  std::size_t n_steps = 0;
  double mean_action = 0.0;
  double var_action = 0.0;  // unbiased sample variance
  double mean_information_bits = 0.0;
};

/// Runs n_paths independent paths (seed derived per path from master_seed)
/// and summarizes the action statistics. If endpoints is non-null it
/// receives x(tau_final) of every path.
PathEnsembleSummary sample_path_ensemble(std::size_t n_paths, std::size_t n_steps,
                                         double tau_step, const EuclideanParams& params,
                                         std::uint64_t master_seed,
                                         std::vector<double>* endpoints = nullptr);

/// CSV rows "step,tau,x".
void write_path_csv(const BrownianPath& path, std::ostream& out);

}  // namespace holoq
