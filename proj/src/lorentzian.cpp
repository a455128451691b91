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

#include "holoq/lorentzian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "holoq/constants.hpp"

namespace holoq {

namespace {

using Complex = std::complex<double>;

std::vector<Complex> to_momentum_space(const WaveFunction& psi) {
  Eigen::FFT<double> fft;
  std::vector<Complex> position(psi.amplitudes().data(),
                                psi.amplitudes().data() + psi.amplitudes().size());
  std::vector<Complex> momentum;
  fft.fwd(momentum, position);
  return momentum;
}

}  // namespace

void LorentzianParams::validate() const {
  if (!(mass > 0.0) || !(hbar > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("LorentzianParams: mass, hbar and dt must be positive");
  }
}

std::complex<double> free_propagator_complex_time(double x, double x0, Complex t,
                                                  const LorentzianParams& params) {
  if (!(params.mass > 0.0) || !(params.hbar > 0.0)) {
    throw std::invalid_argument("free_propagator: mass and hbar must be positive");
  }
  const Complex i(0.0, 1.0);
  const Complex prefactor =
      std::sqrt(params.mass / (2.0 * kPi * params.hbar * i * t));
  const double dx = x - x0;
  return prefactor * std::exp(i * params.mass * dx * dx / (2.0 * params.hbar * t));
}

std::complex<double> free_propagator(double x, double x0, double t,
                                     const LorentzianParams& params) {
  if (!(t > 0.0)) {
    throw std::domain_error("free_propagator: t must be positive");
  }
  return free_propagator_complex_time(x, x0, Complex(t, 0.0), params);
}

WaveFunction gaussian_packet(const Grid1D& grid, const GaussianPacketSpec& spec,
                             double hbar) {
  if (!(spec.sigma0 > 0.0)) {
    throw std::invalid_argument("gaussian_packet: sigma0 must be positive");
  }
  if (spec.x0 - 6.0 * spec.sigma0 < grid.x_min() ||
      spec.x0 + 6.0 * spec.sigma0 > grid.x_max()) {
    throw std::invalid_argument(
        "gaussian_packet: packet support (x0 +- 6 sigma0) must fit inside the grid");
  }
  Eigen::VectorXcd amp(static_cast<Eigen::Index>(grid.size()));
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const double d = x - spec.x0;
    amp[static_cast<Eigen::Index>(j)] =
        std::exp(-d * d / (4.0 * spec.sigma0 * spec.sigma0) + i * spec.p0 * x / hbar);
  }
  return WaveFunction(grid, std::move(amp));  // constructor normalizes
}

WaveFunction evolve(const WaveFunction& psi, std::size_t n_steps,
                    const LorentzianParams& params) {
  params.validate();
  if (n_steps == 0) {
    return psi;
  }
  const double t = static_cast<double>(n_steps) * params.dt;
  const std::vector<double> k = psi.grid().wavenumbers();
  std::vector<Complex> momentum = to_momentum_space(psi);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < momentum.size(); ++j) {
    momentum[j] *= std::exp(-i * params.hbar * k[j] * k[j] * t / (2.0 * params.mass));
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> position;
  fft.inv(position, momentum);
  Eigen::VectorXcd amp = Eigen::Map<const Eigen::VectorXcd>(
      position.data(), static_cast<Eigen::Index>(position.size()));
  return wavefunction_detail::unchecked(psi.grid(), std::move(amp));
}

double kinetic_energy(const WaveFunction& psi, const LorentzianParams& params) {
  const std::vector<double> k = psi.grid().wavenumbers();
  const std::vector<Complex> momentum = to_momentum_space(psi);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < momentum.size(); ++j) {
    const double w = std::norm(momentum[j]);
    num += w * params.hbar * params.hbar * k[j] * k[j] / (2.0 * params.mass);
    den += w;
  }
  return num / den;
}

double gaussian_width_squared(const GaussianPacketSpec& spec,
                              const LorentzianParams& params, double t) {
  const double spread = params.hbar * t / (2.0 * params.mass * spec.sigma0);
  return spec.sigma0 * spec.sigma0 + spread * spread;
}

double entropy_drift(std::span<const WaveFunction> trajectory, EntropyUnit unit) {
  if (trajectory.empty()) {
    throw std::invalid_argument("entropy_drift: empty trajectory");
  }
  double max_entropy = 0.0;
  for (const WaveFunction& psi : trajectory) {
    max_entropy = std::max(max_entropy, psi.pure_state_entropy(unit));
  }
  return max_entropy;
}

double entropy_drift(std::span<const DensityMatrix> snapshots, EntropyUnit unit) {
  if (snapshots.empty()) {
    throw std::invalid_argument("entropy_drift: empty trajectory");
  }
  double max_entropy = 0.0;
  for (const DensityMatrix& rho : snapshots) {
    max_entropy = std::max(max_entropy, vn_entropy(rho, unit));
  }
  return max_entropy;
}

}  // namespace holoq
