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

#include <complex>
#include <span>

#include "holoq/grid.hpp"
#include "holoq/qstate.hpp"

namespace holoq {

/// Parameters of unitary real-time free evolution. Defaults hbar = m = 1.
struct LorentzianParams {
  double mass = 1.0;
  double hbar = 1.0;
  double dt = 1e-2;

  void validate() const;
};

/// Canonical Gaussian test packet. The packet must fit the grid with
/// x0 +- 6 sigma0 inside [x_min, x_max].
struct GaussianPacketSpec {
  double x0 = 0.0;
  double sigma0 = 1.0;
  double p0 = 0.0;
};

/// Closed-form free-particle kernel
///   K(x, x0, t) = sqrt(m / (2 pi i hbar t)) exp(i m (x - x0)^2 / (2 hbar t)).
/// |K|^2 is independent of x - x0 and the t -> -i tau continuation lands on
/// the real heat kernel. Throws std::domain_error for t <= 0.
std::complex<double> free_propagator(double x, double x0, double t,
                                     const LorentzianParams& params);

/// The same kernel evaluated at complex time; sqrt takes the principal
/// branch so the Euclidean continuation is real and positive.
std::complex<double> free_propagator_complex_time(double x, double x0,
                                                  std::complex<double> t,
                                                  const LorentzianParams& params);

/// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma0^2) + i p0 x / hbar).
WaveFunction gaussian_packet(const Grid1D& grid, const GaussianPacketSpec& spec,
                             double hbar = 1.0);

/// Exact spectral free evolution over n_steps * dt: multiplies the
/// momentum-space amplitudes by exp(-i hbar k^2 (n_steps dt) / (2 m)).
/// Norm is preserved to rounding; n_steps = 0 returns the input.
WaveFunction evolve(const WaveFunction& psi, std::size_t n_steps,
                    const LorentzianParams& params);

/// Kinetic-energy expectation <hbar^2 k^2 / (2 m)> from the momentum-space
/// amplitudes; constant under free evolution.
double kinetic_energy(const WaveFunction& psi, const LorentzianParams& params);

/// Closed-form spread of a Gaussian packet:
///   sigma(t)^2 = sigma0^2 + (hbar t / (2 m sigma0))^2.
double gaussian_width_squared(const GaussianPacketSpec& spec,
                              const LorentzianParams& params, double t);

/// Max over snapshots of the entropy of the rank-1 density built from each
/// snapshot; < 1e-9 bits over any unitary trajectory. Throws on an empty
/// trajectory.
double entropy_drift(std::span<const WaveFunction> trajectory,
                     EntropyUnit unit = EntropyUnit::bits);

/// Same contract for explicit density-matrix snapshots (full eigensolve);
/// lets tests inject decohered states into a trajectory.
double entropy_drift(std::span<const DensityMatrix> snapshots,
                     EntropyUnit unit = EntropyUnit::bits);

}  // namespace holoq
