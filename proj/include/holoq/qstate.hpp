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
#include <vector>

#include <Eigen/Dense>

#include "holoq/grid.hpp"

namespace holoq {

enum class EntropyUnit { bits, nats };

/// Complex amplitude sampled on a uniform 1D grid; a normalized pure state.
/// The L2 norm (sum |psi|^2 dx) is 1 after construction and stays 1 under
/// the unitary operations in this library.
class WaveFunction {
 public:
  /// Builds from raw samples; the amplitudes are L2-normalized on the grid.
  WaveFunction(Grid1D grid, Eigen::VectorXcd amplitudes);

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

  /// L2 norm on the grid, sqrt(sum |psi_i|^2 dx).
  double norm() const;

  /// <a|b> = sum conj(a_i) b_i dx. Grids must match.
  std::complex<double> inner(const WaveFunction& other) const;

  /// Position moments of |psi|^2.
  double mean_position() const;
  double position_variance() const;

  /// |psi_i|^2 per grid point.
  std::vector<double> probability_density() const;

  WaveFunction conjugate() const;

  /// Entropy of the rank-1 density |psi><psi| dx built from this state.
  /// Its spectrum is {norm^2, 0, ...} exactly, so no eigensolve is needed.
  double pure_state_entropy(EntropyUnit unit = EntropyUnit::bits) const;

 private:
  struct AlreadyNormalized {};
  WaveFunction(Grid1D grid, Eigen::VectorXcd amplitudes, AlreadyNormalized)
      : grid_(grid), amplitudes_(std::move(amplitudes)) {}

  Grid1D grid_;
  Eigen::VectorXcd amplitudes_;

  friend class wavefunction_detail;
};

/// Internal factory for operations that preserve normalization analytically
/// (unitary evolution, conjugation). Skips the renormalizing constructor so
/// norm drift stays observable.
class wavefunction_detail {
 public:
  static WaveFunction unchecked(Grid1D grid, Eigen::VectorXcd amplitudes) {
    return WaveFunction(grid, std::move(amplitudes), WaveFunction::AlreadyNormalized{});
  }
};

/// Finite-dimensional mixed state. Construction validates hermiticity
/// (1e-12), unit trace (1e-12) and positive semidefiniteness (eigenvalues
/// >= -1e-10).
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  /// Rank-1 projector |v><v| onto the (normalized) vector v.
  static DensityMatrix pure(const Eigen::VectorXcd& v);

  /// rho_ij = psi_i conj(psi_j) dx in the grid basis.
  static DensityMatrix from_wavefunction(const WaveFunction& psi);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  struct Trusted {};
  DensityMatrix(Eigen::MatrixXcd entries, Trusted) : entries_(std::move(entries)) {}

  Eigen::MatrixXcd entries_;

  friend class density_detail;
};

/// Internal constructor access for modules that build density matrices
/// whose positivity holds by construction (projected or convex-combined
/// states). Hermiticity and trace are still checked.
class density_detail {
 public:
  static DensityMatrix trusted(Eigen::MatrixXcd entries);
};

struct EnsembleMember {
  double weight = 0.0;
  Eigen::VectorXcd state;
};

/// Statistical ensemble of unit vectors with weights summing to 1.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  std::span<const EnsembleMember> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool pure() const { return members_.size() == 1; }

 private:
  std::vector<EnsembleMember> members_;
};

/// von Neumann entropy -sum lambda log lambda over the eigenvalues of rho.
/// Zero for rank-1 states. Throws std::invalid_argument for non-Hermitian
/// or non-unit-trace input.
double vn_entropy(const DensityMatrix& rho, EntropyUnit unit = EntropyUnit::bits);

/// Shannon entropy -sum p log p with 0 log 0 = 0. The distribution must be
/// nonnegative and sum to 1 within 1e-12.
double shannon_entropy(std::span<const double> p, EntropyUnit unit = EntropyUnit::bits);

/// Entropy of an explicit eigenvalue/probability spectrum, applying the
/// small-eigenvalue cutoff. No validation; shared by the entropy routines.
double entropy_from_spectrum(std::span<const double> spectrum, EntropyUnit unit);

/// rho = sum_i w_i |v_i><v_i|.
DensityMatrix ensemble_to_density(const Ensemble& ensemble);

}  // namespace holoq
