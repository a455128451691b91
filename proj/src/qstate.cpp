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

#include "holoq/qstate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "holoq/constants.hpp"

namespace holoq {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;
constexpr double kWeightSumTol = 1e-12;

double unit_scale(EntropyUnit unit) {
  return unit == EntropyUnit::bits ? kBitFactor : 1.0;
}

void check_hermitian_unit_trace(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: entries must be a nonempty square matrix");
  }
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (max |rho - rho^dagger| = " +
                                std::to_string(herm_dev) + ")");
  }
  const std::complex<double> tr = m.trace();
  if (std::abs(tr - std::complex<double>(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace must be 1, got " +
                                std::to_string(tr.real()));
  }
}

}  // namespace

WaveFunction::WaveFunction(Grid1D grid, Eigen::VectorXcd amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != grid_.size()) {
    throw std::invalid_argument("WaveFunction: amplitude count must match grid size");
  }
  const double n = std::sqrt(amplitudes_.squaredNorm() * grid_.spacing());
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("WaveFunction: amplitudes must have finite nonzero norm");
  }
  amplitudes_ /= n;
}

double WaveFunction::norm() const {
  return std::sqrt(amplitudes_.squaredNorm() * grid_.spacing());
}

std::complex<double> WaveFunction::inner(const WaveFunction& other) const {
  if (!(grid_ == other.grid_)) {
    throw std::invalid_argument("WaveFunction::inner: grids differ");
  }
  return amplitudes_.dot(other.amplitudes_) * grid_.spacing();
}

double WaveFunction::mean_position() const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    m += grid_.x(i) * std::norm(amplitudes_[static_cast<Eigen::Index>(i)]);
  }
  return m * grid_.spacing();
}

double WaveFunction::position_variance() const {
  const double mean = mean_position();
  double v = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double d = grid_.x(i) - mean;
    v += d * d * std::norm(amplitudes_[static_cast<Eigen::Index>(i)]);
  }
  return v * grid_.spacing();
}

std::vector<double> WaveFunction::probability_density() const {
  std::vector<double> p(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    p[i] = std::norm(amplitudes_[static_cast<Eigen::Index>(i)]);
  }
  return p;
}

WaveFunction WaveFunction::conjugate() const {
  return wavefunction_detail::unchecked(grid_, amplitudes_.conjugate());
}

double WaveFunction::pure_state_entropy(EntropyUnit unit) const {
  const double lambda = amplitudes_.squaredNorm() * grid_.spacing();
  const double spectrum[] = {lambda};
  return entropy_from_spectrum(spectrum, unit);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  check_hermitian_unit_trace(entries_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite (min eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()) + ")");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& v) {
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("DensityMatrix::pure: vector must have finite nonzero norm");
  }
  Eigen::MatrixXcd m = (v * v.adjoint()) / n2;
  return DensityMatrix(std::move(m), Trusted{});
}

DensityMatrix DensityMatrix::from_wavefunction(const WaveFunction& psi) {
  Eigen::MatrixXcd m = psi.amplitudes() * psi.amplitudes().adjoint() * psi.grid().spacing();
  // Normalized wavefunctions give trace 1 up to rounding; rescale exactly.
  m /= m.trace().real();
  return DensityMatrix(std::move(m), Trusted{});
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix density_detail::trusted(Eigen::MatrixXcd entries) {
  check_hermitian_unit_trace(entries);
  return DensityMatrix(std::move(entries), DensityMatrix::Trusted{});
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) {
    throw std::invalid_argument("Ensemble: needs at least one member");
  }
  const Eigen::Index dim = members_.front().state.size();
  double sum = 0.0;
  for (const auto& m : members_) {
    if (m.state.size() != dim) {
      throw std::invalid_argument("Ensemble: member state dimensions differ");
    }
    if (m.weight < 0.0 || m.weight > 1.0) {
      throw std::invalid_argument("Ensemble: weights must lie in [0, 1]");
    }
    if (std::abs(m.state.squaredNorm() - 1.0) > 1e-10) {
      throw std::invalid_argument("Ensemble: member states must be unit vectors");
    }
    sum += m.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("Ensemble: weights must sum to 1, got " + std::to_string(sum));
  }
}

double entropy_from_spectrum(std::span<const double> spectrum, EntropyUnit unit) {
  double s = 0.0;
  for (double lambda : spectrum) {
    if (lambda > kEntropyEigenvalueCutoff) {
      s -= lambda * std::log(lambda);
    }
  }
  return s / unit_scale(unit);
}

double vn_entropy(const DensityMatrix& rho, EntropyUnit unit) {
  const Eigen::VectorXd ev = rho.eigenvalues();
  return entropy_from_spectrum(std::span<const double>(ev.data(),
                                                       static_cast<std::size_t>(ev.size())),
                               unit);
}

double shannon_entropy(std::span<const double> p, EntropyUnit unit) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) {
      throw std::invalid_argument("shannon_entropy: distribution has a negative entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("shannon_entropy: probabilities must sum to 1, got " +
                                std::to_string(sum));
  }
  return entropy_from_spectrum(p, unit);
}

DensityMatrix ensemble_to_density(const Ensemble& ensemble) {
  const Eigen::Index dim = ensemble.members().front().state.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& m : ensemble.members()) {
    rho += m.weight * (m.state * m.state.adjoint());
  }
  return density_detail::trusted(std::move(rho));
}

}  // namespace holoq
