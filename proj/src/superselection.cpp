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

#include "holoq/superselection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "holoq/constants.hpp"

namespace holoq {

namespace {

using Complex = std::complex<double>;

constexpr double kGramTol = 1e-10;
constexpr double kSingularGramRatio = 1e-10;
constexpr double kBoundaryMassTol = 1e-12;
constexpr double kDiscardWarnLevel = 0.05;

Eigen::VectorXcd apply_momentum(const Grid1D& grid, const Eigen::VectorXcd& psi,
                                double hbar) {
  Eigen::FFT<double> fft;
  std::vector<Complex> position(psi.data(), psi.data() + psi.size());
  std::vector<Complex> momentum;
  fft.fwd(momentum, position);
  const std::vector<double> k = grid.wavenumbers();
  for (std::size_t j = 0; j < momentum.size(); ++j) {
    momentum[j] *= hbar * k[j];
  }
  std::vector<Complex> out;
  fft.inv(out, momentum);
  return Eigen::Map<const Eigen::VectorXcd>(out.data(),
                                            static_cast<Eigen::Index>(out.size()));
}

Eigen::VectorXcd coherent_seed(const Grid1D& grid, double q, double p, double sigma_sq,
                               double hbar) {
  Eigen::VectorXcd amp(static_cast<Eigen::Index>(grid.size()));
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const double d = x - q;
    amp[static_cast<Eigen::Index>(j)] = std::exp(-d * d / (4.0 * sigma_sq) + i * p * x / hbar);
  }
  const double n = std::sqrt(amp.squaredNorm() * grid.spacing());
  return amp / n;
}

}  // namespace

PhaseSpaceLattice::PhaseSpaceLattice(double dQ, std::size_t n_q, std::size_t n_p,
                                     double q_origin, double p_origin, double hbar)
    : hbar_(hbar),
      h_(2.0 * kPi * hbar),
      dQ_(dQ),
      dP_(h_ / dQ),
      n_q_(n_q),
      n_p_(n_p),
      q_origin_(q_origin),
      p_origin_(p_origin) {
  if (!(hbar_ > 0.0)) {
    throw std::invalid_argument("PhaseSpaceLattice: hbar must be positive");
  }
  if (!(dQ_ > 0.0) || !std::isfinite(dQ_)) {
    throw std::invalid_argument("PhaseSpaceLattice: dQ must be positive and finite");
  }
  if (n_q_ == 0 || n_p_ == 0) {
    throw std::invalid_argument("PhaseSpaceLattice: needs at least one cell per axis");
  }
}

PhaseSpaceLattice PhaseSpaceLattice::centered(double dQ, std::size_t n_q, std::size_t n_p,
                                              double hbar) {
  const double h = 2.0 * kPi * hbar;
  const double dP = h / dQ;
  const double q0 = -0.5 * static_cast<double>(n_q - 1) * dQ;
  const double p0 = -0.5 * static_cast<double>(n_p - 1) * dP;
  return PhaseSpaceLattice(dQ, n_q, n_p, q0, p0, hbar);
}

double PhaseSpaceLattice::q_center(std::size_t j) const {
  if (j >= n_q_) {
    throw std::out_of_range("PhaseSpaceLattice: q index out of range");
  }
  return q_origin_ + static_cast<double>(j) * dQ_;
}

double PhaseSpaceLattice::p_center(std::size_t k) const {
  if (k >= n_p_) {
    throw std::out_of_range("PhaseSpaceLattice: p index out of range");
  }
  return p_origin_ + static_cast<double>(k) * dP_;
}

bool PhaseSpaceLattice::edge_cell(std::size_t j, std::size_t k) const {
  return j == 0 || j + 1 == n_q_ || k == 0 || k + 1 == n_p_;
}

CellBasis::CellBasis(PhaseSpaceLattice lattice, Grid1D grid, Eigen::MatrixXcd vectors,
                     std::vector<CellLabel> labels, double gram_deviation,
                     std::vector<double> parent_overlaps)
    : lattice_(lattice),
      grid_(grid),
      vectors_(std::move(vectors)),
      labels_(std::move(labels)),
      gram_deviation_(gram_deviation),
      parent_overlaps_(std::move(parent_overlaps)) {}

WaveFunction CellBasis::cell_state(std::size_t a) const {
  if (a >= size()) {
    throw std::out_of_range("CellBasis: cell index out of range");
  }
  return WaveFunction(grid_, vectors_.col(static_cast<Eigen::Index>(a)));
}

FineCommutatorResult fine_commutator_check(const Grid1D& grid,
                                           std::span<const WaveFunction> test_states,
                                           double hbar) {
  if (test_states.empty()) {
    throw std::invalid_argument("fine_commutator_check: needs at least one test state");
  }
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("fine_commutator_check: hbar must be positive");
  }
  FineCommutatorResult result;
  result.deviations.reserve(test_states.size());
  result.boundary_flagged.reserve(test_states.size());
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = grid.x(static_cast<std::size_t>(i));
  }

  bool any_clean = false;
  for (const WaveFunction& psi : test_states) {
    if (!(psi.grid() == grid)) {
      throw std::invalid_argument("fine_commutator_check: state grid differs");
    }
    const Eigen::VectorXcd& a = psi.amplitudes();
    const double edge_mass = (std::norm(a[0]) + std::norm(a[1]) + std::norm(a[n - 2]) +
                              std::norm(a[n - 1])) *
                             grid.spacing();
    const bool flagged = edge_mass > kBoundaryMassTol;

    const Eigen::VectorXcd p_psi = apply_momentum(grid, a, hbar);
    const Eigen::VectorXcd q_psi = x.array() * a.array();
    const Eigen::VectorXcd qp_psi = x.array() * p_psi.array();
    const Eigen::VectorXcd pq_psi = apply_momentum(grid, q_psi, hbar);
    const Complex expectation = a.dot(qp_psi - pq_psi) * grid.spacing();
    const double deviation = std::abs(expectation - Complex(0.0, hbar));

    result.deviations.push_back(deviation);
    result.boundary_flagged.push_back(flagged);
    if (flagged) {
      result.any_flagged = true;
    } else {
      result.max_deviation = any_clean ? std::max(result.max_deviation, deviation)
                                       : deviation;
      any_clean = true;
    }
  }
  if (!any_clean) {
    result.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

CellBasis build_cell_basis(const PhaseSpaceLattice& lattice, const Grid1D& grid) {
  if (lattice.dQ() / grid.spacing() < 8.0 - 1e-9) {
    throw std::invalid_argument("build_cell_basis: grid must resolve dQ with >= 8 points, got " +
                                std::to_string(lattice.dQ() / grid.spacing()));
  }
  const double q_lo = lattice.q_center(0) - 0.5 * lattice.dQ();
  const double q_hi = lattice.q_center(lattice.n_q() - 1) + 0.5 * lattice.dQ();
  if (q_lo < grid.x_min() || q_hi > grid.x_max()) {
    throw std::invalid_argument("build_cell_basis: cell window exceeds the grid range");
  }
  const double sigma_sq = 0.5 * lattice.hbar() * lattice.dQ() / lattice.dP();
  const double momentum_spread = 1.5 * lattice.hbar() / std::sqrt(sigma_sq);
  const double p_nyquist = lattice.hbar() * kPi / grid.spacing();
  const double p_extent = std::max(std::abs(lattice.p_center(0)),
                                   std::abs(lattice.p_center(lattice.n_p() - 1)));
  if (p_extent + momentum_spread > p_nyquist) {
    throw std::invalid_argument("build_cell_basis: momentum cells exceed the grid Nyquist range");
  }

  const std::size_t n_cells = lattice.n_cells();
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd seeds(n, static_cast<Eigen::Index>(n_cells));
  std::vector<CellLabel> labels(n_cells);
  for (std::size_t j = 0; j < lattice.n_q(); ++j) {
    for (std::size_t k = 0; k < lattice.n_p(); ++k) {
      const std::size_t a = lattice.cell_index(j, k);
      labels[a] = CellLabel{j, k, lattice.q_center(j), lattice.p_center(k),
                            lattice.edge_cell(j, k)};
      seeds.col(static_cast<Eigen::Index>(a)) =
          coherent_seed(grid, labels[a].q, labels[a].p, sigma_sq, lattice.hbar());
    }
  }

  const Eigen::MatrixXcd gram = seeds.adjoint() * seeds * grid.spacing();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("build_cell_basis: Gram eigensolve failed");
  }
  const Eigen::VectorXd ev = solver.eigenvalues();
  if (ev.minCoeff() < kSingularGramRatio * ev.maxCoeff()) {
    throw std::runtime_error("build_cell_basis: Gram matrix is numerically singular for " +
                             std::to_string(n_cells) + " cells (eigenvalue ratio " +
                             std::to_string(ev.minCoeff() / ev.maxCoeff()) + ")");
  }
  const Eigen::MatrixXcd inv_sqrt = solver.eigenvectors() *
                                    ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                                    solver.eigenvectors().adjoint();
  Eigen::MatrixXcd vectors = seeds * inv_sqrt;

  const Eigen::MatrixXcd check = vectors.adjoint() * vectors * grid.spacing();
  const double gram_deviation =
      (check - Eigen::MatrixXcd::Identity(check.rows(), check.cols())).cwiseAbs().maxCoeff();
  if (gram_deviation >= kGramTol) {
    throw std::runtime_error("build_cell_basis: orthogonalization residual " +
                             std::to_string(gram_deviation) + " exceeds 1e-10");
  }

  std::vector<double> overlaps(n_cells);
  for (std::size_t a = 0; a < n_cells; ++a) {
    const Eigen::Index col = static_cast<Eigen::Index>(a);
    overlaps[a] = std::abs(vectors.col(col).dot(seeds.col(col)) * grid.spacing());
  }

  return CellBasis(lattice, grid, std::move(vectors), std::move(labels), gram_deviation,
                   std::move(overlaps));
}

CoarseObservables build_coarse_observables(const CellBasis& basis) {
  const Eigen::Index n_cells = static_cast<Eigen::Index>(basis.size());
  CoarseObservables obs;
  obs.q_values.resize(n_cells);
  obs.p_values.resize(n_cells);
  for (Eigen::Index a = 0; a < n_cells; ++a) {
    obs.q_values[a] = basis.labels()[static_cast<std::size_t>(a)].q;
    obs.p_values[a] = basis.labels()[static_cast<std::size_t>(a)].p;
  }
  const Eigen::MatrixXcd& v = basis.vectors();
  const double dx = basis.grid().spacing();
  obs.Qc = v * obs.q_values.asDiagonal() * v.adjoint() * dx;
  obs.Pc = v * obs.p_values.asDiagonal() * v.adjoint() * dx;
  obs.commutator_frobenius = (obs.Qc * obs.Pc - obs.Pc * obs.Qc).norm();
  return obs;
}

CellMixture planck_cell_mixture(const DensityMatrix& rho, const CellBasis& basis) {
  if (rho.dim() != basis.grid().size()) {
    throw std::invalid_argument("planck_cell_mixture: rho dimension must match the grid");
  }
  CellMixture mixture;
  mixture.weights.resize(basis.size());
  const double dx = basis.grid().spacing();
  double sum = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Eigen::VectorXcd v = basis.vectors().col(static_cast<Eigen::Index>(a));
    const double w = std::max(0.0, (v.dot(rho.matrix() * v) * dx).real());
    mixture.weights[a] = w;
    sum += w;
  }
  mixture.discarded_weight = std::max(0.0, 1.0 - sum);
  mixture.discarded_warning = mixture.discarded_weight > kDiscardWarnLevel;
  return mixture;
}

Ensemble mixture_to_ensemble(const CellMixture& mixture, const CellBasis& basis) {
  if (mixture.weights.size() != basis.size()) {
    throw std::invalid_argument("mixture_to_ensemble: weight count does not match the basis");
  }
  double sum = 0.0;
  for (double w : mixture.weights) {
    sum += w;
  }
  if (!(sum > 0.0)) {
    throw std::invalid_argument("mixture_to_ensemble: kept weight is zero");
  }
  const double root_dx = std::sqrt(basis.grid().spacing());
  std::vector<EnsembleMember> members;
  members.reserve(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (mixture.weights[a] <= 0.0) {
      continue;
    }
    // Euclidean-unit convention for ensemble members: sqrt(dx) scaling.
    Eigen::VectorXcd state = basis.vectors().col(static_cast<Eigen::Index>(a)) * root_dx;
    members.push_back(EnsembleMember{mixture.weights[a] / sum, std::move(state)});
  }
  return Ensemble(std::move(members));
}

void write_cell_basis_csv(const CellBasis& basis, std::ostream& out) {
  out << "x";
  for (std::size_t a = 0; a < basis.size(); ++a) {
    out << ",re" << a << ",im" << a;
  }
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < basis.grid().size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", basis.grid().x(i));
    out << buf;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Complex c = basis.vectors()(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(a));
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", c.real(), c.imag());
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace holoq
