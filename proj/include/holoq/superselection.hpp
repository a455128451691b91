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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "holoq/grid.hpp"
#include "holoq/qstate.hpp"

namespace holoq {

/// Rectangular window of phase-space cells of area dQ * dP = h = 2 pi hbar.
/// dP is derived from dQ at construction, so the area constraint holds by
/// definition rather than by a tolerance.
class PhaseSpaceLattice {
 public:
  /// q_origin / p_origin are the centers of cell (0, 0); cell (j, k) sits
  /// at (q_origin + j dQ, p_origin + k dP).
  PhaseSpaceLattice(double dQ, std::size_t n_q, std::size_t n_p, double q_origin,
                    double p_origin, double hbar = 1.0);

  /// Window of n_q x n_p cells centered on the phase-space origin.
  static PhaseSpaceLattice centered(double dQ, std::size_t n_q, std::size_t n_p,
                                    double hbar = 1.0);

  double hbar() const { return hbar_; }
  double h() const { return h_; }
  double dQ() const { return dQ_; }
  double dP() const { return dP_; }
  std::size_t n_q() const { return n_q_; }
  std::size_t n_p() const { return n_p_; }
  std::size_t n_cells() const { return n_q_ * n_p_; }

  double q_center(std::size_t j) const;
  double p_center(std::size_t k) const;

  /// Row-major flattening, j outer and k inner.
  std::size_t cell_index(std::size_t j, std::size_t k) const { return j * n_p_ + k; }

  /// True on the window boundary; edge cells see truncated neighborhoods
  /// and are excluded from interior-locality contracts.
  bool edge_cell(std::size_t j, std::size_t k) const;

 private:
  double hbar_;
  double h_;
  double dQ_;
  double dP_;
  std::size_t n_q_;
  std::size_t n_p_;
  double q_origin_;
  double p_origin_;
};

struct CellLabel {
  std::size_t j = 0;
  std::size_t k = 0;
  double q = 0.0;
  double p = 0.0;
  bool edge = false;
};

/// Orthonormal family of cell-localized states on a grid, one vector per
/// lattice cell. Columns of vectors() are orthonormal under the dx-weighted
/// inner product; construction enforces max |Gram - I| < 1e-10.
class CellBasis {
 public:
  const PhaseSpaceLattice& lattice() const { return lattice_; }
  const Grid1D& grid() const { return grid_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  std::span<const CellLabel> labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  /// Worst deviation of the recomputed Gram matrix from the identity.
  double gram_deviation() const { return gram_deviation_; }

  /// |<v_a|g_a>| with g_a the coherent seed of cell a; > 0.9 for interior
  /// cells (the orthogonalized vectors stay put).
  std::span<const double> parent_overlaps() const { return parent_overlaps_; }

  WaveFunction cell_state(std::size_t a) const;

 private:
  CellBasis(PhaseSpaceLattice lattice, Grid1D grid, Eigen::MatrixXcd vectors,
            std::vector<CellLabel> labels, double gram_deviation,
            std::vector<double> parent_overlaps);

  PhaseSpaceLattice lattice_;
  Grid1D grid_;
  Eigen::MatrixXcd vectors_;
  std::vector<CellLabel> labels_;
  double gram_deviation_;
  std::vector<double> parent_overlaps_;

  friend CellBasis build_cell_basis(const PhaseSpaceLattice&, const Grid1D&);
};

/// Fine-grained canonical commutator probe. deviations[i] is
/// |<psi_i|[Q,P]|psi_i> - i hbar| with Q the grid position operator and P
/// the spectral momentum operator. States carrying probability mass on the
/// outermost grid points are flagged and excluded from max_deviation (the
/// periodic momentum operator is not canonical across the wrap).
struct FineCommutatorResult {
  double max_deviation = 0.0;
  std::vector<double> deviations;
  std::vector<bool> boundary_flagged;
  bool any_flagged = false;
};

FineCommutatorResult fine_commutator_check(const Grid1D& grid,
                                           std::span<const WaveFunction> test_states,
                                           double hbar = 1.0);

/// Builds the orthonormal cell family: Gaussian coherent seeds at the cell
/// centers (width sigma^2 = (hbar/2) dQ/dP, so the position and momentum
/// widths split the cell symmetrically), then Loewdin symmetric
/// orthogonalization S^(-1/2). Requires >= 8 grid points per dQ and all
/// cells inside the grid window; throws std::runtime_error with the cell
/// count when the Gram matrix is numerically singular.
CellBasis build_cell_basis(const PhaseSpaceLattice& lattice, const Grid1D& grid);

/// Coarse position/momentum pair sharing the cell eigenbasis. q_values and
/// p_values list the spectra (cell centers) per basis vector; Qc and Pc are
/// the grid-space operators sum_a q_a |v_a><v_a|. They commute by
/// construction; commutator_frobenius records the measured residual.
struct CoarseObservables {
  Eigen::VectorXd q_values;
  Eigen::VectorXd p_values;
  Eigen::MatrixXcd Qc;
  Eigen::MatrixXcd Pc;
  double commutator_frobenius = 0.0;
};

CoarseObservables build_coarse_observables(const CellBasis& basis);

/// Diagonal of rho in the cell family. weights[a] = <v_a|rho|v_a> is kept
/// raw (no renormalization); discarded_weight = 1 - sum is the population
/// outside the family, with a warning flag above 5 percent.
struct CellMixture {
  std::vector<double> weights;
  double discarded_weight = 0.0;
  bool discarded_warning = false;
};

CellMixture planck_cell_mixture(const DensityMatrix& rho, const CellBasis& basis);

/// Renormalizes a mixture onto the kept cells and packages it as a valid
/// Ensemble (weights sum to 1). Throws if the kept weight is zero.
Ensemble mixture_to_ensemble(const CellMixture& mixture, const CellBasis& basis);

/// Plain-text dump: header "x,re0,im0,..." and one row per grid point.
void write_cell_basis_csv(const CellBasis& basis, std::ostream& out);

}  // namespace holoq
