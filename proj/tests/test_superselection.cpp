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

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "holoq/lorentzian.hpp"
#include "holoq/superselection.hpp"

using namespace holoq;

namespace {

Grid1D fine_grid() { return Grid1D(-10.0, 10.0, 256); }

PhaseSpaceLattice window_4x4() { return PhaseSpaceLattice::centered(2.0, 4, 4, 1.0); }

}  // namespace

TEST_SUITE("superselection") {

TEST_CASE("cell area is h by construction") {
  const PhaseSpaceLattice lattice = window_4x4();
  CHECK(lattice.h() == 2.0 * 3.14159265358979323846);
  CHECK(lattice.dQ() * lattice.dP() == lattice.h());  // dP = h / dQ, exact here
  CHECK(lattice.dP() == doctest::Approx(3.141592653589793).epsilon(1e-15));
  const PhaseSpaceLattice scaled(0.5, 2, 2, 0.0, 0.0, 2.0);
  CHECK(scaled.h() == doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-15));
  CHECK(scaled.dQ() * scaled.dP() == scaled.h());
}

TEST_CASE("lattice geometry and edge classification") {
  const PhaseSpaceLattice lattice = window_4x4();
  CHECK(lattice.n_cells() == 16);
  // centered window: centers symmetric around the origin
  CHECK(lattice.q_center(0) == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(lattice.q_center(3) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(lattice.q_center(1) + lattice.q_center(2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lattice.cell_index(1, 2) == 6);
  CHECK_THROWS_AS(lattice.q_center(4), std::out_of_range);
  CHECK_THROWS_AS(lattice.p_center(17), std::out_of_range);
  CHECK(lattice.edge_cell(0, 2));
  CHECK(lattice.edge_cell(2, 3));
  CHECK_FALSE(lattice.edge_cell(1, 1));
  CHECK_THROWS_AS(PhaseSpaceLattice(-1.0, 2, 2, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PhaseSpaceLattice(1.0, 0, 2, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("cell basis is orthonormal and stays near its seeds") {
  const CellBasis basis = build_cell_basis(window_4x4(), fine_grid());
  CHECK(basis.size() == 16);
  CHECK(basis.gram_deviation() < 1e-10);
  // recompute the Gram matrix independently
  const Eigen::MatrixXcd& v = basis.vectors();
  const Eigen::MatrixXcd gram = v.adjoint() * v * fine_grid().spacing();
  const double dev =
      (gram - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff();
  CHECK(dev < 1e-10);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    CHECK(basis.parent_overlaps()[a] > 0.9);
    if (!basis.labels()[a].edge) {
      CHECK(basis.parent_overlaps()[a] > 0.95);
    }
  }
  // labels walk the lattice row-major
  CHECK(basis.labels()[0].j == 0);
  CHECK(basis.labels()[0].k == 0);
  CHECK(basis.labels()[5].j == 1);
  CHECK(basis.labels()[5].k == 1);
  CHECK(basis.labels()[0].edge);
  CHECK_FALSE(basis.labels()[5].edge);
  const WaveFunction state = basis.cell_state(5);
  CHECK(state.norm() == doctest::Approx(1.0).epsilon(1e-10));
  // orthogonalization nudges the seed a little but keeps it in its cell
  CHECK(std::abs(state.mean_position() - basis.labels()[5].q) < 0.1);
}

TEST_CASE("cell basis rejects unresolvable or out-of-range windows") {
  // dQ / dx = 6.4 < 8
  CHECK_THROWS_AS(build_cell_basis(window_4x4(), Grid1D(-10.0, 10.0, 64)),
                  std::invalid_argument);
  // window wider than the grid
  CHECK_THROWS_AS(build_cell_basis(PhaseSpaceLattice::centered(2.0, 12, 2, 1.0),
                                   fine_grid()),
                  std::invalid_argument);
  // momentum extent beyond the grid band
  CHECK_THROWS_AS(build_cell_basis(PhaseSpaceLattice::centered(2.0, 4, 32, 1.0),
                                   fine_grid()),
                  std::invalid_argument);
}

TEST_CASE("coarse observables commute") {
  const CellBasis basis = build_cell_basis(window_4x4(), fine_grid());
  const CoarseObservables coarse = build_coarse_observables(basis);
  CHECK(coarse.commutator_frobenius < 1e-12);
  const double herm_q = (coarse.Qc - coarse.Qc.adjoint()).cwiseAbs().maxCoeff();
  const double herm_p = (coarse.Pc - coarse.Pc.adjoint()).cwiseAbs().maxCoeff();
  CHECK(herm_q < 1e-12);
  CHECK(herm_p < 1e-12);
  CHECK(coarse.q_values.size() == 16);
  // spectra are the cell centers
  CHECK(coarse.q_values.minCoeff() == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(coarse.q_values.maxCoeff() == doctest::Approx(3.0).epsilon(1e-12));
  // Qc reproduces q on its own eigenvectors: Qc v_a = q_a v_a
  const Eigen::MatrixXcd& v = basis.vectors();
  const Eigen::VectorXcd image = coarse.Qc * v.col(5);
  const Eigen::VectorXcd expected = coarse.q_values[5] * v.col(5);
  CHECK((image - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fine commutator sits at i hbar for interior packets") {
  const Grid1D grid(-40.0, 40.0, 1024);
  std::vector<WaveFunction> states;
  states.push_back(gaussian_packet(grid, {.x0 = 0.0, .sigma0 = 1.0, .p0 = 0.0}, 1.0));
  states.push_back(gaussian_packet(grid, {.x0 = -6.0, .sigma0 = 2.0, .p0 = 1.5}, 1.0));
  states.push_back(gaussian_packet(grid, {.x0 = 9.0, .sigma0 = 0.5, .p0 = -3.0}, 1.0));
  const FineCommutatorResult r = fine_commutator_check(grid, states, 1.0);
  CHECK_FALSE(r.any_flagged);
  CHECK(r.max_deviation < 1e-6);  // measured ~1e-15
  CHECK(r.deviations.size() == 3);
  // scaling with hbar
  const FineCommutatorResult r2 = fine_commutator_check(grid, states, 0.5);
  CHECK_FALSE(r2.any_flagged);
  CHECK(r2.max_deviation < 1e-6 * 0.5);
}

TEST_CASE("states touching the wrap are flagged, not scored") {
  const Grid1D grid(-10.0, 10.0, 256);
  Eigen::VectorXcd hugging = Eigen::VectorXcd::Zero(256);
  hugging[0] = 1.0;
  hugging[1] = 1.0;
  hugging[255] = 1.0;
  std::vector<WaveFunction> states;
  states.emplace_back(grid, hugging);
  states.push_back(gaussian_packet(grid, {.x0 = 0.0, .sigma0 = 0.8, .p0 = 0.0}, 1.0));
  const FineCommutatorResult r = fine_commutator_check(grid, states, 1.0);
  CHECK(r.any_flagged);
  CHECK(r.boundary_flagged[0]);
  CHECK_FALSE(r.boundary_flagged[1]);
  // flagged state is excluded from the max
  CHECK(r.max_deviation < 1e-6);
}

TEST_CASE("pure coherent state concentrates on its cell") {
  const Grid1D grid = fine_grid();
  const CellBasis basis = build_cell_basis(window_4x4(), grid);
  // density of the orthonormal state of cell (1, 1): index 5
  const WaveFunction psi = basis.cell_state(5);
  const DensityMatrix rho = DensityMatrix::from_wavefunction(psi);
  const CellMixture mixture = planck_cell_mixture(rho, basis);
  CHECK(mixture.weights.size() == 16);
  CHECK(mixture.weights[5] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mixture.discarded_weight < 1e-9);
  CHECK_FALSE(mixture.discarded_warning);
  double best = 0.0;
  for (const double w : mixture.weights) {
    best = std::max(best, w);
  }
  CHECK(best == doctest::Approx(mixture.weights[5]).epsilon(1e-12));
}

TEST_CASE("wide packets spread over cells and convert to a valid ensemble") {
  const Grid1D grid = fine_grid();
  const CellBasis basis = build_cell_basis(window_4x4(), grid);
  const WaveFunction psi = gaussian_packet(grid, {.x0 = 0.3, .sigma0 = 1.2, .p0 = 0.4}, 1.0);
  const DensityMatrix rho = DensityMatrix::from_wavefunction(psi);
  const CellMixture mixture = planck_cell_mixture(rho, basis);
  double sum = 0.0;
  for (const double w : mixture.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum <= 1.0 + 1e-9);
  CHECK(mixture.discarded_weight == doctest::Approx(1.0 - sum).epsilon(1e-9));
  const Ensemble ensemble = mixture_to_ensemble(mixture, basis);
  CHECK(ensemble.size() == 16);
  double wsum = 0.0;
  for (const auto& m : ensemble.members()) {
    wsum += m.weight;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  // superselected mixture carries entropy up to log2(16)
  const double s = vn_entropy(ensemble_to_density(ensemble));
  CHECK(s > 0.0);
  CHECK(s <= 4.0 + 1e-9);
}

TEST_CASE("mixture conversion guards") {
  const CellBasis basis = build_cell_basis(window_4x4(), fine_grid());
  CellMixture empty;
  empty.weights.assign(16, 0.0);
  empty.discarded_weight = 1.0;
  CHECK_THROWS_AS(mixture_to_ensemble(empty, basis), std::invalid_argument);
  CellMixture mismatched;
  mismatched.weights.assign(4, 0.25);
  CHECK_THROWS_AS(mixture_to_ensemble(mismatched, basis), std::invalid_argument);
}

}  // TEST_SUITE
