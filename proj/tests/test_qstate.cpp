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

#include "holoq/grid.hpp"
#include "holoq/qstate.hpp"

using namespace holoq;

TEST_SUITE("qstate") {

TEST_CASE("grid validates the point count") {
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(1.0, 0.0, 64), std::invalid_argument);
  const Grid1D g(-10.0, 10.0, 64);
  CHECK(g.spacing() == doctest::Approx(20.0 / 64.0).epsilon(1e-15));
  CHECK(g.x(0) == -10.0);
  CHECK(g.x(32) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("wavenumbers come out in FFT order") {
  const Grid1D g(0.0, 8.0, 8);
  const std::vector<double> k = g.wavenumbers();
  const double base = 2.0 * 3.14159265358979323846 / 8.0;
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(base).epsilon(1e-14));
  CHECK(k[4] == doctest::Approx(-4.0 * base).epsilon(1e-14));
  CHECK(k[7] == doctest::Approx(-base).epsilon(1e-14));
}

TEST_CASE("wave function construction normalizes") {
  const Grid1D g(-10.0, 10.0, 64);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Constant(64, {2.0, 1.0});
  const WaveFunction psi(g, amp);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(psi.inner(psi) - 1.0) < 1e-14);
  CHECK(psi.pure_state_entropy() < 1e-12);
}

TEST_CASE("wave function rejects the zero vector") {
  const Grid1D g(-10.0, 10.0, 64);
  CHECK_THROWS_AS(WaveFunction(g, Eigen::VectorXcd::Zero(64)), std::invalid_argument);
  CHECK_THROWS_AS(WaveFunction(g, Eigen::VectorXcd::Ones(32)), std::invalid_argument);
}

TEST_CASE("position moments of a symmetric profile") {
  const Grid1D g(-10.0, 10.0, 256);
  Eigen::VectorXcd amp(256);
  for (std::size_t i = 0; i < 256; ++i) {
    const double x = g.x(i) - 1.5;
    amp[static_cast<Eigen::Index>(i)] = std::exp(-x * x);
  }
  const WaveFunction psi(g, amp);
  CHECK(psi.mean_position() == doctest::Approx(1.5).epsilon(1e-10));
  // |psi|^2 ~ exp(-2 (x - 1.5)^2) has variance 1/4.
  CHECK(psi.position_variance() == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("shannon entropy reference values") {
  const std::vector<double> fair = {0.5, 0.5};
  CHECK(shannon_entropy(fair) == 1.0);  // exact in IEEE double
  const std::vector<double> skew = {0.9, 0.1};
  CHECK(shannon_entropy(skew) == doctest::Approx(0.4689955935892812).epsilon(1e-14));
  const std::vector<double> point = {1.0, 0.0};
  CHECK(shannon_entropy(point) == 0.0);
  const std::vector<double> nats = {0.5, 0.5};
  CHECK(shannon_entropy(nats, EntropyUnit::nats) ==
        doctest::Approx(0.6931471805599453).epsilon(1e-14));
}

TEST_CASE("shannon entropy validates the distribution") {
  const std::vector<double> not_normalized = {0.5, 0.4};
  CHECK_THROWS_AS(shannon_entropy(not_normalized), std::invalid_argument);
  const std::vector<double> negative = {1.5, -0.5};
  CHECK_THROWS_AS(shannon_entropy(negative), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, std::invalid_argument);

  Eigen::MatrixXcd non_hermitian(2, 2);
  non_hermitian << 0.5, 0.3, -0.3, 0.5;
  CHECK_THROWS_AS(DensityMatrix{non_hermitian}, std::invalid_argument);

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{indefinite}, std::invalid_argument);

  Eigen::MatrixXcd ok(2, 2);
  ok << 0.75, 0.0, 0.0, 0.25;
  CHECK_NOTHROW(DensityMatrix{ok});
}

TEST_CASE("von Neumann entropy of a (3/4, 1/4) mixture") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.75, 0.0, 0.0, 0.25;
  const DensityMatrix rho(m);
  CHECK(vn_entropy(rho) == doctest::Approx(0.8112781244591328).epsilon(1e-13));
  CHECK(vn_entropy(rho, EntropyUnit::nats) ==
        doctest::Approx(0.8112781244591328 * 0.6931471805599453).epsilon(1e-13));
}

TEST_CASE("pure states carry zero entropy, mixed ones log2(d)") {
  Eigen::VectorXcd v(3);
  v << 1.0, std::complex<double>(0.0, 2.0), -1.0;
  CHECK(vn_entropy(DensityMatrix::pure(v)) < 1e-12);
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(vn_entropy(DensityMatrix{mixed}) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("density from wavefunction matches the grid inner product") {
  const Grid1D g(-10.0, 10.0, 32);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Random(32);
  const WaveFunction psi(g, amp);
  const DensityMatrix rho = DensityMatrix::from_wavefunction(psi);
  CHECK(rho.dim() == 32);
  CHECK(vn_entropy(rho) < 1e-9);
  // trace rho = sum |psi_i|^2 dx = 1 by construction
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("ensemble validation") {
  Eigen::VectorXcd e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  CHECK_NOTHROW(Ensemble({{0.75, e0}, {0.25, e1}}));
  // weights must sum to one
  CHECK_THROWS_AS(Ensemble({{0.7, e0}, {0.25, e1}}), std::invalid_argument);
  // members must be unit vectors
  CHECK_THROWS_AS(Ensemble({{1.0, 2.0 * e0}}), std::invalid_argument);
  // weights must lie in [0, 1]
  CHECK_THROWS_AS(Ensemble({{1.25, e0}, {-0.25, e1}}), std::invalid_argument);
}

TEST_CASE("ensemble to density reproduces the spectrum") {
  Eigen::VectorXcd e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  const Ensemble ensemble({{0.75, e0}, {0.25, e1}});
  const DensityMatrix rho = ensemble_to_density(ensemble);
  CHECK(vn_entropy(rho) == doctest::Approx(0.8112781244591328).epsilon(1e-13));
  CHECK(ensemble.pure() == false);
}

TEST_CASE("entropy_from_spectrum applies the cutoff") {
  const std::vector<double> with_noise = {1.0, 1e-13, -1e-13};
  CHECK(entropy_from_spectrum(with_noise, EntropyUnit::bits) == 0.0);
  const std::vector<double> fair = {0.5, 0.5};
  CHECK(entropy_from_spectrum(fair, EntropyUnit::bits) == 1.0);
}

}  // TEST_SUITE
