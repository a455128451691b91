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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "holoq/holotn.hpp"
#include "holoq/random.hpp"

namespace holoq_test {

// 99th-percentile chi-squared criticals for the degrees of freedom used in
// these tests (standard table values; a failing statistic at alpha = 0.01
// is a real red flag, not noise).
inline constexpr double kChi2Crit99Dof1 = 6.6349;
inline constexpr double kChi2Crit99Dof49 = 74.9195;

// Kolmogorov-Smirnov critical coefficient at alpha = 0.01 for the
// large-sample approximation D_crit = c / (sqrt(n) + 0.12 + 0.11/sqrt(n)).
inline constexpr double kKsCoeff99 = 1.62762;

inline double chi_squared(std::span<const double> observed,
                          std::span<const double> expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

inline double ks_critical(std::size_t n) {
  const double root = std::sqrt(static_cast<double>(n));
  return kKsCoeff99 / (root + 0.12 + 0.11 / root);
}

// D = sup |empirical CDF - cdf|. Samples are copied and sorted.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double normal_cdf(double x, double mean, double sigma) {
  return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0)));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

template <typename F>
double integrate_simpson(F f, double lo, double hi, std::size_t n_div) {
  const double h = (hi - lo) / static_cast<double>(n_div);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < n_div; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + static_cast<double>(i) * h);
  }
  return sum * h / 3.0;
}

// Haar-ish unitary: QR of a complex Gaussian matrix with the R diagonal
// phases absorbed, good enough for conjugating test fixtures.
inline Eigen::MatrixXcd random_unitary(std::size_t dim, holoq::rng::RandomStream& rs) {
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = std::complex<double>(rs.gaussian(), rs.gaussian());
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

// Exhaustive minimal cut: leaves in [begin, end) pinned to the interval
// side, remaining leaves pinned to the complement, every internal site
// free. Only for small networks (2^internal assignments).
inline std::size_t brute_force_min_cut(const holoq::MeraNetwork& net, std::size_t begin,
                                       std::size_t end) {
  const std::size_t n_leaves = net.n_leaves();
  const std::size_t n_sites = net.n_sites();
  const std::size_t n_internal = n_sites - n_leaves;
  if (end - begin == n_leaves) {
    return 0;
  }
  std::vector<int> side(n_sites, 0);
  for (std::size_t i = 0; i < n_leaves; ++i) {
    side[i] = (i >= begin && i < end) ? 1 : 0;
  }
  std::size_t best = net.n_bonds() + 1;
  for (std::uint64_t mask = 0; mask < (1ull << n_internal); ++mask) {
    for (std::size_t i = 0; i < n_internal; ++i) {
      side[n_leaves + i] = (mask >> i) & 1ull;
    }
    std::size_t crossing = 0;
    for (const auto& bond : net.bonds()) {
      crossing += side[bond.from] != side[bond.to] ? 1 : 0;
    }
    best = std::min(best, crossing);
  }
  return best;
}

}  // namespace holoq_test
