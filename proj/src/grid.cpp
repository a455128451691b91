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

#include "holoq/grid.hpp"

#include <stdexcept>
#include <string>

#include "holoq/constants.hpp"

namespace holoq {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
  if (n_points < 8 || !is_power_of_two(n_points)) {
    throw std::invalid_argument("Grid1D: n_points must be a power of two >= 8, got " +
                                std::to_string(n_points));
  }
  if (!(x_max > x_min)) {
    throw std::invalid_argument("Grid1D: x_max must exceed x_min");
  }
  dx_ = (x_max - x_min) / static_cast<double>(n_points);
}

std::vector<double> Grid1D::wavenumbers() const {
  std::vector<double> k(n_points_);
  const double dk = 2.0 * kPi / (static_cast<double>(n_points_) * dx_);
  const std::size_t half = n_points_ / 2;
  for (std::size_t j = 0; j < n_points_; ++j) {
    const double idx = (j < half) ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n_points_);
    k[j] = dk * idx;
  }
  return k;
}

}  // namespace holoq
