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
#include <vector>

namespace holoq {

/// Uniform periodic 1D spatial grid. The point count must be a power of
/// two (>= 8) so spectral operations stay exact and fast.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return dx_; }

  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx_; }

  /// Angular wavenumbers in FFT ordering: k_j = 2*pi*j/(N*dx) for
  /// j < N/2 and 2*pi*(j-N)/(N*dx) otherwise.
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_points_;
  double dx_;
};

}  // namespace holoq
