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

#include <numbers>

namespace holoq {

/// Bit factor b = ln 2: converts entropy and action bookkeeping from nats
/// to bits (I = S_E / (hbar * b)).
inline constexpr double kBitFactor = std::numbers::ln2;

/// Eigenvalues and probabilities below this cutoff contribute zero to
/// entropy sums (lambda * log(lambda) -> 0), so floating-point noise around
/// zero never produces log(0).
inline constexpr double kEntropyEigenvalueCutoff = 1e-12;

inline constexpr double kPi = std::numbers::pi;

}  // namespace holoq
