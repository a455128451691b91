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

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "holoq/qstate.hpp"

namespace holoq {

/// Complete family of orthogonal projectors {P_i}: Hermitian, idempotent,
/// mutually orthogonal and summing to the identity (all within 1e-12).
/// One label per outcome.
class ProjectiveFamily {
 public:
  ProjectiveFamily(std::vector<Eigen::MatrixXcd> projectors,
                   std::vector<std::string> labels);

  /// Qubit sigma_z eigenprojectors |0><0|, |1><1| with labels "z+", "z-".
  static ProjectiveFamily pauli_z();
  /// Qubit sigma_x eigenprojectors |+><+|, |-><-| with labels "x+", "x-".
  static ProjectiveFamily pauli_x();
  /// Rank-1 projectors onto the standard basis of a dim-level system.
  static ProjectiveFamily computational(std::size_t dim);

  std::span<const Eigen::MatrixXcd> projectors() const { return projectors_; }
  std::span<const std::string> labels() const { return labels_; }
  std::size_t size() const { return projectors_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(projectors_.front().rows()); }

 private:
  std::vector<Eigen::MatrixXcd> projectors_;
  std::vector<std::string> labels_;
};

/// Non-selective measurement rho -> sum_i P_i rho P_i. Kills coherences
/// between outcome sectors; trace-preserving, idempotent, and entropy
/// non-decreasing.
DensityMatrix nonselective(const DensityMatrix& rho, const ProjectiveFamily& family);

/// Born probabilities tr(P_i rho), clamped at 0 against rounding. Sums to
/// 1 because the family is complete.
std::vector<double> born_distribution(const DensityMatrix& rho,
                                      const ProjectiveFamily& family);

/// Result of reading one event out of a decohered mixture. partial marks a
/// degenerate (rank > 1) collapse that leaves residual entropy behind.
struct ReadEvent {
  std::size_t outcome = 0;
  std::string label;
  DensityMatrix post_state;
  double info_gain_bits = 0.0;
  bool partial = false;
};

/// Samples outcome k with probability tr(P_k rho) and collapses to
/// P_k rho P_k / tr(P_k rho). The input must already be decohered: it has
/// to commute with every projector within 1e-10 (i.e. be an output of
/// nonselective), otherwise std::invalid_argument. info_gain_bits is the
/// Shannon entropy of the Born distribution, the expected information
/// acquired by the reading system. Deterministic for a fixed seed.
ReadEvent read_event(const DensityMatrix& rho_mixed, const ProjectiveFamily& family,
                     std::uint64_t seed);

enum class Regime { lorentzian, euclidean };
enum class PhaseKind { unitary, post_nonselective, post_read, euclidean_dual };

std::string to_string(Regime regime);
std::string to_string(PhaseKind kind);

/// One phase of the two-row regime bookkeeping. Valid combinations:
///   unitary            S = 0, I = 0 (within 1e-9 bits)
///   post_nonselective  S > 0, I >= 0 (I = expected read information)
///   post_read          S = 0, I = 0; or S > 0 when partial (degenerate read)
///   euclidean_dual     S > 0 (the network area), I > 0, dual_of >= 0
/// Spans are (start, end) real time for Lorentzian records and imaginary
/// time for Euclidean ones; end > start always.
struct PhaseRecord {
  Regime regime = Regime::lorentzian;
  PhaseKind kind = PhaseKind::unitary;
  double entropy_bits = 0.0;
  double information_bits = 0.0;
  double span_start = 0.0;
  double span_end = 0.0;
  bool partial = false;
  int dual_of = -1;

  void validate() const;
};

/// Ordered record list. Construction validates every record plus the
/// grammar: the Lorentzian subsequence matches
///   unitary (post_nonselective post_read)*
/// in forward time order, and every Euclidean record annotates exactly one
/// zero-entropy Lorentzian record (kinds unitary or post_read). Records
/// spanning a measurement window never carry a dual.
class RegimeLedger {
 public:
  explicit RegimeLedger(std::vector<PhaseRecord> records);

  std::span<const PhaseRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  std::size_t n_lorentzian() const;
  std::size_t n_duals() const;

 private:
  std::vector<PhaseRecord> records_;
};

/// Free evolution over [t_start, t_end].
struct UnitarySpan {
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Projective measurement occupying the window [t_start, t_end]: the
/// non-selective step spans the window, the event read follows it.
struct MeasurementWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  ProjectiveFamily family;
};

using ScheduleSegment = std::variant<UnitarySpan, MeasurementWindow>;

/// Runs a time-ordered schedule on a pure initial state and returns the
/// Lorentzian ledger. Each measurement window expands into a
/// post_nonselective record (spanning the window, carrying the decohered
/// entropy and the read information) followed by a post_read record that
/// spans the resumed free evolution up to the next window; after a final
/// window the post_read span extends by one window length. Consecutive
/// zero-entropy stretches merge into a single record. Errors: empty or
/// overlapping segments, a schedule not starting with a unitary span,
/// windows not separated by evolution, a mixed initial state, or a
/// measurement that produces no decoherence (eigenstate input, which would
/// break the required S > 0 of the post-nonselective phase).
RegimeLedger run_lorentzian_schedule(const DensityMatrix& initial,
                                     std::span<const ScheduleSegment> segments,
                                     std::uint64_t seed);

/// Path-sampling configuration for the dual records.
struct DualConfig {
  double mass = 1.0;
  double hbar = 1.0;
  std::size_t n_steps = 256;
  std::uint64_t seed = 0;
};

/// Annotates every clean zero-entropy Lorentzian record (kinds unitary and
/// post_read, not partial) with one Euclidean dual: entropy_bits = a_tn_bits
/// (the classicalized network area) and information_bits = S_E/(hbar ln 2)
/// from a Brownian path sampled over the record's span read as imaginary
/// time. Measurement-window records get no dual. The duals are
/// annotations appended after the Lorentzian records, not state
/// transitions. Errors: a_tn_bits <= 0, a ledger that already carries
/// duals, or invalid config.
RegimeLedger attach_euclidean_duals(const RegimeLedger& ledger, double a_tn_bits,
                                    const DualConfig& config);

/// JSON export, schema_version 1:
/// {"schema_version":1,"records":[{"index","regime","kind","S_vN_bits",
/// "I_bits","span":[start,end],"partial","dual_of"(int or null)}...]}
std::string ledger_to_json(const RegimeLedger& ledger);

}  // namespace holoq
