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

#include "holoq/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "holoq/constants.hpp"
#include "holoq/euclidean.hpp"
#include "holoq/random.hpp"

namespace holoq {

namespace {

constexpr double kFamilyTol = 1e-12;
constexpr double kCommuteTol = 1e-10;
constexpr double kZeroTol = 1e-9;        // bits
constexpr double kSpanOrderTol = 1e-9;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ProjectiveFamily::ProjectiveFamily(std::vector<Eigen::MatrixXcd> projectors,
                                   std::vector<std::string> labels)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (projectors_.empty()) {
    throw std::invalid_argument("ProjectiveFamily: needs at least one projector");
  }
  if (labels_.size() != projectors_.size()) {
    throw std::invalid_argument("ProjectiveFamily: one label per projector required");
  }
  const Eigen::Index d = projectors_.front().rows();
  if (d == 0) {
    throw std::invalid_argument("ProjectiveFamily: projectors must be nonempty");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const Eigen::MatrixXcd& p = projectors_[i];
    if (p.rows() != d || p.cols() != d) {
      throw std::invalid_argument("ProjectiveFamily: projector dimensions differ");
    }
    if (max_abs(p - p.adjoint()) > kFamilyTol) {
      throw std::invalid_argument("ProjectiveFamily: projector " + std::to_string(i) +
                                  " is not Hermitian");
    }
    if (max_abs(p * p - p) > kFamilyTol) {
      throw std::invalid_argument("ProjectiveFamily: projector " + std::to_string(i) +
                                  " is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(projectors_[j] * p) > kFamilyTol) {
        throw std::invalid_argument("ProjectiveFamily: projectors " + std::to_string(j) +
                                    " and " + std::to_string(i) + " are not orthogonal");
      }
    }
    sum += p;
  }
  if (max_abs(sum - Eigen::MatrixXcd::Identity(d, d)) > kFamilyTol) {
    throw std::invalid_argument("ProjectiveFamily: projectors do not sum to the identity");
  }
}

ProjectiveFamily ProjectiveFamily::pauli_z() {
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return ProjectiveFamily({std::move(p0), std::move(p1)}, {"z+", "z-"});
}

ProjectiveFamily ProjectiveFamily::pauli_x() {
  Eigen::MatrixXcd plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  Eigen::MatrixXcd minus(2, 2);
  minus << 0.5, -0.5, -0.5, 0.5;
  return ProjectiveFamily({std::move(plus), std::move(minus)}, {"x+", "x-"});
}

ProjectiveFamily ProjectiveFamily::computational(std::size_t dim) {
  if (dim == 0) {
    throw std::invalid_argument("ProjectiveFamily: dim must be positive");
  }
  std::vector<Eigen::MatrixXcd> projectors;
  std::vector<std::string> labels;
  projectors.reserve(dim);
  labels.reserve(dim);
  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    p(i, i) = 1.0;
    projectors.push_back(std::move(p));
    labels.push_back(std::to_string(i));
  }
  return ProjectiveFamily(std::move(projectors), std::move(labels));
}

DensityMatrix nonselective(const DensityMatrix& rho, const ProjectiveFamily& family) {
  if (rho.dim() != family.dim()) {
    throw std::invalid_argument("nonselective: dimension mismatch");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (const Eigen::MatrixXcd& p : family.projectors()) {
    out += p * rho.matrix() * p;
  }
  return density_detail::trusted(std::move(out));
}

std::vector<double> born_distribution(const DensityMatrix& rho,
                                      const ProjectiveFamily& family) {
  if (rho.dim() != family.dim()) {
    throw std::invalid_argument("born_distribution: dimension mismatch");
  }
  std::vector<double> p;
  p.reserve(family.size());
  for (const Eigen::MatrixXcd& proj : family.projectors()) {
    p.push_back(std::max(0.0, (proj * rho.matrix()).trace().real()));
  }
  return p;
}

ReadEvent read_event(const DensityMatrix& rho_mixed, const ProjectiveFamily& family,
                     std::uint64_t seed) {
  if (rho_mixed.dim() != family.dim()) {
    throw std::invalid_argument("read_event: dimension mismatch");
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Eigen::MatrixXcd& p = family.projectors()[i];
    if (max_abs(rho_mixed.matrix() * p - p * rho_mixed.matrix()) > kCommuteTol) {
      throw std::invalid_argument(
          "read_event: state does not commute with projector " + std::to_string(i) +
          "; run nonselective first");
    }
  }

  const std::vector<double> born = born_distribution(rho_mixed, family);
  rng::RandomStream stream(seed);
  const double u = stream.uniform();
  double cumulative = 0.0;
  std::size_t outcome = family.size();
  std::size_t last_possible = family.size();
  for (std::size_t i = 0; i < born.size(); ++i) {
    if (born[i] <= 0.0) {
      continue;
    }
    last_possible = i;
    cumulative += born[i];
    if (u < cumulative && outcome == family.size()) {
      outcome = i;
    }
  }
  if (outcome == family.size()) {
    outcome = last_possible;  // u fell into the rounding sliver at the top
  }

  const Eigen::MatrixXcd& p = family.projectors()[outcome];
  Eigen::MatrixXcd collapsed = p * rho_mixed.matrix() * p;
  collapsed /= collapsed.trace().real();
  DensityMatrix post = density_detail::trusted(std::move(collapsed));
  const bool partial = vn_entropy(post) > kZeroTol;

  ReadEvent event{outcome, family.labels()[outcome], std::move(post),
                  shannon_entropy(born), partial};
  return event;
}

std::string to_string(Regime regime) {
  return regime == Regime::lorentzian ? "lorentzian" : "euclidean";
}

std::string to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::unitary:
      return "unitary";
    case PhaseKind::post_nonselective:
      return "post_nonselective";
    case PhaseKind::post_read:
      return "post_read";
    case PhaseKind::euclidean_dual:
      return "euclidean_dual";
  }
  throw std::logic_error("to_string: unknown phase kind");
}

void PhaseRecord::validate() const {
  if (!std::isfinite(entropy_bits) || !std::isfinite(information_bits) ||
      !std::isfinite(span_start) || !std::isfinite(span_end)) {
    throw std::invalid_argument("PhaseRecord: fields must be finite");
  }
  if (!(span_end > span_start)) {
    throw std::invalid_argument("PhaseRecord: span must have positive length");
  }
  if (entropy_bits < -kZeroTol || information_bits < -kZeroTol) {
    throw std::invalid_argument("PhaseRecord: entropy and information must be nonnegative");
  }
  const bool euclidean = kind == PhaseKind::euclidean_dual;
  if (euclidean != (regime == Regime::euclidean)) {
    throw std::invalid_argument(
        "PhaseRecord: euclidean regime is reserved for euclidean_dual records");
  }
  if (!euclidean && dual_of != -1) {
    throw std::invalid_argument("PhaseRecord: only euclidean_dual records set dual_of");
  }
  if (partial && kind != PhaseKind::post_read) {
    throw std::invalid_argument("PhaseRecord: partial applies to post_read records only");
  }
  switch (kind) {
    case PhaseKind::unitary:
      if (std::abs(entropy_bits) > kZeroTol || std::abs(information_bits) > kZeroTol) {
        throw std::invalid_argument("PhaseRecord: unitary phase requires S = 0 and I = 0");
      }
      break;
    case PhaseKind::post_nonselective:
      if (!(entropy_bits > kZeroTol)) {
        throw std::invalid_argument(
            "PhaseRecord: post_nonselective phase requires S > 0");
      }
      break;
    case PhaseKind::post_read:
      if (std::abs(information_bits) > kZeroTol) {
        throw std::invalid_argument("PhaseRecord: post_read phase requires I = 0");
      }
      if (!partial && std::abs(entropy_bits) > kZeroTol) {
        throw std::invalid_argument(
            "PhaseRecord: post_read phase requires S = 0 unless the read was partial");
      }
      break;
    case PhaseKind::euclidean_dual:
      if (!(entropy_bits > 0.0) || !(information_bits > 0.0)) {
        throw std::invalid_argument(
            "PhaseRecord: euclidean_dual phase requires S > 0 and I > 0");
      }
      if (dual_of < 0) {
        throw std::invalid_argument("PhaseRecord: euclidean_dual must reference a record");
      }
      break;
  }
}

RegimeLedger::RegimeLedger(std::vector<PhaseRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) {
    throw std::invalid_argument("RegimeLedger: needs at least one record");
  }
  for (const PhaseRecord& r : records_) {
    r.validate();
  }

  std::vector<std::size_t> lorentzian;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].regime == Regime::lorentzian) {
      lorentzian.push_back(i);
    }
  }
  if (lorentzian.empty()) {
    throw std::invalid_argument("RegimeLedger: needs at least one Lorentzian record");
  }
  for (std::size_t pos = 0; pos < lorentzian.size(); ++pos) {
    const PhaseRecord& r = records_[lorentzian[pos]];
    const PhaseKind expected = pos == 0 ? PhaseKind::unitary
                               : (pos % 2 == 1 ? PhaseKind::post_nonselective
                                               : PhaseKind::post_read);
    if (r.kind != expected) {
      throw std::invalid_argument(
          "RegimeLedger: Lorentzian records must follow unitary (post_nonselective "
          "post_read)*; record " +
          std::to_string(lorentzian[pos]) + " is " + to_string(r.kind));
    }
    if (pos > 0) {
      const PhaseRecord& prev = records_[lorentzian[pos - 1]];
      if (r.span_start < prev.span_end - kSpanOrderTol) {
        throw std::invalid_argument("RegimeLedger: Lorentzian spans overlap");
      }
    }
  }
  if (lorentzian.size() % 2 == 0) {
    throw std::invalid_argument(
        "RegimeLedger: ledger ends mid-measurement (post_read record missing)");
  }

  std::set<int> seen_targets;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const PhaseRecord& r = records_[i];
    if (r.regime != Regime::euclidean) {
      continue;
    }
    if (r.dual_of < 0 || static_cast<std::size_t>(r.dual_of) >= records_.size()) {
      throw std::invalid_argument("RegimeLedger: dual_of out of range");
    }
    const PhaseRecord& target = records_[static_cast<std::size_t>(r.dual_of)];
    if (target.regime != Regime::lorentzian ||
        (target.kind != PhaseKind::unitary && target.kind != PhaseKind::post_read)) {
      throw std::invalid_argument(
          "RegimeLedger: duals attach to unitary-evolution records only");
    }
    if (target.partial || std::abs(target.entropy_bits) > kZeroTol) {
      throw std::invalid_argument(
          "RegimeLedger: duals attach to zero-entropy records only");
    }
    if (!seen_targets.insert(r.dual_of).second) {
      throw std::invalid_argument("RegimeLedger: record carries two duals");
    }
  }
}

std::size_t RegimeLedger::n_lorentzian() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [](const PhaseRecord& r) {
        return r.regime == Regime::lorentzian;
      }));
}

std::size_t RegimeLedger::n_duals() const { return records_.size() - n_lorentzian(); }

RegimeLedger run_lorentzian_schedule(const DensityMatrix& initial,
                                     std::span<const ScheduleSegment> segments,
                                     std::uint64_t seed) {
  if (segments.empty()) {
    throw std::invalid_argument("run_lorentzian_schedule: empty schedule");
  }
  const auto bounds = [](const ScheduleSegment& seg) {
    return std::visit(
        [](const auto& s) { return std::pair<double, double>(s.t_start, s.t_end); }, seg);
  };
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto [start, end] = bounds(segments[i]);
    if (!std::isfinite(start) || !std::isfinite(end) || !(end > start)) {
      throw std::invalid_argument(
          "run_lorentzian_schedule: segment spans must be finite with end > start");
    }
    if (i > 0 && start < bounds(segments[i - 1]).second - 1e-12) {
      throw std::invalid_argument("run_lorentzian_schedule: segments overlap");
    }
  }
  if (!std::holds_alternative<UnitarySpan>(segments.front())) {
    throw std::invalid_argument(
        "run_lorentzian_schedule: schedule must start with a unitary span");
  }

  const double initial_entropy = vn_entropy(initial);
  if (initial_entropy > kZeroTol) {
    throw std::invalid_argument(
        "run_lorentzian_schedule: initial state must be pure, got S_vN = " +
        std::to_string(initial_entropy) + " bits");
  }

  std::vector<PhaseRecord> records;
  DensityMatrix rho = initial;
  double zero_start = bounds(segments.front()).first;
  double zero_end = zero_start;
  PhaseKind zero_kind = PhaseKind::unitary;
  bool zero_partial = false;
  double last_window = 0.0;
  std::size_t measurement_index = 0;

  for (const ScheduleSegment& seg : segments) {
    if (const UnitarySpan* u = std::get_if<UnitarySpan>(&seg)) {
      zero_end = u->t_end;
      continue;
    }
    const MeasurementWindow& m = std::get<MeasurementWindow>(seg);
    if (!(m.t_start > zero_start)) {
      throw std::invalid_argument(
          "run_lorentzian_schedule: measurement windows must be separated by free "
          "evolution");
    }
    records.push_back(PhaseRecord{Regime::lorentzian, zero_kind, vn_entropy(rho), 0.0,
                                  zero_start, m.t_start, zero_partial, -1});

    const DensityMatrix decohered = nonselective(rho, m.family);
    const double decohered_entropy = vn_entropy(decohered);
    if (decohered_entropy <= kZeroTol) {
      throw std::invalid_argument(
          "run_lorentzian_schedule: measurement produced no decoherence (the state "
          "already commutes with the family), so the post-nonselective phase would "
          "have S = 0");
    }
    ReadEvent read =
        read_event(decohered, m.family, rng::derive_seed(seed, measurement_index));
    ++measurement_index;
    records.push_back(PhaseRecord{Regime::lorentzian, PhaseKind::post_nonselective,
                                  decohered_entropy, read.info_gain_bits, m.t_start,
                                  m.t_end, false, -1});
    rho = std::move(read.post_state);
    zero_start = m.t_end;
    zero_end = m.t_end;
    zero_kind = PhaseKind::post_read;
    zero_partial = read.partial;
    last_window = m.t_end - m.t_start;
  }

  if (!(zero_end > zero_start)) {
    zero_end = zero_start + last_window;  // tail after a final window
  }
  records.push_back(PhaseRecord{Regime::lorentzian, zero_kind, vn_entropy(rho), 0.0,
                                zero_start, zero_end, zero_partial, -1});
  return RegimeLedger(std::move(records));
}

RegimeLedger attach_euclidean_duals(const RegimeLedger& ledger, double a_tn_bits,
                                    const DualConfig& config) {
  if (!(a_tn_bits > 0.0)) {
    throw std::invalid_argument("attach_euclidean_duals: A_TN must be positive");
  }
  if (!(config.mass > 0.0) || !(config.hbar > 0.0) || config.n_steps < 1) {
    throw std::invalid_argument("attach_euclidean_duals: invalid sampler config");
  }
  if (ledger.n_duals() > 0) {
    throw std::invalid_argument("attach_euclidean_duals: ledger already carries duals");
  }

  std::vector<PhaseRecord> records(ledger.records().begin(), ledger.records().end());
  const std::size_t n_lorentzian = records.size();
  for (std::size_t i = 0; i < n_lorentzian; ++i) {
    const PhaseRecord& r = records[i];
    const bool zero_phase =
        r.kind == PhaseKind::unitary || (r.kind == PhaseKind::post_read && !r.partial);
    if (!zero_phase) {
      continue;
    }
    const double span = r.span_end - r.span_start;
    EuclideanParams params;
    params.mass = config.mass;
    params.hbar = config.hbar;
    const BrownianPath path = sample_path(config.n_steps, span / config.n_steps, params,
                                          rng::derive_seed(config.seed, i));
    const InfoReadout readout = path_information(path);
    records.push_back(PhaseRecord{Regime::euclidean, PhaseKind::euclidean_dual,
                                  a_tn_bits, readout.information_bits, r.span_start,
                                  r.span_end, false, static_cast<int>(i)});
  }
  return RegimeLedger(std::move(records));
}

std::string ledger_to_json(const RegimeLedger& ledger) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["records"] = nlohmann::ordered_json::array();
  const std::span<const PhaseRecord> records = ledger.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PhaseRecord& r = records[i];
    nlohmann::ordered_json rec;
    rec["index"] = i;
    rec["regime"] = to_string(r.regime);
    rec["kind"] = to_string(r.kind);
    rec["S_vN_bits"] = r.entropy_bits;
    rec["I_bits"] = r.information_bits;
    rec["span"] = {r.span_start, r.span_end};
    rec["partial"] = r.partial;
    if (r.dual_of >= 0) {
      rec["dual_of"] = r.dual_of;
    } else {
      rec["dual_of"] = nullptr;
    }
    doc["records"].push_back(std::move(rec));
  }
  return doc.dump(2);
}

}  // namespace holoq
