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
#include <json.hpp>

#include "helpers.hpp"
#include "holoq/measurement.hpp"
#include "holoq/random.hpp"

using namespace holoq;

namespace {

DensityMatrix plus_state() {
  Eigen::VectorXcd v(2);
  v << 1.0, 1.0;
  return DensityMatrix::pure(v);
}

// degenerate family: rank-2 projector onto span{|0>, |1>} plus |2><2|
ProjectiveFamily degenerate_family() {
  Eigen::MatrixXcd p01 = Eigen::MatrixXcd::Zero(3, 3);
  p01(0, 0) = 1.0;
  p01(1, 1) = 1.0;
  Eigen::MatrixXcd p2 = Eigen::MatrixXcd::Zero(3, 3);
  p2(2, 2) = 1.0;
  return ProjectiveFamily({p01, p2}, {"low", "high"});
}

std::vector<ScheduleSegment> one_measurement_schedule() {
  std::vector<ScheduleSegment> segments;
  segments.emplace_back(UnitarySpan{0.0, 1.0});
  segments.emplace_back(MeasurementWindow{1.0, 1.2, ProjectiveFamily::pauli_z()});
  segments.emplace_back(UnitarySpan{1.2, 2.2});
  return segments;
}

}  // namespace

TEST_SUITE("measurement") {

TEST_CASE("projective family constructors and validation") {
  const ProjectiveFamily z = ProjectiveFamily::pauli_z();
  CHECK(z.size() == 2);
  CHECK(z.dim() == 2);
  CHECK(z.labels()[0] == "z+");
  CHECK(z.labels()[1] == "z-");
  CHECK(ProjectiveFamily::pauli_x().labels()[0] == "x+");
  CHECK(ProjectiveFamily::computational(5).size() == 5);

  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p1(1, 1) = 1.0;
  CHECK_NOTHROW(ProjectiveFamily({p0, p1}, {"a", "b"}));
  // not idempotent
  CHECK_THROWS_AS(ProjectiveFamily({0.5 * p0, p1}, {"a", "b"}), std::invalid_argument);
  // incomplete
  CHECK_THROWS_AS(ProjectiveFamily({p0}, {"a"}), std::invalid_argument);
  // not orthogonal: overlapping rank-1 projectors
  Eigen::VectorXcd diag(2);
  diag << 1.0, 1.0;
  const Eigen::MatrixXcd pd = diag * diag.adjoint() / 2.0;
  CHECK_THROWS_AS(ProjectiveFamily({p0, pd}, {"a", "b"}), std::invalid_argument);
  // label count mismatch
  CHECK_THROWS_AS(ProjectiveFamily({p0, p1}, {"a"}), std::invalid_argument);
}

TEST_CASE("a conjugated computational family still validates") {
  rng::RandomStream rs(31);
  const Eigen::MatrixXcd u = holoq_test::random_unitary(4, rs);
  std::vector<Eigen::MatrixXcd> projectors;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < 4; ++i) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(4, 4);
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    projectors.push_back(u * p * u.adjoint());
    labels.push_back("e" + std::to_string(i));
  }
  const ProjectiveFamily family(projectors, labels);
  CHECK(family.size() == 4);
  // Born probabilities on the rotated basis state are a delta
  const Eigen::VectorXcd v = u.col(2);
  const std::vector<double> p = born_distribution(DensityMatrix::pure(v), family);
  CHECK(p[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nonselective decoherence of |+> under Z") {
  const DensityMatrix rho = plus_state();
  CHECK(vn_entropy(rho) < 1e-12);
  const DensityMatrix mixed = nonselective(rho, ProjectiveFamily::pauli_z());
  CHECK(vn_entropy(mixed) == 1.0);  // exactly one bit
  CHECK(std::abs(mixed.matrix()(0, 1)) == 0.0);
  // idempotent
  const DensityMatrix twice = nonselective(mixed, ProjectiveFamily::pauli_z());
  CHECK((twice.matrix() - mixed.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  // entropy never decreases
  CHECK(vn_entropy(twice) >= vn_entropy(rho));
}

TEST_CASE("born distribution of |+>") {
  const DensityMatrix rho = plus_state();
  const std::vector<double> z = born_distribution(rho, ProjectiveFamily::pauli_z());
  CHECK(z[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(0.5).epsilon(1e-14));
  const std::vector<double> x = born_distribution(rho, ProjectiveFamily::pauli_x());
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("read_event requires a decohered input") {
  Eigen::VectorXcd zero(2);
  zero << 1.0, 0.0;
  const DensityMatrix rho = DensityMatrix::pure(zero);
  // |0><0| does not commute with the X projectors
  CHECK_THROWS_AS(read_event(rho, ProjectiveFamily::pauli_x(), 1), std::invalid_argument);
  CHECK_NOTHROW(read_event(rho, ProjectiveFamily::pauli_z(), 1));
}

TEST_CASE("reading a fair mixture: one bit of information, clean collapse") {
  const DensityMatrix mixed = nonselective(plus_state(), ProjectiveFamily::pauli_z());
  const ReadEvent event = read_event(mixed, ProjectiveFamily::pauli_z(), 7);
  CHECK(event.info_gain_bits == 1.0);
  CHECK_FALSE(event.partial);
  CHECK(vn_entropy(event.post_state) < 1e-9);
  CHECK((event.outcome == 0 || event.outcome == 1));
  CHECK(event.label == (event.outcome == 0 ? "z+" : "z-"));
  // determinism per seed
  const ReadEvent again = read_event(mixed, ProjectiveFamily::pauli_z(), 7);
  CHECK(again.outcome == event.outcome);
}

TEST_CASE("double read repeats the outcome at zero gain") {
  const DensityMatrix mixed = nonselective(plus_state(), ProjectiveFamily::pauli_z());
  const ReadEvent first = read_event(mixed, ProjectiveFamily::pauli_z(), 7);
  const ReadEvent second = read_event(first.post_state, ProjectiveFamily::pauli_z(), 999);
  CHECK(second.outcome == first.outcome);
  CHECK(second.info_gain_bits == 0.0);
  CHECK((second.post_state.matrix() - first.post_state.matrix()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("read outcomes follow the Born weights") {
  const DensityMatrix mixed = nonselective(plus_state(), ProjectiveFamily::pauli_z());
  const std::size_t n_reads = 100000;
  std::vector<double> observed = {0.0, 0.0};
  for (std::size_t i = 0; i < n_reads; ++i) {
    observed[read_event(mixed, ProjectiveFamily::pauli_z(), rng::derive_seed(123, i))
                 .outcome] += 1.0;
  }
  const std::vector<double> expected = {n_reads / 2.0, n_reads / 2.0};
  CHECK(holoq_test::chi_squared(observed, expected) < holoq_test::kChi2Crit99Dof1);
}

TEST_CASE("degenerate read leaves residual entropy and flags partial") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.4;
  m(1, 1) = 0.4;
  m(2, 2) = 0.2;
  const DensityMatrix rho(m);
  const ProjectiveFamily family = degenerate_family();
  bool saw_partial = false;
  bool saw_clean = false;
  for (std::uint64_t seed = 0; seed < 10 && !(saw_partial && saw_clean); ++seed) {
    const ReadEvent event = read_event(rho, family, seed);
    CHECK(event.info_gain_bits ==
          doctest::Approx(0.7219280948873623).epsilon(1e-13));  // H({0.8, 0.2})
    if (event.outcome == 0) {
      CHECK(event.partial);
      CHECK(vn_entropy(event.post_state) == doctest::Approx(1.0).epsilon(1e-12));
      saw_partial = true;
    } else {
      CHECK_FALSE(event.partial);
      CHECK(vn_entropy(event.post_state) < 1e-9);
      saw_clean = true;
    }
  }
  // both branches occur within the first ten seeds (frozen RNG)
  CHECK(saw_partial);
  CHECK(saw_clean);
}

TEST_CASE("phase record validation") {
  PhaseRecord ok{Regime::lorentzian, PhaseKind::unitary, 0.0, 0.0, 0.0, 1.0, false, -1};
  CHECK_NOTHROW(ok.validate());
  auto bad = ok;
  bad.entropy_bits = 0.5;  // unitary with entropy
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.span_end = 0.0;  // empty span
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.partial = true;  // partial outside post_read
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.dual_of = 2;  // dual_of on a Lorentzian record
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  PhaseRecord pn{Regime::lorentzian, PhaseKind::post_nonselective, 0.0, 0.0,
                 0.0, 1.0, false, -1};
  CHECK_THROWS_AS(pn.validate(), std::invalid_argument);  // needs S > 0
  pn.entropy_bits = 1.0;
  CHECK_NOTHROW(pn.validate());

  PhaseRecord dual{Regime::euclidean, PhaseKind::euclidean_dual, 127.0, 10.0,
                   0.0, 1.0, false, 0};
  CHECK_NOTHROW(dual.validate());
  dual.dual_of = -1;
  CHECK_THROWS_AS(dual.validate(), std::invalid_argument);
  dual.dual_of = 0;
  dual.regime = Regime::lorentzian;  // duals live on the Euclidean row
  CHECK_THROWS_AS(dual.validate(), std::invalid_argument);
}

TEST_CASE("ledger grammar") {
  const PhaseRecord u{Regime::lorentzian, PhaseKind::unitary, 0.0, 0.0, 0.0, 1.0,
                      false, -1};
  const PhaseRecord pn{Regime::lorentzian, PhaseKind::post_nonselective, 1.0, 1.0,
                       1.0, 1.2, false, -1};
  const PhaseRecord pr{Regime::lorentzian, PhaseKind::post_read, 0.0, 0.0, 1.2, 2.0,
                       false, -1};
  CHECK_NOTHROW(RegimeLedger({u, pn, pr}));
  CHECK_NOTHROW(RegimeLedger({u}));
  // post_nonselective twice in a row breaks the alternation
  PhaseRecord pn2 = pn;
  pn2.span_start = 1.2;
  pn2.span_end = 1.4;
  CHECK_THROWS_AS(RegimeLedger({u, pn, pn2}), std::invalid_argument);
  // must open with a unitary phase
  CHECK_THROWS_AS(RegimeLedger({pn}), std::invalid_argument);
  // overlapping spans
  PhaseRecord overlap = pn;
  overlap.span_start = 0.5;
  CHECK_THROWS_AS(RegimeLedger({u, overlap, pr}), std::invalid_argument);
  // ledger of only Euclidean records is meaningless
  const PhaseRecord lone_dual{Regime::euclidean, PhaseKind::euclidean_dual, 5.0, 1.0,
                              0.0, 1.0, false, 0};
  CHECK_THROWS_AS(RegimeLedger({lone_dual}), std::invalid_argument);
}

TEST_CASE("ledger dual bookkeeping rules") {
  const PhaseRecord u{Regime::lorentzian, PhaseKind::unitary, 0.0, 0.0, 0.0, 1.0,
                      false, -1};
  const PhaseRecord pn{Regime::lorentzian, PhaseKind::post_nonselective, 1.0, 1.0,
                       1.0, 1.2, false, -1};
  const PhaseRecord pr{Regime::lorentzian, PhaseKind::post_read, 0.0, 0.0, 1.2, 2.0,
                       false, -1};
  PhaseRecord dual{Regime::euclidean, PhaseKind::euclidean_dual, 127.0, 9.0, 0.0, 1.0,
                   false, 0};
  CHECK_NOTHROW(RegimeLedger({u, pn, pr, dual}));
  const RegimeLedger ledger({u, pn, pr, dual});
  CHECK(ledger.n_lorentzian() == 3);
  CHECK(ledger.n_duals() == 1);
  // a dual must not point at a measurement window
  PhaseRecord bad = dual;
  bad.dual_of = 1;
  CHECK_THROWS_AS(RegimeLedger({u, pn, pr, bad}), std::invalid_argument);
  // nor out of range
  bad.dual_of = 9;
  CHECK_THROWS_AS(RegimeLedger({u, pn, pr, bad}), std::invalid_argument);
  // nor twice at the same record
  PhaseRecord dup = dual;
  CHECK_THROWS_AS(RegimeLedger({u, pn, pr, dual, dup}), std::invalid_argument);
  // nor at a partial post_read
  PhaseRecord partial_pr = pr;
  partial_pr.partial = true;
  partial_pr.entropy_bits = 0.3;
  PhaseRecord dual_pr = dual;
  dual_pr.dual_of = 2;
  CHECK_THROWS_AS(RegimeLedger({u, pn, partial_pr, dual_pr}), std::invalid_argument);
}

TEST_CASE("schedule run reproduces the three-phase pattern") {
  const RegimeLedger ledger =
      run_lorentzian_schedule(plus_state(), one_measurement_schedule(), 11);
  REQUIRE(ledger.size() == 3);
  const auto records = ledger.records();
  CHECK(records[0].kind == PhaseKind::unitary);
  CHECK(records[0].entropy_bits < 1e-9);
  CHECK(records[0].information_bits == 0.0);
  CHECK(records[0].span_start == 0.0);
  CHECK(records[0].span_end == 1.0);
  CHECK(records[1].kind == PhaseKind::post_nonselective);
  CHECK(records[1].entropy_bits == 1.0);
  CHECK(records[1].information_bits == 1.0);
  CHECK(records[1].span_start == 1.0);
  CHECK(records[1].span_end == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(records[2].kind == PhaseKind::post_read);
  CHECK(records[2].entropy_bits < 1e-9);
  CHECK(records[2].span_end == doctest::Approx(2.2).epsilon(1e-15));
  // determinism
  const RegimeLedger rerun =
      run_lorentzian_schedule(plus_state(), one_measurement_schedule(), 11);
  CHECK(rerun.records()[2].entropy_bits == records[2].entropy_bits);
}

TEST_CASE("schedule edge cases") {
  // unitary-only schedule collapses to one record
  std::vector<ScheduleSegment> free_only;
  free_only.emplace_back(UnitarySpan{0.0, 1.0});
  free_only.emplace_back(UnitarySpan{1.0, 2.5});
  const RegimeLedger ledger = run_lorentzian_schedule(plus_state(), free_only, 0);
  CHECK(ledger.size() == 1);
  CHECK(ledger.records()[0].span_end == 2.5);

  // measuring an eigenstate decoheres nothing
  Eigen::VectorXcd zero(2);
  zero << 1.0, 0.0;
  std::vector<ScheduleSegment> z_on_zero;
  z_on_zero.emplace_back(UnitarySpan{0.0, 1.0});
  z_on_zero.emplace_back(MeasurementWindow{1.0, 1.2, ProjectiveFamily::pauli_z()});
  CHECK_THROWS_WITH_AS(
      run_lorentzian_schedule(DensityMatrix::pure(zero), z_on_zero, 0),
      doctest::Contains("no decoherence"), std::invalid_argument);

  // must start with free evolution
  std::vector<ScheduleSegment> starts_with_window;
  starts_with_window.emplace_back(
      MeasurementWindow{0.0, 0.2, ProjectiveFamily::pauli_z()});
  CHECK_THROWS_AS(run_lorentzian_schedule(plus_state(), starts_with_window, 0),
                  std::invalid_argument);

  // initial state must be pure
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  CHECK_THROWS_WITH_AS(
      run_lorentzian_schedule(DensityMatrix(mixed), one_measurement_schedule(), 0),
      doctest::Contains("pure"), std::invalid_argument);

  // empty schedule
  CHECK_THROWS_AS(run_lorentzian_schedule(plus_state(), {}, 0), std::invalid_argument);

  // schedule ending on a window grows a tail of one window length
  std::vector<ScheduleSegment> tail;
  tail.emplace_back(UnitarySpan{0.0, 1.0});
  tail.emplace_back(MeasurementWindow{1.0, 1.5, ProjectiveFamily::pauli_z()});
  const RegimeLedger tailed = run_lorentzian_schedule(plus_state(), tail, 2);
  REQUIRE(tailed.size() == 3);
  CHECK(tailed.records()[2].span_start == 1.5);
  CHECK(tailed.records()[2].span_end == 2.0);
}

TEST_CASE("duals attach to the zero-entropy records only") {
  const RegimeLedger bare =
      run_lorentzian_schedule(plus_state(), one_measurement_schedule(), 3);
  const RegimeLedger dualed = attach_euclidean_duals(bare, 127.0, {});
  REQUIRE(dualed.size() == 5);
  CHECK(dualed.n_duals() == 2);
  const auto records = dualed.records();
  CHECK(records[3].dual_of == 0);
  CHECK(records[4].dual_of == 2);
  for (const std::size_t i : {3ul, 4ul}) {
    CHECK(records[i].regime == Regime::euclidean);
    CHECK(records[i].entropy_bits == 127.0);
    CHECK(records[i].information_bits > 0.0);
    // dual span mirrors the Lorentzian span it annotates
    const auto& target = records[static_cast<std::size_t>(records[i].dual_of)];
    CHECK(records[i].span_start == target.span_start);
    CHECK(records[i].span_end == target.span_end);
  }
  // determinism of the sampled dual information
  const RegimeLedger again = attach_euclidean_duals(bare, 127.0, {});
  CHECK(again.records()[3].information_bits == records[3].information_bits);
  CHECK(again.records()[4].information_bits == records[4].information_bits);
  // distinct spans get independent streams
  CHECK(records[3].information_bits != records[4].information_bits);

  CHECK_THROWS_AS(attach_euclidean_duals(bare, 0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(attach_euclidean_duals(dualed, 127.0, {}), std::invalid_argument);
  DualConfig bad;
  bad.n_steps = 0;
  CHECK_THROWS_AS(attach_euclidean_duals(bare, 127.0, bad), std::invalid_argument);
}

TEST_CASE("ledger json export") {
  const RegimeLedger bare =
      run_lorentzian_schedule(plus_state(), one_measurement_schedule(), 3);
  const RegimeLedger dualed = attach_euclidean_duals(bare, 127.0, {});
  const nlohmann::json doc = nlohmann::json::parse(ledger_to_json(dualed));
  CHECK(doc["schema_version"] == 1);
  REQUIRE(doc["records"].size() == 5);
  CHECK(doc["records"][0]["regime"] == "lorentzian");
  CHECK(doc["records"][0]["kind"] == "unitary");
  CHECK(doc["records"][0]["dual_of"].is_null());
  CHECK(doc["records"][1]["S_vN_bits"] == 1.0);
  CHECK(doc["records"][3]["regime"] == "euclidean");
  CHECK(doc["records"][3]["dual_of"] == 0);
  CHECK(doc["records"][2]["span"][0] == 1.2);
  CHECK(doc["records"][2]["partial"] == false);
}

}  // TEST_SUITE
