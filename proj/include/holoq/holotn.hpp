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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace holoq {

struct MeraSite {
  std::size_t id = 0;
  std::size_t layer = 0;     // 0 = boundary row
  std::size_t position = 0;  // index within the row
};

/// Bond from a finer site up to the next-coarser row. Parallel bonds occur
/// at the top of the network and are counted individually.
struct MeraBond {
  std::size_t from = 0;
  std::size_t to = 0;
};

struct MeraRow {
  std::size_t layer = 0;
  std::size_t width = 0;
  std::size_t first_site = 0;
};

/// Binary coarse-graining network over n_leaves boundary sites. Row widths
/// halve from n_leaves down to 1 (2 n_leaves - 1 sites in total). Each site
/// of a row connects upward to two sites of the next row: its isometry
/// parent i = floor(j / 2) and a crossing partner ((i -+ 1) mod width, sign
/// by parity of j) standing in for the disentangler, 4 n_leaves - 4 bonds
/// in total. The crossing keeps minimal cuts growing with log2 of the
/// interval length, the geometry the renormalization ansatz is used for.
class MeraNetwork {
 public:
  /// branching is reserved; only 2 is implemented. n_leaves must be a
  /// power of two >= 4.
  static MeraNetwork build(std::size_t n_leaves, std::size_t branching = 2);

  std::size_t n_leaves() const { return n_leaves_; }
  /// Renormalization depth log2(n_leaves); rows() has n_layers() + 1
  /// entries including the boundary row.
  std::size_t n_layers() const { return rows_.size() - 1; }
  std::size_t n_sites() const { return sites_.size(); }
  std::size_t n_bonds() const { return bonds_.size(); }

  std::span<const MeraSite> sites() const { return sites_; }
  std::span<const MeraBond> bonds() const { return bonds_; }
  std::span<const MeraRow> rows() const { return rows_; }

  /// Leaves are sites 0 .. n_leaves - 1 (boundary row positions).
  std::size_t leaf_id(std::size_t position) const;

 private:
  MeraNetwork() = default;

  std::size_t n_leaves_ = 0;
  std::vector<MeraRow> rows_;
  std::vector<MeraSite> sites_;
  std::vector<MeraBond> bonds_;
};

/// Network whose every site carries an independent classical fair bit (the
/// two spin eigenstates at weight 1/2 each). The network area A_TN is the
/// site count; the total entropy of the product mixture equals A_TN bits
/// exactly.
class ClassicalizedHologram {
 public:
  const MeraNetwork& network() const { return network_; }
  std::size_t a_tn() const { return network_.n_sites(); }
  std::span<const double> per_site_entropy_bits() const { return per_site_bits_; }
  double entropy_bits() const { return entropy_bits_; }

 private:
  explicit ClassicalizedHologram(MeraNetwork network);

  MeraNetwork network_;
  std::vector<double> per_site_bits_;
  double entropy_bits_ = 0.0;

  friend ClassicalizedHologram classicalize(const MeraNetwork&);
};

/// Replaces each site with the 1-bit classical mixture and totals the
/// entropy (sum of independent per-site Shannon entropies).
ClassicalizedHologram classicalize(const MeraNetwork& network);

/// Exhaustive cross-check: Shannon entropy of the explicit joint
/// distribution over all 2^A_TN spin configurations, summed pairwise in
/// log2 terms so powers of two stay exact. Only for A_TN <= 20 (throws
/// above that).
double enumerated_entropy_bits(const ClassicalizedHologram& hologram);

struct SpinEvent {
  std::size_t site = 0;
  int spin = 0;  // +1 or -1
};

/// n_events independent fair spin readouts, tagged with site ids cycling
/// through the network. Each event carries 1 bit. Deterministic per seed.
std::vector<SpinEvent> readout_spin_events(const ClassicalizedHologram& hologram,
                                           std::size_t n_events, std::uint64_t seed);

/// Integer event count for a real information readout: floor plus the
/// fractional remainder.
struct EventBudget {
  std::size_t n_events = 0;
  double remainder_bits = 0.0;
};

EventBudget events_from_information(double information_bits);

/// Minimum number of bonds whose removal disconnects the boundary interval
/// [begin, end) from the rest of the boundary, by max-flow over
/// unit-capacity bonds. The whole boundary needs no cut (returns 0); an
/// empty or out-of-range interval throws.
std::size_t minimal_cut(const MeraNetwork& network, std::size_t begin, std::size_t end);

/// Adjacency export, schema_version 1: {"n_leaves", "rows", "sites"
/// (id/layer/position), "bonds" (from/to pairs)}.
std::string mera_to_json(const MeraNetwork& network);

/// CSV rows "index,site,spin".
void write_events_csv(std::span<const SpinEvent> events, std::ostream& out);

}  // namespace holoq
