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

#include "holoq/holotn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "holoq/qstate.hpp"
#include "holoq/random.hpp"

namespace holoq {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Dinic max-flow on a small unit-capacity graph.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t n_nodes) : n_nodes_(n_nodes), adjacency_(n_nodes) {}

  void add_edge(std::size_t u, std::size_t v, long cap) {
    adjacency_[u].push_back(edges_.size());
    edges_.push_back(Edge{v, cap});
    adjacency_[v].push_back(edges_.size());
    edges_.push_back(Edge{u, 0});
  }

  long run(std::size_t source, std::size_t sink) {
    long flow = 0;
    while (bfs(source, sink)) {
      iter_.assign(n_nodes_, 0);
      long pushed;
      while ((pushed = dfs(source, sink, std::numeric_limits<long>::max())) > 0) {
        flow += pushed;
      }
    }
    return flow;
  }

 private:
  struct Edge {
    std::size_t to;
    long capacity;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    level_.assign(n_nodes_, -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t e : adjacency_[u]) {
        if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          queue.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long dfs(std::size_t u, std::size_t sink, long limit) {
    if (u == sink) {
      return limit;
    }
    for (std::size_t& i = iter_[u]; i < adjacency_[u].size(); ++i) {
      const std::size_t e = adjacency_[u][i];
      Edge& edge = edges_[e];
      if (edge.capacity <= 0 || level_[edge.to] != level_[u] + 1) {
        continue;
      }
      const long pushed = dfs(edge.to, sink, std::min(limit, edge.capacity));
      if (pushed > 0) {
        edge.capacity -= pushed;
        edges_[e ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::size_t n_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace

MeraNetwork MeraNetwork::build(std::size_t n_leaves, std::size_t branching) {
  if (branching != 2) {
    throw std::invalid_argument("MeraNetwork: only branching factor 2 is implemented");
  }
  if (n_leaves < 4 || !is_power_of_two(n_leaves)) {
    throw std::invalid_argument("MeraNetwork: n_leaves must be a power of two >= 4");
  }

  MeraNetwork net;
  net.n_leaves_ = n_leaves;
  std::size_t next_id = 0;
  std::size_t layer = 0;
  for (std::size_t width = n_leaves; width >= 1; width /= 2) {
    net.rows_.push_back(MeraRow{layer, width, next_id});
    for (std::size_t pos = 0; pos < width; ++pos) {
      net.sites_.push_back(MeraSite{next_id++, layer, pos});
    }
    if (width == 1) {
      break;
    }
    ++layer;
  }

  for (std::size_t r = 0; r + 1 < net.rows_.size(); ++r) {
    const MeraRow& fine = net.rows_[r];
    const MeraRow& coarse = net.rows_[r + 1];
    const std::size_t cw = coarse.width;
    for (std::size_t j = 0; j < fine.width; ++j) {
      const std::size_t child = fine.first_site + j;
      const std::size_t i = j / 2;
      const std::size_t crossing = (j % 2 == 0) ? (i + cw - 1) % cw : (i + 1) % cw;
      net.bonds_.push_back(MeraBond{child, coarse.first_site + i});
      net.bonds_.push_back(MeraBond{child, coarse.first_site + crossing});
    }
  }

  // Connectivity sanity check; the construction above guarantees it.
  std::vector<std::vector<std::size_t>> adjacency(net.sites_.size());
  for (const MeraBond& b : net.bonds_) {
    adjacency[b.from].push_back(b.to);
    adjacency[b.to].push_back(b.from);
  }
  std::vector<bool> seen(net.sites_.size(), false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push(v);
      }
    }
  }
  if (reached != net.sites_.size()) {
    throw std::logic_error("MeraNetwork: constructed graph is not connected");
  }
  return net;
}

std::size_t MeraNetwork::leaf_id(std::size_t position) const {
  if (position >= n_leaves_) {
    throw std::out_of_range("MeraNetwork: leaf position out of range");
  }
  return position;
}

ClassicalizedHologram::ClassicalizedHologram(MeraNetwork network)
    : network_(std::move(network)) {
  const double spin_mixture[] = {0.5, 0.5};
  per_site_bits_.reserve(network_.n_sites());
  for (std::size_t s = 0; s < network_.n_sites(); ++s) {
    per_site_bits_.push_back(shannon_entropy(spin_mixture, EntropyUnit::bits));
  }
  entropy_bits_ = 0.0;
  for (double b : per_site_bits_) {
    entropy_bits_ += b;
  }
}

ClassicalizedHologram classicalize(const MeraNetwork& network) {
  return ClassicalizedHologram(network);
}

double enumerated_entropy_bits(const ClassicalizedHologram& hologram) {
  const std::size_t a = hologram.a_tn();
  if (a > 20) {
    throw std::invalid_argument(
        "enumerated_entropy_bits: joint enumeration is limited to A_TN <= 20");
  }
  const std::size_t n_configs = std::size_t{1} << a;
  const double p = 1.0 / static_cast<double>(n_configs);
  std::vector<double> terms(n_configs, -p * std::log2(p));
  // Pairwise reduction; equal power-of-two terms then sum without rounding.
  while (terms.size() > 1) {
    const std::size_t half = terms.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
      terms[i] = terms[2 * i] + terms[2 * i + 1];
    }
    terms.resize(half);
  }
  return terms.front();
}

std::vector<SpinEvent> readout_spin_events(const ClassicalizedHologram& hologram,
                                           std::size_t n_events, std::uint64_t seed) {
  std::vector<SpinEvent> events;
  events.reserve(n_events);
  rng::RandomStream stream(seed);
  const std::size_t n_sites = hologram.network().n_sites();
  for (std::size_t i = 0; i < n_events; ++i) {
    const int spin = stream.uniform() < 0.5 ? 1 : -1;
    events.push_back(SpinEvent{i % n_sites, spin});
  }
  return events;
}

EventBudget events_from_information(double information_bits) {
  if (!(information_bits >= 0.0) || !std::isfinite(information_bits)) {
    throw std::invalid_argument("events_from_information: needs finite I >= 0");
  }
  const double whole = std::floor(information_bits);
  return EventBudget{static_cast<std::size_t>(whole), information_bits - whole};
}

std::size_t minimal_cut(const MeraNetwork& network, std::size_t begin, std::size_t end) {
  if (begin >= end || end > network.n_leaves()) {
    throw std::invalid_argument("minimal_cut: interval must be nonempty and within the leaves");
  }
  if (begin == 0 && end == network.n_leaves()) {
    return 0;  // whole boundary: nothing to separate from
  }

  const std::size_t n = network.n_sites();
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  MaxFlow flow(n + 2);
  for (const MeraBond& b : network.bonds()) {
    // Undirected unit bond.
    flow.add_edge(b.from, b.to, 1);
    flow.add_edge(b.to, b.from, 1);
  }
  const long infinite = static_cast<long>(network.n_bonds()) + 1;
  for (std::size_t leaf = 0; leaf < network.n_leaves(); ++leaf) {
    if (leaf >= begin && leaf < end) {
      flow.add_edge(source, leaf, infinite);
    } else {
      flow.add_edge(leaf, sink, infinite);
    }
  }
  return static_cast<std::size_t>(flow.run(source, sink));
}

std::string mera_to_json(const MeraNetwork& network) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["n_leaves"] = network.n_leaves();
  doc["n_sites"] = network.n_sites();
  doc["n_bonds"] = network.n_bonds();
  doc["rows"] = nlohmann::ordered_json::array();
  for (const MeraRow& row : network.rows()) {
    doc["rows"].push_back({{"layer", row.layer},
                           {"width", row.width},
                           {"first_site", row.first_site}});
  }
  doc["sites"] = nlohmann::ordered_json::array();
  for (const MeraSite& site : network.sites()) {
    doc["sites"].push_back(
        {{"id", site.id}, {"layer", site.layer}, {"position", site.position}});
  }
  doc["bonds"] = nlohmann::ordered_json::array();
  for (const MeraBond& bond : network.bonds()) {
    doc["bonds"].push_back({bond.from, bond.to});
  }
  return doc.dump(2);
}

void write_events_csv(std::span<const SpinEvent> events, std::ostream& out) {
  out << "index,site,spin\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    out << i << ',' << events[i].site << ',' << events[i].spin << '\n';
  }
}

}  // namespace holoq
