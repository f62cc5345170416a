// Copyright 2026 The ctrlgcl Authors.
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

#include "ctrlgcl/augment.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctrlgcl/random.hpp"

namespace ctrlgcl {

std::string_view to_string(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::kDelete:
      return "delete";
    case AugmentKind::kAdd:
      return "add";
    case AugmentKind::kSubstitute:
      return "substitute";
  }
  return "unknown";
}

AugmentKind parse_augment_kind(std::string_view name) {
  if (name == "delete") return AugmentKind::kDelete;
  if (name == "add") return AugmentKind::kAdd;
  if (name == "substitute") return AugmentKind::kSubstitute;
  throw std::invalid_argument("unknown augmentation kind '" + std::string(name) +
                              "' (expected delete, add or substitute)");
}

namespace {

// Adjacency lists that support edge removal and insertion.
class EditableGraph {
 public:
  explicit EditableGraph(const Graph& g) : adj_(static_cast<std::size_t>(g.num_nodes())) {
    for (Node v = 0; v < g.num_nodes(); ++v) {
      const auto row = g.neighbors(v);
      adj_[static_cast<std::size_t>(v)].assign(row.begin(), row.end());
    }
  }

  void remove(const Edge& e) {
    std::erase(adj_[static_cast<std::size_t>(e.u)], e.v);
    std::erase(adj_[static_cast<std::size_t>(e.v)], e.u);
  }

  void add(const Edge& e) {
    adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }

  // e is present; true when its endpoints stay connected without it.
  bool has_detour(const Edge& e) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<Node> frontier{e.u};
    seen[static_cast<std::size_t>(e.u)] = 1;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const Node x = frontier[head];
      for (const Node y : adj_[static_cast<std::size_t>(x)]) {
        if (x == e.u && y == e.v) continue;
        if (seen[static_cast<std::size_t>(y)]) continue;
        if (y == e.v) return true;
        seen[static_cast<std::size_t>(y)] = 1;
        frontier.push_back(y);
      }
    }
    return false;
  }

  std::vector<Hops> distances(Node source) const {
    std::vector<Hops> dist(adj_.size(), Hops::infinity());
    std::vector<Node> frontier{source};
    dist[static_cast<std::size_t>(source)] = Hops(0);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const Node x = frontier[head];
      const Hops next = dist[static_cast<std::size_t>(x)] + 1;
      for (const Node y : adj_[static_cast<std::size_t>(x)]) {
        if (!dist[static_cast<std::size_t>(y)].is_finite()) {
          dist[static_cast<std::size_t>(y)] = next;
          frontier.push_back(y);
        }
      }
    }
    return dist;
  }

 private:
  std::vector<std::vector<Node>> adj_;
};

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  for (Node u = 0; u < g.num_nodes(); ++u) {
    for (Node v = u + 1; v < g.num_nodes(); ++v) {
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

// Sequential uniform draws from pool; bridges of the current graph are
// discarded when drawn. Returns the removed edges in draw order.
std::vector<Edge> delete_non_bridges(const Graph& g, std::vector<Edge> pool, std::size_t k, Rng& rng) {
  EditableGraph work(g);
  std::vector<Edge> removed;
  while (removed.size() < k && !pool.empty()) {
    const auto i = static_cast<std::ptrdiff_t>(uniform_index(rng, pool.size()));
    const Edge e = pool[static_cast<std::size_t>(i)];
    pool.erase(pool.begin() + i);
    if (!work.has_detour(e)) continue;
    work.remove(e);
    removed.push_back(e);
  }
  return removed;
}

// Leader distances over all nodes and distances from every V_D node, so the
// acceptance rule reads both sides of a candidate in O(1).
struct DistanceTables {
  std::vector<std::vector<Hops>> from_leader;
  std::vector<std::vector<Hops>> from_support;

  DistanceTables(const EditableGraph& g, const LeaderConfig& lc, const std::vector<Node>& support) {
    refresh(g, lc, support);
  }

  void refresh(const EditableGraph& g, const LeaderConfig& lc, const std::vector<Node>& support) {
    from_leader.clear();
    from_support.clear();
    for (const Node l : lc.leaders()) from_leader.push_back(g.distances(l));
    for (const Node w : support) from_support.push_back(g.distances(w));
  }

  bool keeps_distances(const Edge& e, const std::vector<Node>& support) const {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    for (const auto& dl : from_leader) {
      for (std::size_t j = 0; j < support.size(); ++j) {
        const Hops target = dl[static_cast<std::size_t>(support[j])];
        const Hops via_uv = dl[u] + 1 + from_support[j][v];
        const Hops via_vu = dl[v] + 1 + from_support[j][u];
        if (std::min(via_uv, via_vu) < target) return false;
      }
    }
    return true;
  }
};

std::vector<std::vector<Hops>> support_distances(const Graph& g, const LeaderConfig& lc,
                                                 const std::vector<Node>& support) {
  std::vector<std::vector<Hops>> out;
  for (const Node l : lc.leaders()) {
    const auto d = bfs_distances(g, l);
    std::vector<Hops> row;
    row.reserve(support.size());
    for (const Node w : support) row.push_back(d[static_cast<std::size_t>(w)]);
    out.push_back(std::move(row));
  }
  return out;
}

void check_k(int k) {
  if (k < 0) throw std::invalid_argument("augmentation size k must be non-negative, got " + std::to_string(k));
}

}  // namespace

Backbone backbone(const Graph& g, const LeaderConfig& lc, const PmiOptions& options) {
  Backbone out;
  out.delta = longest_pmi(g, lc, options);
  out.support = out.delta.support;
  for (const Node l : lc.leaders()) {
    const auto parent = bfs_parents(g, l);
    for (const Node w : out.support) {
      for (Node x = w; parent[static_cast<std::size_t>(x)] >= 0; x = parent[static_cast<std::size_t>(x)]) {
        out.edges.emplace_back(x, parent[static_cast<std::size_t>(x)]);
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

Graph edge_deletion(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed, const PmiOptions& options) {
  check_k(k);
  if (k == 0) return g;
  const Backbone bb = backbone(g, lc, options);
  std::vector<Edge> pool;
  std::set_difference(g.edges().begin(), g.edges().end(), bb.edges.begin(), bb.edges.end(),
                      std::back_inserter(pool));
  Rng rng(seed);
  const auto removed = delete_non_bridges(g, std::move(pool), static_cast<std::size_t>(k), rng);
  return g.with_edges_removed(removed);
}

std::vector<Edge> maximal_addition_set(const Graph& g, const LeaderConfig& lc, const PmiOptions& options) {
  const DeltaBound delta = longest_pmi(g, lc, options);
  const std::vector<Node>& support = delta.support;
  std::vector<Edge> accepted;
  if (support.empty()) return non_edges(g);

  EditableGraph work(g);
  DistanceTables tables(work, lc, support);
  for (const Edge& e : non_edges(g)) {
    if (!tables.keeps_distances(e, support)) continue;
    accepted.push_back(e);
    work.add(e);
    tables.refresh(work, lc, support);
  }

  const Graph grown = g.with_edges_added(accepted);
  if (support_distances(grown, lc, support) != support_distances(g, lc, support)) {
    throw std::logic_error("maximal_addition_set: accepted edges changed a witness distance");
  }
  return accepted;
}

Graph edge_addition(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed, const PmiOptions& options) {
  check_k(k);
  if (k == 0) return g;
  const auto pool = maximal_addition_set(g, lc, options);
  Rng rng(seed);
  const auto pick = sample_without_replacement(pool.size(), std::min(pool.size(), static_cast<std::size_t>(k)), rng);
  std::vector<Edge> added;
  added.reserve(pick.size());
  for (const std::size_t i : pick) added.push_back(pool[i]);
  return g.with_edges_added(added);
}

Graph edge_substitution(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed,
                        const PmiOptions& options) {
  check_k(k);
  if (k == 0) return g;
  const Backbone bb = backbone(g, lc, options);
  const auto pool_add = maximal_addition_set(g, lc, options);
  const std::size_t budget = std::min(static_cast<std::size_t>(k), pool_add.size());
  if (budget == 0) return g;

  std::vector<Edge> pool_del;
  std::set_difference(g.edges().begin(), g.edges().end(), bb.edges.begin(), bb.edges.end(),
                      std::back_inserter(pool_del));
  Rng rng(seed);
  const auto removed = delete_non_bridges(g, std::move(pool_del), budget, rng);
  if (removed.empty()) return g;

  const Graph thinned = g.with_edges_removed(removed);
  EditableGraph work(thinned);
  DistanceTables tables(work, lc, bb.support);
  std::vector<std::size_t> order(pool_add.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, rng);
  std::vector<Edge> added;
  for (const std::size_t i : order) {
    if (added.size() == removed.size()) break;
    const Edge& e = pool_add[i];
    if (!tables.keeps_distances(e, bb.support)) continue;
    added.push_back(e);
    work.add(e);
    tables.refresh(work, lc, bb.support);
  }
  return thinned.with_edges_added(added);
}

Graph random_deletion(const Graph& g, int k, std::uint64_t seed) {
  check_k(k);
  if (k == 0) return g;
  Rng rng(seed);
  return g.with_edges_removed(delete_non_bridges(g, g.edges(), static_cast<std::size_t>(k), rng));
}

Graph random_addition(const Graph& g, int k, std::uint64_t seed) {
  check_k(k);
  if (k == 0) return g;
  const auto pool = non_edges(g);
  Rng rng(seed);
  const auto pick = sample_without_replacement(pool.size(), std::min(pool.size(), static_cast<std::size_t>(k)), rng);
  std::vector<Edge> added;
  for (const std::size_t i : pick) added.push_back(pool[i]);
  return g.with_edges_added(added);
}

Graph random_substitution(const Graph& g, int k, std::uint64_t seed) {
  check_k(k);
  if (k == 0) return g;
  const auto pool_add = non_edges(g);
  const std::size_t budget = std::min(static_cast<std::size_t>(k), pool_add.size());
  Rng rng(seed);
  const auto removed = delete_non_bridges(g, g.edges(), budget, rng);
  const auto pick = sample_without_replacement(pool_add.size(), removed.size(), rng);
  std::vector<Edge> added;
  for (const std::size_t i : pick) added.push_back(pool_add[i]);
  return g.with_edges_removed(removed).with_edges_added(added);
}

Graph augment(const Graph& g, const LeaderConfig& lc, const AugmentationSpec& spec, const PmiOptions& options) {
  check_k(spec.k);
  if (spec.preserve_control) {
    switch (spec.kind) {
      case AugmentKind::kDelete:
        return edge_deletion(g, lc, spec.k, spec.seed, options);
      case AugmentKind::kAdd:
        return edge_addition(g, lc, spec.k, spec.seed, options);
      case AugmentKind::kSubstitute:
        return edge_substitution(g, lc, spec.k, spec.seed, options);
    }
  } else {
    switch (spec.kind) {
      case AugmentKind::kDelete:
        return random_deletion(g, spec.k, spec.seed);
      case AugmentKind::kAdd:
        return random_addition(g, spec.k, spec.seed);
      case AugmentKind::kSubstitute:
        return random_substitution(g, spec.k, spec.seed);
    }
  }
  throw std::invalid_argument("unknown augmentation kind");
}

AugmentAudit audit_augmentation(const Graph& original, const Graph& augmented, const LeaderConfig& lc,
                                const AugmentationSpec& spec, const PmiOptions& options) {
  AugmentAudit audit;
  audit.edges_before = static_cast<int>(original.num_edges());
  audit.edges_after = static_cast<int>(augmented.num_edges());
  std::vector<Edge> diff;
  std::set_difference(original.edges().begin(), original.edges().end(), augmented.edges().begin(),
                      augmented.edges().end(), std::back_inserter(diff));
  audit.removed = static_cast<int>(diff.size());
  diff.clear();
  std::set_difference(augmented.edges().begin(), augmented.edges().end(), original.edges().begin(),
                      original.edges().end(), std::back_inserter(diff));
  audit.added = static_cast<int>(diff.size());

  audit.delta_before = longest_pmi(original, lc, options);
  audit.delta_after = longest_pmi(augmented, lc, options);
  const auto& support = audit.delta_before.support;
  audit.distances_preserved =
      support_distances(original, lc, support) == support_distances(augmented, lc, support);

  switch (spec.kind) {
    case AugmentKind::kDelete:
      audit.edge_contract = audit.added == 0;
      break;
    case AugmentKind::kAdd:
      audit.edge_contract = audit.removed == 0;
      break;
    case AugmentKind::kSubstitute:
      audit.edge_contract = audit.removed == audit.added && audit.edges_before == audit.edges_after;
      break;
  }
  return audit;
}

}  // namespace ctrlgcl
