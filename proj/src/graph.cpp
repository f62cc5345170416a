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

#include "ctrlgcl/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>

namespace ctrlgcl {

std::ostream& operator<<(std::ostream& os, const Edge& e) { return os << '(' << e.u << ',' << e.v << ')'; }

std::ostream& operator<<(std::ostream& os, Hops h) {
  if (!h.is_finite()) return os << "inf";
  return os << h.value();
}

Graph::Graph(Node num_nodes, std::vector<Edge> edges, std::optional<std::vector<int>> node_labels,
             std::optional<int> graph_label)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      node_labels_(std::move(node_labels)),
      graph_label_(graph_label) {
  if (num_nodes_ < 0) throw InvalidGraph("negative node count");
  if (node_labels_ && node_labels_->size() != static_cast<std::size_t>(num_nodes_)) {
    throw InvalidGraph("node label count does not match node count");
  }
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v >= num_nodes_) {
      std::ostringstream msg;
      msg << "edge " << e << " references a node outside 0.." << num_nodes_ - 1;
      throw InvalidGraph(msg.str());
    }
    if (e.u == e.v) {
      std::ostringstream msg;
      msg << "self-loop at node " << e.u;
      throw InvalidGraph(msg.str());
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    std::ostringstream msg;
    msg << "duplicate edge " << *dup;
    throw InvalidGraph(msg.str());
  }

  std::vector<std::size_t> degree(static_cast<std::size_t>(num_nodes_), 0);
  for (const Edge& e : edges_) {
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(static_cast<std::size_t>(num_nodes_) + 1, 0);
  for (std::size_t v = 0; v < degree.size(); ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Lexicographic edge order fills each row in ascending neighbor order for
  // the v side; the u side needs a sort.
  for (const Edge& e : edges_) {
    adjacency_[cursor[static_cast<std::size_t>(e.u)]++] = e.v;
    adjacency_[cursor[static_cast<std::size_t>(e.v)]++] = e.u;
  }
  for (std::size_t v = 0; v < degree.size(); ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

std::span<const Node> Graph::neighbors(Node v) const {
  const auto i = static_cast<std::size_t>(v);
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

bool Graph::has_edge(Node a, Node b) const {
  if (a == b || a < 0 || b < 0 || a >= num_nodes_ || b >= num_nodes_) return false;
  const auto row = neighbors(a);
  return std::binary_search(row.begin(), row.end(), b);
}

Graph Graph::with_graph_label(std::optional<int> label) const {
  Graph copy = *this;
  copy.graph_label_ = label;
  return copy;
}

Graph Graph::with_edges_removed(std::span<const Edge> removed) const {
  std::vector<Edge> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  std::set_difference(edges_.begin(), edges_.end(), drop.begin(), drop.end(), std::back_inserter(kept));
  return Graph(num_nodes_, std::move(kept), node_labels_, graph_label_);
}

Graph Graph::with_edges_added(std::span<const Edge> added) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), added.begin(), added.end());
  return Graph(num_nodes_, std::move(all), node_labels_, graph_label_);
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ && a.node_labels_ == b.node_labels_ &&
         a.graph_label_ == b.graph_label_;
}

LeaderConfig::LeaderConfig(std::vector<Node> leaders, Node num_nodes)
    : num_nodes_(num_nodes), leaders_(std::move(leaders)) {
  if (leaders_.empty()) throw InvalidLeaders("leader set is empty");
  leader_slot_.assign(static_cast<std::size_t>(std::max(num_nodes_, 0)), -1);
  follower_slot_.assign(leader_slot_.size(), -1);
  for (std::size_t i = 0; i < leaders_.size(); ++i) {
    const Node v = leaders_[i];
    if (v < 0 || v >= num_nodes_) {
      throw InvalidLeaders("leader " + std::to_string(v) + " out of range for " + std::to_string(num_nodes_) +
                           " nodes");
    }
    if (leader_slot_[static_cast<std::size_t>(v)] >= 0) {
      throw InvalidLeaders("leader " + std::to_string(v) + " listed twice");
    }
    leader_slot_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  for (Node v = 0; v < num_nodes_; ++v) {
    if (leader_slot_[static_cast<std::size_t>(v)] < 0) {
      follower_slot_[static_cast<std::size_t>(v)] = static_cast<int>(followers_.size());
      followers_.push_back(v);
    }
  }
}

bool LeaderConfig::covers_components(const Graph& g) const {
  const auto comps = connected_components(g);
  return std::all_of(comps.begin(), comps.end(), [&](const std::vector<Node>& comp) {
    return std::any_of(comp.begin(), comp.end(), [&](Node v) { return is_leader(v); });
  });
}

std::vector<Hops> bfs_distances(const Graph& g, Node source) {
  std::vector<Hops> dist(static_cast<std::size_t>(g.num_nodes()), Hops::infinity());
  std::vector<Node> frontier{source};
  dist[static_cast<std::size_t>(source)] = Hops(0);
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const Node v = frontier[head];
    const Hops next = dist[static_cast<std::size_t>(v)] + 1;
    for (const Node w : g.neighbors(v)) {
      auto& d = dist[static_cast<std::size_t>(w)];
      if (!d.is_finite()) {
        d = next;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<Node> bfs_parents(const Graph& g, Node source) {
  std::vector<Node> parent(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<char> seen(parent.size(), 0);
  std::vector<Node> frontier{source};
  seen[static_cast<std::size_t>(source)] = 1;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const Node v = frontier[head];
    for (const Node w : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        parent[static_cast<std::size_t>(w)] = v;
        frontier.push_back(w);
      }
    }
  }
  return parent;
}

std::vector<int> component_ids(const Graph& g) {
  std::vector<int> id(static_cast<std::size_t>(g.num_nodes()), -1);
  int next = 0;
  std::vector<Node> stack;
  for (Node s = 0; s < g.num_nodes(); ++s) {
    if (id[static_cast<std::size_t>(s)] >= 0) continue;
    id[static_cast<std::size_t>(s)] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Node v = stack.back();
      stack.pop_back();
      for (const Node w : g.neighbors(v)) {
        if (id[static_cast<std::size_t>(w)] < 0) {
          id[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return id;
}

std::vector<std::vector<Node>> connected_components(const Graph& g) {
  const auto id = component_ids(g);
  const int count = id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
  std::vector<std::vector<Node>> comps(static_cast<std::size_t>(count));
  for (Node v = 0; v < g.num_nodes(); ++v) comps[static_cast<std::size_t>(id[static_cast<std::size_t>(v)])].push_back(v);
  return comps;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

namespace {

void check_permutation(std::span<const Node> perm, Node n) {
  if (perm.size() != static_cast<std::size_t>(n)) throw InvalidGraph("permutation length differs from node count");
  std::vector<char> hit(perm.size(), 0);
  for (const Node p : perm) {
    if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)]) throw InvalidGraph("relabeling is not a bijection");
    hit[static_cast<std::size_t>(p)] = 1;
  }
}

}  // namespace

Graph relabel(const Graph& g, std::span<const Node> perm) {
  check_permutation(perm, g.num_nodes());
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    edges.emplace_back(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]);
  }
  std::optional<std::vector<int>> labels;
  if (g.node_labels()) {
    labels.emplace(g.node_labels()->size());
    for (std::size_t v = 0; v < perm.size(); ++v) (*labels)[static_cast<std::size_t>(perm[v])] = (*g.node_labels())[v];
  }
  return Graph(g.num_nodes(), std::move(edges), std::move(labels), g.graph_label());
}

LeaderConfig relabel(const LeaderConfig& lc, std::span<const Node> perm) {
  check_permutation(perm, lc.num_nodes());
  std::vector<Node> mapped;
  mapped.reserve(lc.num_leaders());
  for (const Node v : lc.leaders()) mapped.push_back(perm[static_cast<std::size_t>(v)]);
  return LeaderConfig(std::move(mapped), lc.num_nodes());
}

}  // namespace ctrlgcl
