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

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ctrlgcl/errors.hpp"

namespace ctrlgcl {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense 0-based node id.
using Node = int;

/// Undirected edge stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::ostream& operator<<(std::ostream& os, const Edge& e);

/// Hop count with a dedicated unreachable value that orders above every
/// finite distance. Addition saturates at infinity.
class Hops {
 public:
  constexpr Hops() = default;
  constexpr explicit Hops(int hops) : value_(hops) {}

  static constexpr Hops infinity() { return Hops(kInfinite); }

  constexpr bool is_finite() const { return value_ != kInfinite; }
  /// Only meaningful when is_finite().
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(Hops, Hops) = default;

  friend constexpr Hops operator+(Hops a, Hops b) {
    if (!a.is_finite() || !b.is_finite()) return infinity();
    return Hops(a.value_ + b.value_);
  }
  friend constexpr Hops operator+(Hops a, int b) { return a + Hops(b); }

 private:
  static constexpr int kInfinite = std::numeric_limits<int>::max();
  int value_ = 0;
};

std::ostream& operator<<(std::ostream& os, Hops h);

/// Undirected simple graph on nodes 0..n-1, immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidGraph on self-loops, duplicate edges or out-of-range
  /// endpoints.
  explicit Graph(Node num_nodes, std::vector<Edge> edges = {},
                 std::optional<std::vector<int>> node_labels = std::nullopt,
                 std::optional<int> graph_label = std::nullopt);

  Node num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted ascending.
  std::span<const Node> neighbors(Node v) const;
  int degree(Node v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(Node a, Node b) const;

  const std::optional<std::vector<int>>& node_labels() const { return node_labels_; }
  const std::optional<int>& graph_label() const { return graph_label_; }

  Graph with_graph_label(std::optional<int> label) const;
  Graph with_edges_removed(std::span<const Edge> removed) const;
  Graph with_edges_added(std::span<const Edge> added) const;

  friend bool operator==(const Graph&, const Graph&);

 private:
  Node num_nodes_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency.
  std::vector<std::size_t> offsets_{0};
  std::vector<Node> adjacency_;
  std::optional<std::vector<int>> node_labels_;
  std::optional<int> graph_label_;
};

/// Ordered leader list; followers are the remaining nodes in ascending id.
class LeaderConfig {
 public:
  /// Throws InvalidLeaders if empty, duplicated or out of range.
  LeaderConfig(std::vector<Node> leaders, Node num_nodes);

  const std::vector<Node>& leaders() const { return leaders_; }
  const std::vector<Node>& followers() const { return followers_; }
  std::size_t num_leaders() const { return leaders_.size(); }
  std::size_t num_followers() const { return followers_.size(); }
  Node num_nodes() const { return num_nodes_; }
  bool is_leader(Node v) const { return leader_slot_[static_cast<std::size_t>(v)] >= 0; }
  /// Position of v in leaders(), or -1.
  int leader_slot(Node v) const { return leader_slot_[static_cast<std::size_t>(v)]; }
  /// Position of v in followers(), or -1.
  int follower_slot(Node v) const { return follower_slot_[static_cast<std::size_t>(v)]; }

  /// Every connected component of g holds at least one leader.
  bool covers_components(const Graph& g) const;

  friend bool operator==(const LeaderConfig& a, const LeaderConfig& b) {
    return a.num_nodes_ == b.num_nodes_ && a.leaders_ == b.leaders_;
  }

 private:
  Node num_nodes_ = 0;
  std::vector<Node> leaders_;
  std::vector<Node> followers_;
  std::vector<int> leader_slot_;
  std::vector<int> follower_slot_;
};

/// Blocks of the Laplacian under followers-first ordering:
///   L = [[A, B], [B^T, C]].
template <typename Scalar>
struct PartitionedLaplacian {
  MatrixX<Scalar> A;
  MatrixX<Scalar> B;
  MatrixX<Scalar> C;
};

template <typename Scalar = double>
MatrixX<Scalar> laplacian(const Graph& g) {
  const Eigen::Index n = g.num_nodes();
  MatrixX<Scalar> L = MatrixX<Scalar>::Zero(n, n);
  for (Node v = 0; v < g.num_nodes(); ++v) L(v, v) = Scalar(g.degree(v));
  for (const Edge& e : g.edges()) {
    L(e.u, e.v) = Scalar(-1);
    L(e.v, e.u) = Scalar(-1);
  }
  return L;
}

/// Throws InvalidLeaders when lc was built for a different node count.
template <typename Scalar = double>
PartitionedLaplacian<Scalar> partition_laplacian(const Graph& g, const LeaderConfig& lc) {
  if (lc.num_nodes() != g.num_nodes()) {
    throw InvalidLeaders("leader config built for a graph with a different node count");
  }
  const auto nf = static_cast<Eigen::Index>(lc.num_followers());
  const auto nl = static_cast<Eigen::Index>(lc.num_leaders());
  PartitionedLaplacian<Scalar> p{MatrixX<Scalar>::Zero(nf, nf), MatrixX<Scalar>::Zero(nf, nl),
                                 MatrixX<Scalar>::Zero(nl, nl)};
  // Combined index: followers occupy [0, nf), leaders [nf, nf + nl).
  auto slot = [&](Node v) -> Eigen::Index {
    const int f = lc.follower_slot(v);
    return f >= 0 ? f : nf + lc.leader_slot(v);
  };
  auto put = [&](Eigen::Index i, Eigen::Index j, const Scalar& value) {
    if (i < nf && j < nf) {
      p.A(i, j) = value;
    } else if (i < nf) {
      p.B(i, j - nf) = value;
    } else if (j >= nf) {
      p.C(i - nf, j - nf) = value;
    }
  };
  for (Node v = 0; v < g.num_nodes(); ++v) put(slot(v), slot(v), Scalar(g.degree(v)));
  for (const Edge& e : g.edges()) {
    put(slot(e.u), slot(e.v), Scalar(-1));
    put(slot(e.v), slot(e.u), Scalar(-1));
  }
  return p;
}

/// Hop distances from source; unreachable nodes get Hops::infinity().
std::vector<Hops> bfs_distances(const Graph& g, Node source);

/// BFS predecessor of every node, scanning neighbors in ascending id so the
/// tree is deterministic. Source and unreachable nodes map to -1.
std::vector<Node> bfs_parents(const Graph& g, Node source);

/// Maximal connected node sets, each sorted, ordered by smallest member.
std::vector<std::vector<Node>> connected_components(const Graph& g);

/// Component index per node, numbered as in connected_components.
std::vector<int> component_ids(const Graph& g);

bool is_connected(const Graph& g);

/// Applies v -> perm[v] to edges and node labels. Throws InvalidGraph if perm
/// is not a bijection of 0..n-1.
Graph relabel(const Graph& g, std::span<const Node> perm);

/// Leader list mapped through perm, order preserved.
LeaderConfig relabel(const LeaderConfig& lc, std::span<const Node> perm);

}  // namespace ctrlgcl
