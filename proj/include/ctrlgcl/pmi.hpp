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

// Distance-to-leader vectors and pseudo-monotonically increasing (PMI)
// sequences. A sequence v_1..v_k with coordinates pi(1)..pi(k) is PMI when
//
//   D(v_i)[pi(i)] < D(v_j)[pi(i)]   for all i < j.
//
// The longest PMI length delta lower-bounds the controllable subspace
// dimension gamma. Only follower vectors take part.

#include <cstddef>
#include <vector>

#include "ctrlgcl/graph.hpp"

namespace ctrlgcl {

/// Hop distance from each leader, in leader-config order.
using DlVector = std::vector<Hops>;

class DlTable {
 public:
  DlTable(std::vector<Node> nodes, std::vector<DlVector> vectors, Node num_nodes);

  /// Followers, ascending.
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<DlVector>& vectors() const { return vectors_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t num_leaders() const { return vectors_.empty() ? 0 : vectors_.front().size(); }
  bool contains(Node v) const;
  /// Throws std::out_of_range for nodes without a vector.
  const DlVector& at(Node v) const;

 private:
  std::vector<Node> nodes_;
  std::vector<DlVector> vectors_;
  std::vector<int> slot_;
};

/// One BFS per leader.
DlTable dl_vectors(const Graph& g, const LeaderConfig& lc);

struct PmiSequence {
  std::vector<Node> nodes;
  /// 0-based leader coordinate per position.
  std::vector<int> coords;

  std::size_t size() const { return nodes.size(); }
  friend bool operator==(const PmiSequence&, const PmiSequence&) = default;
};

/// Throws std::out_of_range for unknown nodes or coordinates and ShapeError
/// when nodes and coords differ in length.
bool is_valid_pmi(const PmiSequence& seq, const DlTable& dl);

struct DeltaBound {
  int delta = 0;
  /// False when delta is only a greedy lower bound.
  bool exact = true;
  PmiSequence witness;
  /// Witness nodes, ascending.
  std::vector<Node> support;
};

struct PmiOptions {
  /// Exact search runs when the follower count is at most this.
  std::size_t exact_limit = 64;
};

/// Longest PMI over the follower vectors of (g, lc).
DeltaBound longest_pmi(const Graph& g, const LeaderConfig& lc, const PmiOptions& options = {});
DeltaBound longest_pmi(const DlTable& dl, const PmiOptions& options = {});

/// Exact longest PMI regardless of size.
///
/// After choosing v on coordinate c, the admissible rest is exactly the
/// vectors above v in c, so each search state is the candidate set
///   R(t) = { v : v_c > t_c for every c }
/// for a threshold vector t. Taking a minimizer of c in R(t) leaves a
/// superset of what any other choice on c leaves, hence
///   f(R) = max_c 1 + f(R minus the vectors at min_R c).
/// States are memoized on R; a branch stops once it reaches |R|.
DeltaBound exact_longest_pmi(const DlTable& dl);

/// Greedy lower bound. Appends the remaining vector (lexicographically
/// smallest, then lowest id) that is the strict unique minimum of some
/// coordinate; that choice loses no candidates. When none exists it takes a
/// minimizer of the coordinate that keeps the most candidates.
DeltaBound greedy_pmi(const DlTable& dl);

struct DeltaGammaCheck {
  int delta = 0;
  int gamma = 0;
  bool holds = false;
};

/// Throws std::domain_error outside the exact regime.
DeltaGammaCheck delta_leq_gamma_check(const Graph& g, const LeaderConfig& lc, const PmiOptions& options = {});

}  // namespace ctrlgcl
