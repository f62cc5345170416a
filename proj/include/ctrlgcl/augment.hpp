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

// Edge perturbations that keep the leader distances of a longest-PMI witness
// set V_D, so the witness survives and delta cannot drop.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctrlgcl/graph.hpp"
#include "ctrlgcl/pmi.hpp"

namespace ctrlgcl {

enum class AugmentKind { kDelete, kAdd, kSubstitute };

std::string_view to_string(AugmentKind kind);
/// Accepts "delete", "add", "substitute". Throws std::invalid_argument.
AugmentKind parse_augment_kind(std::string_view name);

struct AugmentationSpec {
  AugmentKind kind = AugmentKind::kSubstitute;
  int k = 1;
  std::uint64_t seed = 0;
  /// False selects uniform random perturbation of the same kind: any
  /// non-bridge edge may go, any non-edge may come.
  bool preserve_control = true;
};

struct Backbone {
  /// Sorted.
  std::vector<Edge> edges;
  /// V_D, the support of the longest-PMI witness, ascending.
  std::vector<Node> support;
  DeltaBound delta;
};

/// Union over leaders l and v in V_D of the BFS-tree path from l to v, with
/// neighbors scanned in ascending id.
Backbone backbone(const Graph& g, const LeaderConfig& lc, const PmiOptions& options = {});

/// Edges of E \ E_B removed uniformly at random until min(k, candidates)
/// are gone. A drawn edge that is a bridge of the current graph is
/// discarded, so the component count never grows.
Graph edge_deletion(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed,
                    const PmiOptions& options = {});

/// Non-edges visited lexicographically; (u, v) is accepted when, in the
/// graph with all earlier acceptances added, every leader l and w in V_D
/// satisfy min(d(l,u) + 1 + d(v,w), d(l,v) + 1 + d(u,w)) >= d(l,w).
/// Throws std::logic_error if a final BFS finds a changed distance.
std::vector<Edge> maximal_addition_set(const Graph& g, const LeaderConfig& lc, const PmiOptions& options = {});

/// min(k, |set|) edges of maximal_addition_set drawn uniformly.
Graph edge_addition(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed,
                    const PmiOptions& options = {});

/// Deletes up to min(k, |maximal_addition_set(g)|) edges as edge_deletion
/// does, then adds as many drawn from maximal_addition_set(g). Each addition
/// is rechecked on the post-deletion graph and skipped if it would shorten a
/// V_D distance.
Graph edge_substitution(const Graph& g, const LeaderConfig& lc, int k, std::uint64_t seed,
                        const PmiOptions& options = {});

/// Unconstrained counterparts. Deletion keeps connectivity as above.
Graph random_deletion(const Graph& g, int k, std::uint64_t seed);
Graph random_addition(const Graph& g, int k, std::uint64_t seed);
Graph random_substitution(const Graph& g, int k, std::uint64_t seed);

/// Dispatch on spec.kind and spec.preserve_control. Throws
/// std::invalid_argument when spec.k < 0.
Graph augment(const Graph& g, const LeaderConfig& lc, const AugmentationSpec& spec, const PmiOptions& options = {});

struct AugmentAudit {
  int edges_before = 0;
  int edges_after = 0;
  int removed = 0;
  int added = 0;
  DeltaBound delta_before;
  DeltaBound delta_after;
  /// d(l, w) unchanged for every leader l and w in V_D of g.
  bool distances_preserved = false;
  /// E' within E (delete), E within E' (add), |E'| = |E| when the full k
  /// was substituted.
  bool edge_contract = false;

  bool passed() const { return distances_preserved && edge_contract && delta_after.delta >= delta_before.delta; }
};

AugmentAudit audit_augmentation(const Graph& original, const Graph& augmented, const LeaderConfig& lc,
                                const AugmentationSpec& spec, const PmiOptions& options = {});

}  // namespace ctrlgcl
