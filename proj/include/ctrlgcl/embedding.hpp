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

// CTRL embedding: Gramian statistics aggregated over sampled leader sets,
// followed by a size and Laplacian-spectrum block. Layout for sizes s_1..s_q
// and n_lap_eigs = e:
//
//   for each s: {rank/N_f, trace, min_nonzero_eig, ld} x {mean, min, max}
//   num_nodes, num_edges,
//   e smallest nonzero Laplacian eigenvalues (ascending, zero-padded),
//   e largest Laplacian eigenvalues (descending, zero-padded)
//
// so d = 12 q + 2 + 2 e for every graph.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ctrlgcl/graph.hpp"

namespace ctrlgcl {

enum class LeaderStrategy { kSeededRandom, kDegreeRanked };

std::string_view to_string(LeaderStrategy strategy);
/// Accepts "random" and "degree". Throws std::invalid_argument.
LeaderStrategy parse_leader_strategy(std::string_view name);

struct LeaderPolicy {
  std::vector<int> sizes{1, 2, 3};
  int samples_per_size = 5;
  std::uint64_t seed = 0;
  LeaderStrategy strategy = LeaderStrategy::kSeededRandom;
};

/// Throws std::invalid_argument on empty sizes, a size < 1 or
/// samples_per_size < 1.
void validate(const LeaderPolicy& policy);

/// Leader count actually used for requested size s on g:
/// max(#components, min(s, max(1, n - 1))).
int effective_leader_count(const Graph& g, int s);

/// One list per policy size; seeded-random yields samples_per_size configs,
/// degree-ranked a single one. On a disconnected graph every config starts
/// with the highest-degree node (lowest id on ties) of each component.
/// Deterministic in (policy.seed, graph_index).
std::vector<std::vector<LeaderConfig>> select_leaders(const Graph& g, const LeaderPolicy& policy,
                                                      std::uint64_t graph_index = 0);

struct EmbeddingOptions {
  LeaderPolicy policy;
  int n_lap_eigs = 8;
};

std::size_t embedding_dimension(const EmbeddingOptions& options);
std::vector<std::string> embedding_schema(const EmbeddingOptions& options);

struct CtrlEmbedding {
  Eigen::VectorXd values;
  /// Non-finite intermediates replaced by 0.
  int nonfinite = 0;
  /// Leader configs whose Gramian did not exist (uncovered component).
  int unstable = 0;
};

CtrlEmbedding ctrl_embedding(const Graph& g, const EmbeddingOptions& options, std::uint64_t graph_index = 0);

struct EmbeddingMatrix {
  /// One row per graph, in dataset order.
  Eigen::MatrixXd values;
  std::vector<std::string> schema;
  int nonfinite = 0;
  int unstable = 0;
};

/// Row i is ctrl_embedding(graphs[i], options, i). Throws
/// std::invalid_argument for an empty dataset.
EmbeddingMatrix embed_dataset(std::span<const Graph> graphs, const EmbeddingOptions& options, unsigned threads = 1);

/// Per-feature z-scoring with population standard deviation; a feature with
/// zero spread keeps scale 1.
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& rows);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

}  // namespace ctrlgcl
