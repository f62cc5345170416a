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

// TUDataset text layout in <dir>/<name>/ or directly in <dir>:
//   <name>_A.txt               "u, v" per line, 1-based global node ids
//   <name>_graph_indicator.txt 1-based graph id per node line
//   <name>_graph_labels.txt    class per graph line
//   <name>_node_labels.txt     optional, label per node line

#include <filesystem>
#include <string>
#include <vector>

#include "ctrlgcl/graph.hpp"

namespace ctrlgcl {

struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  /// Per graph, in 0..num_classes-1.
  std::vector<int> labels;
  int num_classes = 0;
  /// Original label of each class index, ascending.
  std::vector<int> class_values;
  int self_loops_dropped = 0;
  /// Edge lines repeating an edge already seen, either orientation.
  int duplicate_edge_lines = 0;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Looks in dir/name first, then dir. Throws DataError naming the file and
/// line for a missing file, a malformed token or an edge that crosses
/// graphs.
Dataset parse_tudataset(const std::filesystem::path& dir, const std::string& name);

/// Writes dir/<name>_*.txt so that parse_tudataset(dir, name) reproduces
/// the graphs, labels (as class_values) and node labels.
void write_tudataset(const std::filesystem::path& dir, const Dataset& ds);

struct DatasetStats {
  std::size_t num_graphs = 0;
  int num_classes = 0;
  double mean_nodes = 0.0;
  double mean_edges = 0.0;
  int min_nodes = 0;
  int max_nodes = 0;
  std::size_t total_nodes = 0;
  std::size_t disconnected_graphs = 0;
  std::vector<std::size_t> class_counts;
};

DatasetStats dataset_stats(const Dataset& ds);

}  // namespace ctrlgcl
