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

#include "ctrlgcl/tudataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <string_view>

namespace ctrlgcl {
namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class LineReader {
 public:
  explicit LineReader(fs::path path) : path_(std::move(path)), in_(path_) {
    if (!in_) throw DataError("cannot open " + path_.string());
  }

  // Next non-blank line split on commas; false at end of file.
  bool next(std::vector<long long>& values) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const std::string_view body = trim(line);
      if (body.empty()) continue;
      values.clear();
      std::size_t start = 0;
      while (true) {
        const auto comma = body.find(',', start);
        const std::string_view token =
            trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        long long v = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
          fail("non-integer token '" + std::string(token) + "'");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  fs::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

// One integer per line.
std::vector<long long> read_column(const fs::path& path) {
  LineReader reader(path);
  std::vector<long long> out;
  std::vector<long long> values;
  while (reader.next(values)) {
    if (values.size() != 1) reader.fail("expected one value, found " + std::to_string(values.size()));
    out.push_back(values.front());
  }
  return out;
}

fs::path locate(const fs::path& dir, const std::string& name) {
  const fs::path nested = dir / name;
  if (fs::exists(nested / (name + "_A.txt"))) return nested;
  return dir;
}

}  // namespace

Dataset parse_tudataset(const fs::path& dir, const std::string& name) {
  const fs::path root = locate(dir, name);
  auto file = [&](const char* suffix) { return root / (name + suffix); };
  for (const char* required : {"_A.txt", "_graph_indicator.txt", "_graph_labels.txt"}) {
    if (!fs::exists(file(required))) throw DataError("missing required file " + file(required).string());
  }

  const std::vector<long long> indicator = read_column(file("_graph_indicator.txt"));
  const std::vector<long long> raw_labels = read_column(file("_graph_labels.txt"));
  const std::size_t num_graphs = raw_labels.size();
  const auto num_nodes = indicator.size();

  // Global node (0-based) -> (graph, local id).
  std::vector<int> graph_of(num_nodes);
  std::vector<Node> local(num_nodes);
  std::vector<Node> sizes(num_graphs, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    const long long gid = indicator[i];
    if (gid < 1 || static_cast<std::size_t>(gid) > num_graphs) {
      throw DataError(file("_graph_indicator.txt").string() + ":" + std::to_string(i + 1) + ": graph id " +
                      std::to_string(gid) + " outside 1.." + std::to_string(num_graphs));
    }
    graph_of[i] = static_cast<int>(gid - 1);
    local[i] = sizes[static_cast<std::size_t>(gid - 1)]++;
  }

  std::optional<std::vector<long long>> node_labels;
  if (fs::exists(file("_node_labels.txt"))) {
    node_labels = read_column(file("_node_labels.txt"));
    if (node_labels->size() != num_nodes) {
      throw DataError(file("_node_labels.txt").string() + ": " + std::to_string(node_labels->size()) +
                      " lines, expected " + std::to_string(num_nodes));
    }
  }

  Dataset ds;
  ds.name = name;
  std::vector<std::set<Edge>> edges(num_graphs);
  {
    LineReader reader(file("_A.txt"));
    std::vector<long long> values;
    while (reader.next(values)) {
      if (values.size() != 2) reader.fail("expected 'u, v'");
      for (const long long v : values) {
        if (v < 1 || static_cast<std::size_t>(v) > num_nodes) {
          reader.fail("node " + std::to_string(v) + " outside 1.." + std::to_string(num_nodes));
        }
      }
      const auto a = static_cast<std::size_t>(values[0] - 1);
      const auto b = static_cast<std::size_t>(values[1] - 1);
      if (graph_of[a] != graph_of[b]) {
        reader.fail("edge joins nodes of graphs " + std::to_string(graph_of[a] + 1) + " and " +
                    std::to_string(graph_of[b] + 1));
      }
      if (a == b) {
        ++ds.self_loops_dropped;
        continue;
      }
      if (!edges[static_cast<std::size_t>(graph_of[a])].emplace(local[a], local[b]).second) ++ds.duplicate_edge_lines;
    }
  }

  ds.class_values.assign(raw_labels.begin(), raw_labels.end());
  std::sort(ds.class_values.begin(), ds.class_values.end());
  ds.class_values.erase(std::unique(ds.class_values.begin(), ds.class_values.end()), ds.class_values.end());
  ds.num_classes = static_cast<int>(ds.class_values.size());

  std::vector<std::vector<int>> labels_per_graph(num_graphs);
  if (node_labels) {
    for (std::size_t i = 0; i < num_nodes; ++i) {
      labels_per_graph[static_cast<std::size_t>(graph_of[i])].push_back(static_cast<int>((*node_labels)[i]));
    }
  }
  ds.graphs.reserve(num_graphs);
  for (std::size_t gi = 0; gi < num_graphs; ++gi) {
    const auto lower = std::lower_bound(ds.class_values.begin(), ds.class_values.end(), raw_labels[gi]);
    const int label = static_cast<int>(lower - ds.class_values.begin());
    ds.labels.push_back(label);
    std::optional<std::vector<int>> nl;
    if (node_labels) nl = std::move(labels_per_graph[gi]);
    ds.graphs.emplace_back(sizes[gi], std::vector<Edge>(edges[gi].begin(), edges[gi].end()), std::move(nl), label);
  }
  return ds;
}

void write_tudataset(const fs::path& dir, const Dataset& ds) {
  fs::create_directories(dir);
  auto open = [&](const char* suffix) {
    std::ofstream out(dir / (ds.name + suffix), std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / (ds.name + suffix)).string());
    return out;
  };
  auto a = open("_A.txt");
  auto indicator = open("_graph_indicator.txt");
  auto labels = open("_graph_labels.txt");
  const bool with_node_labels =
      !ds.graphs.empty() && std::all_of(ds.graphs.begin(), ds.graphs.end(), [](const Graph& g) {
        return g.node_labels().has_value();
      });
  std::optional<std::ofstream> node_labels;
  if (with_node_labels) node_labels = open("_node_labels.txt");
  std::size_t offset = 1;
  for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
    const Graph& g = ds.graphs[gi];
    for (Node v = 0; v < g.num_nodes(); ++v) indicator << gi + 1 << '\n';
    if (node_labels) {
      for (const int l : *g.node_labels()) *node_labels << l << '\n';
    }
    for (const Edge& e : g.edges()) {
      a << offset + static_cast<std::size_t>(e.u) << ", " << offset + static_cast<std::size_t>(e.v) << '\n';
      a << offset + static_cast<std::size_t>(e.v) << ", " << offset + static_cast<std::size_t>(e.u) << '\n';
    }
    labels << ds.class_values.at(static_cast<std::size_t>(ds.labels[gi])) << '\n';
    offset += static_cast<std::size_t>(g.num_nodes());
  }
}

DatasetStats dataset_stats(const Dataset& ds) {
  DatasetStats s;
  s.num_graphs = ds.graphs.size();
  s.num_classes = ds.num_classes;
  s.class_counts.assign(static_cast<std::size_t>(ds.num_classes), 0);
  for (const int l : ds.labels) ++s.class_counts[static_cast<std::size_t>(l)];
  if (ds.graphs.empty()) return s;
  s.min_nodes = ds.graphs.front().num_nodes();
  s.max_nodes = s.min_nodes;
  std::size_t edges = 0;
  for (const Graph& g : ds.graphs) {
    s.total_nodes += static_cast<std::size_t>(g.num_nodes());
    edges += g.num_edges();
    s.min_nodes = std::min(s.min_nodes, g.num_nodes());
    s.max_nodes = std::max(s.max_nodes, g.num_nodes());
    if (!is_connected(g)) ++s.disconnected_graphs;
  }
  s.mean_nodes = static_cast<double>(s.total_nodes) / static_cast<double>(s.num_graphs);
  s.mean_edges = static_cast<double>(edges) / static_cast<double>(s.num_graphs);
  return s;
}

}  // namespace ctrlgcl
