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

#include "ctrlgcl/embedding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ctrlgcl/controllability.hpp"
#include "ctrlgcl/parallel.hpp"
#include "ctrlgcl/random.hpp"

namespace ctrlgcl {

std::string_view to_string(LeaderStrategy strategy) {
  return strategy == LeaderStrategy::kSeededRandom ? "random" : "degree";
}

LeaderStrategy parse_leader_strategy(std::string_view name) {
  if (name == "random") return LeaderStrategy::kSeededRandom;
  if (name == "degree") return LeaderStrategy::kDegreeRanked;
  throw std::invalid_argument("unknown leader strategy '" + std::string(name) + "' (expected random or degree)");
}

void validate(const LeaderPolicy& policy) {
  if (policy.sizes.empty()) throw std::invalid_argument("leader policy needs at least one size");
  for (const int s : policy.sizes) {
    if (s < 1) throw std::invalid_argument("leader sizes must be >= 1, got " + std::to_string(s));
  }
  if (policy.samples_per_size < 1) throw std::invalid_argument("samples per size must be >= 1");
}

int effective_leader_count(const Graph& g, int s) {
  const int components = static_cast<int>(connected_components(g).size());
  return std::max(components, std::min(s, std::max(1, g.num_nodes() - 1)));
}

namespace {

// Descending degree, then ascending id.
std::vector<Node> degree_order(const Graph& g) {
  std::vector<Node> order(static_cast<std::size_t>(g.num_nodes()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return g.degree(a) > g.degree(b); });
  return order;
}

// Highest-degree node of each component, components by smallest member.
std::vector<Node> component_anchors(const Graph& g) {
  std::vector<Node> anchors;
  for (const auto& comp : connected_components(g)) {
    Node best = comp.front();
    for (const Node v : comp) {
      if (g.degree(v) > g.degree(best)) best = v;
    }
    anchors.push_back(best);
  }
  return anchors;
}

}  // namespace

std::vector<std::vector<LeaderConfig>> select_leaders(const Graph& g, const LeaderPolicy& policy,
                                                      std::uint64_t graph_index) {
  validate(policy);
  if (g.num_nodes() == 0) throw InvalidGraph("cannot select leaders on an empty graph");
  const auto components = connected_components(g);
  const std::vector<Node> anchors = components.size() > 1 ? component_anchors(g) : std::vector<Node>{};
  const std::vector<Node> by_degree = degree_order(g);
  Rng rng(derive_seed(policy.seed, graph_index));

  std::vector<std::vector<LeaderConfig>> out;
  out.reserve(policy.sizes.size());
  for (const int s : policy.sizes) {
    const auto count = static_cast<std::size_t>(effective_leader_count(g, s));
    std::vector<char> taken(static_cast<std::size_t>(g.num_nodes()), 0);
    for (const Node a : anchors) taken[static_cast<std::size_t>(a)] = 1;
    std::vector<Node> rest;
    for (Node v = 0; v < g.num_nodes(); ++v) {
      if (!taken[static_cast<std::size_t>(v)]) rest.push_back(v);
    }

    std::vector<LeaderConfig> configs;
    if (policy.strategy == LeaderStrategy::kDegreeRanked) {
      std::vector<Node> leaders = anchors;
      for (const Node v : by_degree) {
        if (leaders.size() == count) break;
        if (!taken[static_cast<std::size_t>(v)]) leaders.push_back(v);
      }
      configs.emplace_back(std::move(leaders), g.num_nodes());
    } else {
      for (int r = 0; r < policy.samples_per_size; ++r) {
        std::vector<Node> leaders = anchors;
        for (const std::size_t i : sample_without_replacement(rest.size(), count - anchors.size(), rng)) {
          leaders.push_back(rest[i]);
        }
        configs.emplace_back(std::move(leaders), g.num_nodes());
      }
    }
    out.push_back(std::move(configs));
  }
  return out;
}

std::size_t embedding_dimension(const EmbeddingOptions& options) {
  return 12 * options.policy.sizes.size() + 2 + 2 * static_cast<std::size_t>(options.n_lap_eigs);
}

namespace {

constexpr std::array<const char*, 4> kMetrics{"rank_frac", "trace", "min_nonzero_eig", "logdet"};
constexpr std::array<const char*, 3> kAggregates{"mean", "min", "max"};

}  // namespace

std::vector<std::string> embedding_schema(const EmbeddingOptions& options) {
  std::vector<std::string> names;
  names.reserve(embedding_dimension(options));
  for (const int s : options.policy.sizes) {
    for (const char* metric : kMetrics) {
      for (const char* agg : kAggregates) names.push_back("leaders" + std::to_string(s) + "." + metric + "." + agg);
    }
  }
  names.emplace_back("num_nodes");
  names.emplace_back("num_edges");
  for (int i = 0; i < options.n_lap_eigs; ++i) names.push_back("laplacian.smallest_nonzero." + std::to_string(i));
  for (int i = 0; i < options.n_lap_eigs; ++i) names.push_back("laplacian.largest." + std::to_string(i));
  return names;
}

CtrlEmbedding ctrl_embedding(const Graph& g, const EmbeddingOptions& options, std::uint64_t graph_index) {
  if (options.n_lap_eigs < 0) throw std::invalid_argument("n_lap_eigs must be non-negative");
  CtrlEmbedding out;
  out.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(embedding_dimension(options)));
  Eigen::Index at = 0;
  auto put = [&](double x) {
    if (!std::isfinite(x)) {
      ++out.nonfinite;
      x = 0.0;
    }
    out.values(at++) = x;
  };

  const auto per_size = select_leaders(g, options.policy, graph_index);
  for (const auto& configs : per_size) {
    // metrics x configs
    Eigen::MatrixXd m(4, static_cast<Eigen::Index>(configs.size()));
    for (std::size_t r = 0; r < configs.size(); ++r) {
      const LeaderConfig& lc = configs[r];
      Eigen::Vector4d row = Eigen::Vector4d::Zero();
      if (lc.num_followers() > 0) {
        try {
          const auto report = gramian_report(g, lc);
          row << static_cast<double>(report.rank) / static_cast<double>(lc.num_followers()), report.trace,
              report.min_nonzero_eig, report.ld;
        } catch (const StabilityError&) {
          ++out.unstable;
        }
      }
      for (Eigen::Index k = 0; k < 4; ++k) {
        if (!std::isfinite(row(k))) {
          ++out.nonfinite;
          row(k) = 0.0;
        }
      }
      m.col(static_cast<Eigen::Index>(r)) = row;
    }
    for (Eigen::Index k = 0; k < 4; ++k) {
      put(m.row(k).mean());
      put(m.row(k).minCoeff());
      put(m.row(k).maxCoeff());
    }
  }

  put(static_cast<double>(g.num_nodes()));
  put(static_cast<double>(g.num_edges()));
  const auto n_eigs = static_cast<Eigen::Index>(options.n_lap_eigs);
  Eigen::VectorXd smallest = Eigen::VectorXd::Zero(n_eigs);
  Eigen::VectorXd largest = Eigen::VectorXd::Zero(n_eigs);
  if (g.num_nodes() > 0 && n_eigs > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian(g), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const Eigen::Index n = lam.size();
    const double zero = 1e-9 * std::max(1.0, lam(n - 1));
    Eigen::Index filled = 0;
    for (Eigen::Index i = 0; i < n && filled < n_eigs; ++i) {
      if (lam(i) > zero) smallest(filled++) = lam(i);
    }
    for (Eigen::Index i = 0; i < std::min(n, n_eigs); ++i) largest(i) = lam(n - 1 - i);
  }
  for (Eigen::Index i = 0; i < n_eigs; ++i) put(smallest(i));
  for (Eigen::Index i = 0; i < n_eigs; ++i) put(largest(i));
  return out;
}

EmbeddingMatrix embed_dataset(std::span<const Graph> graphs, const EmbeddingOptions& options, unsigned threads) {
  if (graphs.empty()) throw std::invalid_argument("cannot embed an empty dataset");
  validate(options.policy);
  EmbeddingMatrix out;
  out.schema = embedding_schema(options);
  out.values.resize(static_cast<Eigen::Index>(graphs.size()), static_cast<Eigen::Index>(out.schema.size()));
  std::vector<int> nonfinite(graphs.size(), 0);
  std::vector<int> unstable(graphs.size(), 0);
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    const CtrlEmbedding e = ctrl_embedding(graphs[i], options, i);
    out.values.row(static_cast<Eigen::Index>(i)) = e.values.transpose();
    nonfinite[i] = e.nonfinite;
    unstable[i] = e.unstable;
  });
  out.nonfinite = std::accumulate(nonfinite.begin(), nonfinite.end(), 0);
  out.unstable = std::accumulate(unstable.begin(), unstable.end(), 0);
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0) throw std::invalid_argument("cannot standardize zero rows");
  Standardizer s;
  s.mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - s.mean;
  s.scale = (centered.colwise().squaredNorm() / static_cast<double>(rows.rows())).cwiseSqrt();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 1e-12 * std::max(1.0, std::abs(s.mean(j))))) s.scale(j) = 1.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != mean.size()) throw ShapeError("standardizer fitted on a different feature count");
  return (rows.rowwise() - mean).array().rowwise() / scale.array();
}

}  // namespace ctrlgcl
