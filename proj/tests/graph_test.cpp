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

#include <gtest/gtest.h>

#include <numeric>

#include "ctrlgcl/graph.hpp"
#include "support/oracles.hpp"

namespace ctrlgcl {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;
using testing::star_graph;

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

TEST(Graph, RejectsSelfLoopDuplicateAndOutOfRange) {
  EXPECT_THROW(Graph(2, {Edge(0, 0)}), InvalidGraph);
  EXPECT_THROW(Graph(2, {Edge(0, 1), Edge(1, 0)}), InvalidGraph);
  EXPECT_THROW(Graph(2, {Edge(0, 2)}), InvalidGraph);
  EXPECT_THROW(Graph(-1), InvalidGraph);
  EXPECT_THROW(Graph(2, {}, std::vector<int>{1}), InvalidGraph);
}

TEST(Graph, NeighborsSortedAndEdgesCanonical) {
  const Graph g(4, {Edge(3, 0), Edge(2, 0), Edge(1, 0)});
  const auto nb = g.neighbors(0);
  EXPECT_EQ(std::vector<Node>(nb.begin(), nb.end()), (std::vector<Node>{1, 2, 3}));
  EXPECT_EQ(g.edges().front(), Edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_FALSE(g.has_edge(1, 1));
}

TEST(Laplacian, Examples) {
  EXPECT_EQ(laplacian(complete_graph(3)), mat({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  EXPECT_EQ(laplacian(Graph(1)), mat({{0}}));
  EXPECT_EQ(laplacian(path_graph(3)), mat({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
}

TEST(PartitionLaplacian, Examples) {
  {
    const auto p = partition_laplacian(path_graph(3), LeaderConfig({2}, 3));
    EXPECT_EQ(p.A, mat({{1, -1}, {-1, 2}}));
    EXPECT_EQ(p.B, mat({{0}, {-1}}));
    EXPECT_EQ(p.C, mat({{1}}));
  }
  {
    const auto p = partition_laplacian(path_graph(2), LeaderConfig({1}, 2));
    EXPECT_EQ(p.A, mat({{1}}));
    EXPECT_EQ(p.B, mat({{-1}}));
    EXPECT_EQ(p.C, mat({{1}}));
  }
  {
    const auto p = partition_laplacian(star_graph(3), LeaderConfig({0}, 4));
    EXPECT_EQ(p.A, Eigen::MatrixXd::Identity(3, 3));
    EXPECT_EQ(p.B, mat({{-1}, {-1}, {-1}}));
  }
}

TEST(PartitionLaplacian, RejectsForeignLeaderConfig) {
  EXPECT_THROW(partition_laplacian(path_graph(3), LeaderConfig({0}, 4)), InvalidLeaders);
}

TEST(LeaderConfig, Validation) {
  EXPECT_THROW(LeaderConfig({}, 3), InvalidLeaders);
  EXPECT_THROW(LeaderConfig({1, 1}, 3), InvalidLeaders);
  EXPECT_THROW(LeaderConfig({3}, 3), InvalidLeaders);
  const LeaderConfig lc({2, 0}, 4);
  EXPECT_EQ(lc.followers(), (std::vector<Node>{1, 3}));
  EXPECT_EQ(lc.leader_slot(0), 1);
  EXPECT_EQ(lc.follower_slot(3), 1);
}

TEST(Bfs, Examples) {
  const auto inf = Hops::infinity();
  EXPECT_EQ(bfs_distances(path_graph(4), 0), (std::vector<Hops>{Hops(0), Hops(1), Hops(2), Hops(3)}));
  EXPECT_EQ(bfs_distances(Graph(4, {Edge(0, 1), Edge(2, 3)}), 0), (std::vector<Hops>{Hops(0), Hops(1), inf, inf}));
  EXPECT_EQ(bfs_distances(cycle_graph(4), 0), (std::vector<Hops>{Hops(0), Hops(1), Hops(2), Hops(1)}));
}

TEST(Hops, InfinityOrdersAboveAndSaturates) {
  EXPECT_LT(Hops(1000000), Hops::infinity());
  EXPECT_EQ(Hops::infinity() + 1, Hops::infinity());
  EXPECT_EQ(Hops(2) + 3, Hops(5));
}

TEST(Components, Examples) {
  using C = std::vector<std::vector<Node>>;
  EXPECT_EQ(connected_components(complete_graph(3)), (C{{0, 1, 2}}));
  EXPECT_EQ(connected_components(Graph(4)), (C{{0}, {1}, {2}, {3}}));
  EXPECT_EQ(connected_components(Graph(3, {Edge(0, 1)})), (C{{0, 1}, {2}}));
  EXPECT_FALSE(is_connected(Graph(3, {Edge(0, 1)})));
  EXPECT_TRUE(is_connected(Graph(1)));
}

TEST(Relabel, Examples) {
  const Graph p = path_graph(3);
  EXPECT_EQ(relabel(p, std::vector<Node>{0, 1, 2}), p);
  EXPECT_EQ(relabel(p, std::vector<Node>{2, 1, 0}), p);
  EXPECT_EQ(relabel(complete_graph(3), std::vector<Node>{1, 2, 0}), complete_graph(3));
  EXPECT_THROW(relabel(p, std::vector<Node>{0, 0, 1}), InvalidGraph);
  EXPECT_THROW(relabel(p, std::vector<Node>{0, 1}), InvalidGraph);
}

TEST(Relabel, CarriesNodeLabelsAndLeaderOrder) {
  const Graph g(3, {Edge(0, 1)}, std::vector<int>{7, 8, 9}, 4);
  const Graph r = relabel(g, std::vector<Node>{2, 0, 1});
  EXPECT_EQ(*r.node_labels(), (std::vector<int>{8, 9, 7}));
  EXPECT_TRUE(r.has_edge(2, 0));
  EXPECT_EQ(r.graph_label(), 4);
  EXPECT_EQ(relabel(LeaderConfig({1, 0}, 3), std::vector<Node>{2, 0, 1}).leaders(), (std::vector<Node>{0, 2}));
}

TEST(GraphProperty, LaplacianSymmetricZeroRowSumsPsd) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const Graph g = testing::random_connected_graph(rng, 2 + static_cast<int>(rng() % 19));
    const Eigen::MatrixXd L = laplacian(g);
    EXPECT_EQ(L, L.transpose());
    EXPECT_EQ(L.rowwise().sum().cwiseAbs().maxCoeff(), 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
    EXPECT_GE(eig.eigenvalues()(0), -1e-10);
    EXPECT_LE(std::abs(eig.eigenvalues()(0)), 1e-10);
  }
}

TEST(GraphProperty, PartitionReassemblesLaplacian) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const Graph g = testing::random_connected_graph(rng, n);
    const LeaderConfig lc = testing::random_leaders(rng, n, 1 + static_cast<int>(rng() % std::min(3, n - 1)));
    const auto p = partition_laplacian(g, lc);
    const auto nf = p.A.rows();
    Eigen::MatrixXd M(n, n);
    M << p.A, p.B, p.B.transpose(), p.C;
    std::vector<Node> order = lc.followers();
    order.insert(order.end(), lc.leaders().begin(), lc.leaders().end());
    Eigen::MatrixXd back(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) back(order[i], order[j]) = M(i, j);
    }
    EXPECT_EQ(back, laplacian(g)) << "nf=" << nf;
  }
}

TEST(GraphProperty, FollowerBlockPositiveDefiniteWhenConnected) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 19);
    const Graph g = testing::random_connected_graph(rng, n);
    const LeaderConfig lc = testing::random_leaders(rng, n, 1 + static_cast<int>(rng() % std::min(3, n - 1)));
    const auto p = partition_laplacian(g, lc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.A);
    EXPECT_GT(eig.eigenvalues()(0), 1e-10);
  }
}

TEST(GraphProperty, BfsMatchesFloydWarshall) {
  Rng rng(14);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (coin(rng) < 0.25) edges.emplace_back(i, j);
      }
    }
    const Graph g(n, edges);
    const auto fw = testing::floyd_warshall(g);
    for (int s = 0; s < n; ++s) {
      const auto d = bfs_distances(g, s);
      for (int v = 0; v < n; ++v) {
        if (fw[s][v] < 0) {
          EXPECT_FALSE(d[v].is_finite());
        } else {
          EXPECT_EQ(d[v], Hops(fw[s][v]));
        }
      }
    }
  }
}

TEST(GraphProperty, BfsParentsFormShortestPathTree) {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const Graph g = testing::random_connected_graph(rng, 3 + static_cast<int>(rng() % 10));
    const auto dist = bfs_distances(g, 0);
    const auto parent = bfs_parents(g, 0);
    EXPECT_EQ(parent[0], -1);
    for (Node v = 1; v < g.num_nodes(); ++v) {
      ASSERT_GE(parent[v], 0);
      EXPECT_TRUE(g.has_edge(v, parent[v]));
      EXPECT_EQ(dist[parent[v]] + 1, dist[v]);
    }
  }
}

}  // namespace
}  // namespace ctrlgcl
