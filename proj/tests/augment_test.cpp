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

#include <algorithm>

#include "ctrlgcl/augment.hpp"
#include "support/oracles.hpp"

namespace ctrlgcl {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;

using Edges = std::vector<Edge>;

bool subset(const Edges& a, const Edges& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

TEST(Backbone, Examples) {
  EXPECT_EQ(backbone(path_graph(4), LeaderConfig({0}, 4)).edges, (Edges{{0, 1}, {1, 2}, {2, 3}}));
  const Backbone c4 = backbone(cycle_graph(4), LeaderConfig({0}, 4));
  EXPECT_EQ(c4.support, (std::vector<Node>{1, 2}));
  EXPECT_EQ(c4.edges, (Edges{{0, 1}, {1, 2}}));
  EXPECT_EQ(backbone(path_graph(2), LeaderConfig({1}, 2)).edges, (Edges{{0, 1}}));
}

TEST(EdgeDeletion, Examples) {
  const Graph c4 = cycle_graph(4);
  const LeaderConfig lc({0}, 4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph out = edge_deletion(c4, lc, 1, seed);
    ASSERT_EQ(out.num_edges(), 3u);
    Edges gone;
    std::set_difference(c4.edges().begin(), c4.edges().end(), out.edges().begin(), out.edges().end(),
                        std::back_inserter(gone));
    ASSERT_EQ(gone.size(), 1u);
    EXPECT_TRUE(gone[0] == Edge(2, 3) || gone[0] == Edge(0, 3));
    EXPECT_GE(longest_pmi(out, lc).delta, 2);
  }
  EXPECT_EQ(edge_deletion(path_graph(5), LeaderConfig({2}, 5), 1, 7), path_graph(5));
  EXPECT_EQ(edge_deletion(path_graph(2), LeaderConfig({1}, 2), 5, 7), path_graph(2));
}

TEST(EdgeDeletion, OversizedKStopsAtBridges) {
  // Only one of the two non-backbone C4 edges can go before the rest is a tree.
  const Graph out = edge_deletion(cycle_graph(4), LeaderConfig({0}, 4), 10, 3);
  EXPECT_EQ(out.num_edges(), 3u);
  EXPECT_TRUE(is_connected(out));
}

TEST(MaximalAdditionSet, Examples) {
  EXPECT_TRUE(maximal_addition_set(path_graph(4), LeaderConfig({0}, 4)).empty());
  EXPECT_EQ(maximal_addition_set(cycle_graph(4), LeaderConfig({0}, 4)), (Edges{{1, 3}}));
  EXPECT_TRUE(maximal_addition_set(complete_graph(5), LeaderConfig({0}, 5)).empty());
}

TEST(EdgeAddition, Examples) {
  EXPECT_EQ(edge_addition(complete_graph(5), LeaderConfig({1}, 5), 3, 1), complete_graph(5));
  EXPECT_EQ(edge_addition(path_graph(4), LeaderConfig({0}, 4), 2, 1), path_graph(4));
  const Graph out = edge_addition(cycle_graph(4), LeaderConfig({0}, 4), 1, 1);
  EXPECT_EQ(out, cycle_graph(4).with_edges_added(Edges{{1, 3}}));
}

TEST(EdgeSubstitution, Examples) {
  Rng rng(41);
  EXPECT_EQ(edge_substitution(testing::random_tree(rng, 9), LeaderConfig({0}, 9), 2, 5).num_edges(), 8u);
  const Graph tree = testing::random_tree(rng, 9);
  EXPECT_EQ(edge_substitution(tree, LeaderConfig({3}, 9), 2, 5), tree);
  EXPECT_EQ(edge_substitution(complete_graph(5), LeaderConfig({0}, 5), 2, 5), complete_graph(5));
  const Graph c4 = cycle_graph(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph out = edge_substitution(c4, LeaderConfig({0}, 4), 1, seed);
    EXPECT_EQ(out.num_edges(), 4u);
    EXPECT_TRUE(out.has_edge(1, 3));
    EXPECT_TRUE(out.has_edge(0, 1) && out.has_edge(1, 2));
  }
}

TEST(Augment, DispatchAndZeroK) {
  const Graph c4 = cycle_graph(4);
  const LeaderConfig lc({0}, 4);
  AugmentationSpec spec;
  spec.k = 0;
  EXPECT_EQ(augment(c4, lc, spec), c4);
  spec.k = -1;
  EXPECT_THROW(augment(c4, lc, spec), std::invalid_argument);
  spec.k = 1;
  spec.kind = AugmentKind::kAdd;
  EXPECT_EQ(augment(c4, lc, spec), edge_addition(c4, lc, 1, spec.seed));
  EXPECT_EQ(parse_augment_kind("delete"), AugmentKind::kDelete);
  EXPECT_EQ(to_string(AugmentKind::kSubstitute), "substitute");
  EXPECT_THROW(parse_augment_kind("swap"), std::invalid_argument);
}

TEST(RandomAugment, KeepsConnectivityAndCounts) {
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    const int n = 4 + static_cast<int>(rng() % 12);
    const Graph g = testing::random_connected_graph(rng, n);
    const std::uint64_t seed = rng();
    const Graph del = random_deletion(g, 2, seed);
    EXPECT_TRUE(is_connected(del));
    EXPECT_TRUE(subset(del.edges(), g.edges()));
    const Graph add = random_addition(g, 2, seed);
    EXPECT_TRUE(subset(g.edges(), add.edges()));
    const std::size_t complete = static_cast<std::size_t>(n * (n - 1) / 2);
    EXPECT_EQ(add.num_edges(), std::min(g.num_edges() + 2, complete));
    const Graph sub = random_substitution(g, 2, seed);
    EXPECT_TRUE(is_connected(sub));
    EXPECT_EQ(random_substitution(g, 2, seed), sub);
  }
}

TEST(Audit, FlagsDeltaLossAndContract) {
  const Graph c4 = cycle_graph(4);
  const LeaderConfig lc({0}, 4);
  AugmentationSpec spec;
  spec.kind = AugmentKind::kDelete;
  // Cutting the backbone edge (0,1) moves node 1 to distance 3.
  const Graph bad = c4.with_edges_removed(Edges{{0, 1}});
  const AugmentAudit a = audit_augmentation(c4, bad, lc, spec);
  EXPECT_FALSE(a.distances_preserved);
  EXPECT_FALSE(a.passed());
  spec.kind = AugmentKind::kAdd;
  EXPECT_FALSE(audit_augmentation(c4, c4.with_edges_removed(Edges{{2, 3}}), lc, spec).edge_contract);
}

// Property suite: every kind on random connected graphs in the exact regime.
class AugmentProperty : public ::testing::TestWithParam<AugmentKind> {};

TEST_P(AugmentProperty, PreservesDeltaDistancesAndContracts) {
  Rng rng(43 + static_cast<int>(GetParam()));
  for (int t = 0; t < 150; ++t) {
    const int n = 3 + static_cast<int>(rng() % 16);
    const Graph g = testing::random_connected_graph(rng, n);
    const LeaderConfig lc = testing::random_leaders(rng, n, 1 + static_cast<int>(rng() % std::min(3, n - 1)));
    AugmentationSpec spec;
    spec.kind = GetParam();
    spec.k = 1 + static_cast<int>(rng() % 4);
    spec.seed = rng();
    const Graph out = augment(g, lc, spec);
    const AugmentAudit audit = audit_augmentation(g, out, lc, spec);
    EXPECT_TRUE(audit.passed()) << "trial " << t;
    // Independent recomputation of the invariants.
    const DeltaBound before = longest_pmi(g, lc);
    EXPECT_GE(longest_pmi(out, lc).delta, before.delta);
    const auto fw_g = testing::floyd_warshall(g);
    const auto fw_o = testing::floyd_warshall(out);
    for (const Node l : lc.leaders()) {
      for (const Node w : before.support) EXPECT_EQ(fw_g[l][w], fw_o[l][w]);
    }
    EXPECT_TRUE(is_connected(out));
    switch (spec.kind) {
      case AugmentKind::kDelete:
        EXPECT_TRUE(subset(out.edges(), g.edges()));
        break;
      case AugmentKind::kAdd:
        EXPECT_TRUE(subset(g.edges(), out.edges()));
        break;
      case AugmentKind::kSubstitute:
        EXPECT_EQ(out.num_edges(), g.num_edges());
        break;
    }
    EXPECT_EQ(augment(g, lc, spec), out);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, AugmentProperty,
                         ::testing::Values(AugmentKind::kDelete, AugmentKind::kAdd, AugmentKind::kSubstitute),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(AugmentProperty, BackboneAloneRealizesDistances) {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 14);
    const Graph g = testing::random_connected_graph(rng, n);
    const LeaderConfig lc = testing::random_leaders(rng, n, 1 + static_cast<int>(rng() % std::min(3, n - 1)));
    const Backbone bb = backbone(g, lc);
    const auto fw_g = testing::floyd_warshall(g);
    const auto fw_b = testing::floyd_warshall(Graph(n, bb.edges));
    for (const Node l : lc.leaders()) {
      for (const Node w : bb.support) EXPECT_EQ(fw_g[l][w], fw_b[l][w]);
    }
    EXPECT_TRUE(subset(bb.edges, g.edges()));
  }
}

TEST(AugmentProperty, AdditionSetJointlyPreservesDistances) {
  Rng rng(48);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 14);
    const Graph g = testing::random_connected_graph(rng, n);
    const LeaderConfig lc = testing::random_leaders(rng, n, 1 + static_cast<int>(rng() % std::min(3, n - 1)));
    const auto set = maximal_addition_set(g, lc);
    const auto support = longest_pmi(g, lc).support;
    const auto fw_g = testing::floyd_warshall(g);
    const auto fw_a = testing::floyd_warshall(g.with_edges_added(set));
    for (const Node l : lc.leaders()) {
      for (const Node w : support) EXPECT_EQ(fw_g[l][w], fw_a[l][w]);
    }
    for (const Edge& e : set) EXPECT_FALSE(g.has_edge(e.u, e.v));
  }
}

}  // namespace
}  // namespace ctrlgcl
