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

#include "ctrlgcl/pipeline.hpp"
#include "support/oracles.hpp"

namespace ctrlgcl {
namespace {

// Sparse versus dense random graphs, alternating labels.
Dataset two_class_dataset(int count, std::uint64_t seed) {
  Rng rng(seed);
  Dataset ds;
  ds.name = "SYN";
  ds.num_classes = 2;
  ds.class_values = {0, 1};
  for (int i = 0; i < count; ++i) {
    const int label = i % 2;
    const int n = 6 + static_cast<int>(rng() % 8);
    Graph g = label ? testing::random_connected_graph(rng, n) : testing::random_tree(rng, n);
    ds.graphs.push_back(g.with_graph_label(label));
    ds.labels.push_back(label);
  }
  return ds;
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.dataset = "SYN";
  cfg.seed = 3;
  cfg.train.epochs = 2;
  cfg.train.batch_size = 8;
  cfg.eval.folds = 4;
  cfg.eval.repetitions = 2;
  cfg.eval.label_rate = 0.5;
  return cfg;
}

TEST(Fingerprint, RecordsSeedsAndIsStable) {
  const RunConfig cfg = small_config();
  const std::string fp = fingerprint(cfg);
  EXPECT_EQ(fp, fingerprint(cfg));
  const RunConfig seeded = with_stage_seeds(cfg);
  for (const std::string& key : std::vector<std::string>{"seed=3", "leaders.seed=" + std::to_string(seeded.embedding.policy.seed),
                                "train.seed=" + std::to_string(seeded.train.seed),
                                "eval.seed=" + std::to_string(seeded.eval.seed)}) {
    EXPECT_NE(fp.find(key + "\n"), std::string::npos) << key << "\n" << fp;
  }
  EXPECT_NE(fp.find("hash=" + fingerprint_hash(cfg)), std::string::npos);
  RunConfig other = cfg;
  other.k = 3;
  EXPECT_NE(fingerprint_hash(other), fingerprint_hash(cfg));
  EXPECT_NE(seeded.train.seed, seeded.eval.seed);
}

TEST(Pipeline, AugmentDatasetDeterministicAndPreserving) {
  const Dataset ds = two_class_dataset(12, 1);
  const RunConfig cfg = small_config();
  const auto a = augment_dataset(ds, cfg, 1, true);
  EXPECT_EQ(a, augment_dataset(ds, cfg, 1, true));
  ASSERT_EQ(a.size(), ds.graphs.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const LeaderConfig lc = augmentation_leaders(ds.graphs[i], cfg, i);
    EXPECT_GE(longest_pmi(a[i], lc).delta, longest_pmi(ds.graphs[i], lc).delta);
  }
  RunConfig fixed = cfg;
  fixed.resample_augmentations = false;
  EXPECT_EQ(augment_dataset(ds, fixed, 1, true), augment_dataset(ds, fixed, 4, true));
}

TEST(Pipeline, ZeroEpochIdentityEncoderMatchesBaseline) {
  const Dataset ds = two_class_dataset(40, 2);
  RunConfig cfg = small_config();
  cfg.train.epochs = 0;
  cfg.train.identity_init = true;
  const Ablation ab = run_ablation(ds, cfg);
  EXPECT_NEAR(ab.cgcl.report.mean, ab.baseline.report.mean, 1e-9);
  EXPECT_NEAR(ab.random_cgcl.report.mean, ab.baseline.report.mean, 1e-9);
  EXPECT_EQ(ab.cgcl.method, "CGCL");
  const std::string table = format_table({ab.baseline, ab.random_cgcl, ab.cgcl});
  EXPECT_NE(table.find("Random-CGCL"), std::string::npos);
}

TEST(Pipeline, AblationDeterministic) {
  const Dataset ds = two_class_dataset(24, 3);
  const RunConfig cfg = small_config();
  const Ablation a = run_ablation(ds, cfg);
  const Ablation b = run_ablation(ds, cfg);
  EXPECT_EQ(a.cgcl_train.loss_history, b.cgcl_train.loss_history);
  EXPECT_EQ(a.cgcl.report.mean, b.cgcl.report.mean);
  EXPECT_EQ(a.random_cgcl.report.mean, b.random_cgcl.report.mean);
  EXPECT_EQ(a.cgcl_train.loss_history.size(), 2u);
}

}  // namespace
}  // namespace ctrlgcl
