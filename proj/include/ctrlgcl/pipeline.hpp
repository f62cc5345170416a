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

// End-to-end stages over a dataset. Every stage seed is
// derive_seed(RunConfig::seed, "<stage>") with stages "leaders", "augment",
// "train" and "eval", so any stage can be rerun alone.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctrlgcl/augment.hpp"
#include "ctrlgcl/contrastive.hpp"
#include "ctrlgcl/embedding.hpp"
#include "ctrlgcl/evaluation.hpp"
#include "ctrlgcl/persistence.hpp"
#include "ctrlgcl/tudataset.hpp"

namespace ctrlgcl {

struct RunConfig {
  std::string dataset = "MUTAG";
  std::filesystem::path data_dir = "data";
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  EmbeddingOptions embedding;
  AugmentKind aug_kind = AugmentKind::kSubstitute;
  int k = 2;
  /// Fresh augmentations every epoch; false draws one set for all epochs.
  bool resample_augmentations = true;
  TrainConfig train;
  EvalProtocol eval;
  std::size_t exact_limit = 64;
  unsigned threads = 1;
};

/// Stage seeds filled in from cfg.seed.
RunConfig with_stage_seeds(RunConfig cfg);

/// "key=value" lines for every setting that influences results, sorted by
/// key, ending with "hash=<16 hex digits>" over the preceding lines.
std::string fingerprint(const RunConfig& cfg);
/// The hash line value alone.
std::string fingerprint_hash(const RunConfig& cfg);

EmbeddingMatrix embed(const Dataset& ds, const RunConfig& cfg);

/// Leader config used when augmenting graph i: the first config the policy
/// draws for it.
LeaderConfig augmentation_leaders(const Graph& g, const RunConfig& cfg, std::size_t graph_index);

/// Augmented copy of every graph for the epoch.
std::vector<Graph> augment_dataset(const Dataset& ds, const RunConfig& cfg, int epoch, bool preserve_control);

/// Standardized CTRL rows of augment_dataset(ds, cfg, epoch, ...).
Eigen::MatrixXd augmented_view(const Dataset& ds, const RunConfig& cfg, const Standardizer& standardizer, int epoch,
                               bool preserve_control);

TrainResult pretrain_dataset(const Dataset& ds, const RunConfig& cfg, const Eigen::MatrixXd& standardized,
                             const Standardizer& standardizer, bool preserve_control);

struct Ablation {
  MethodReport baseline;
  MethodReport random_cgcl;
  MethodReport cgcl;
  TrainResult cgcl_train;
  TrainResult random_train;
};

Ablation run_ablation(const Dataset& ds, const RunConfig& cfg);

/// Aligned text table of mean and standard deviation in percent.
std::string format_table(const std::vector<MethodReport>& reports);

}  // namespace ctrlgcl
