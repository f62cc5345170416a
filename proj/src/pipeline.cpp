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

#include "ctrlgcl/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "ctrlgcl/parallel.hpp"
#include "ctrlgcl/random.hpp"

namespace ctrlgcl {

RunConfig with_stage_seeds(RunConfig cfg) {
  cfg.embedding.policy.seed = derive_seed(cfg.seed, "leaders");
  cfg.train.seed = derive_seed(cfg.seed, "train");
  cfg.eval.seed = derive_seed(cfg.seed, "eval");
  return cfg;
}

namespace {

std::uint64_t augment_seed(const RunConfig& cfg, int epoch, std::size_t graph_index) {
  const int key = cfg.resample_augmentations ? epoch : 0;
  return derive_seed(derive_seed(derive_seed(cfg.seed, "augment"), static_cast<std::uint64_t>(key)), graph_index);
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string body(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  std::string sizes;
  for (const int s : cfg.embedding.policy.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
  kv["dataset"] = cfg.dataset;
  kv["seed"] = std::to_string(cfg.seed);
  const RunConfig seeded = with_stage_seeds(cfg);
  kv["leaders.seed"] = std::to_string(seeded.embedding.policy.seed);
  kv["augment.seed"] = std::to_string(derive_seed(cfg.seed, "augment"));
  kv["train.seed"] = std::to_string(seeded.train.seed);
  kv["eval.seed"] = std::to_string(seeded.eval.seed);
  kv["leaders.sizes"] = sizes;
  kv["leaders.samples"] = std::to_string(cfg.embedding.policy.samples_per_size);
  kv["leaders.strategy"] = std::string(to_string(cfg.embedding.policy.strategy));
  kv["embedding.lap_eigs"] = std::to_string(cfg.embedding.n_lap_eigs);
  kv["augment.kind"] = std::string(to_string(cfg.aug_kind));
  kv["augment.k"] = std::to_string(cfg.k);
  kv["augment.resample"] = cfg.resample_augmentations ? "1" : "0";
  kv["augment.exact_limit"] = std::to_string(cfg.exact_limit);
  kv["train.tau"] = format_double(cfg.train.tau);
  kv["train.batch"] = std::to_string(cfg.train.batch_size);
  kv["train.epochs"] = std::to_string(cfg.train.epochs);
  kv["train.lr"] = format_double(cfg.train.learning_rate);
  kv["train.momentum"] = format_double(cfg.train.momentum);
  kv["train.hidden"] = std::to_string(cfg.train.hidden_dim);
  kv["train.output"] = std::to_string(cfg.train.output_dim);
  kv["train.identity_init"] = cfg.train.identity_init ? "1" : "0";
  kv["eval.folds"] = std::to_string(cfg.eval.folds);
  kv["eval.label_rate"] = format_double(cfg.eval.label_rate);
  kv["eval.reps"] = std::to_string(cfg.eval.repetitions);
  kv["eval.reg"] = format_double(cfg.eval.reg);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace

std::string fingerprint_hash(const RunConfig& cfg) { return hex64(fnv1a(body(cfg))); }

std::string fingerprint(const RunConfig& cfg) { return body(cfg) + "hash=" + fingerprint_hash(cfg) + "\n"; }

EmbeddingMatrix embed(const Dataset& ds, const RunConfig& cfg) {
  const RunConfig seeded = with_stage_seeds(cfg);
  return embed_dataset(ds.graphs, seeded.embedding, cfg.threads);
}

LeaderConfig augmentation_leaders(const Graph& g, const RunConfig& cfg, std::size_t graph_index) {
  const RunConfig seeded = with_stage_seeds(cfg);
  return select_leaders(g, seeded.embedding.policy, graph_index).front().front();
}

std::vector<Graph> augment_dataset(const Dataset& ds, const RunConfig& cfg, int epoch, bool preserve_control) {
  std::vector<Graph> out(ds.graphs.size());
  const PmiOptions pmi{cfg.exact_limit};
  parallel_for(ds.graphs.size(), cfg.threads, [&](std::size_t i) {
    const Graph& g = ds.graphs[i];
    AugmentationSpec spec;
    spec.kind = cfg.aug_kind;
    spec.k = cfg.k;
    spec.seed = augment_seed(cfg, epoch, i);
    spec.preserve_control = preserve_control;
    out[i] = augment(g, augmentation_leaders(g, cfg, i), spec, pmi);
  });
  return out;
}

Eigen::MatrixXd augmented_view(const Dataset& ds, const RunConfig& cfg, const Standardizer& standardizer, int epoch,
                               bool preserve_control) {
  const std::vector<Graph> graphs = augment_dataset(ds, cfg, epoch, preserve_control);
  const RunConfig seeded = with_stage_seeds(cfg);
  return standardizer.apply(embed_dataset(graphs, seeded.embedding, cfg.threads).values);
}

TrainResult pretrain_dataset(const Dataset& ds, const RunConfig& cfg, const Eigen::MatrixXd& standardized,
                             const Standardizer& standardizer, bool preserve_control) {
  const RunConfig seeded = with_stage_seeds(cfg);
  std::optional<Eigen::MatrixXd> fixed;
  ViewFn view = [&](int epoch) -> Eigen::MatrixXd {
    if (!cfg.resample_augmentations) {
      if (!fixed) fixed = augmented_view(ds, cfg, standardizer, 0, preserve_control);
      return *fixed;
    }
    return augmented_view(ds, cfg, standardizer, epoch, preserve_control);
  };
  return pretrain(standardized, view, seeded.train);
}

Ablation run_ablation(const Dataset& ds, const RunConfig& cfg) {
  const RunConfig seeded = with_stage_seeds(cfg);
  const EmbeddingMatrix raw = embed(ds, cfg);
  const Standardizer st = Standardizer::fit(raw.values);
  const Eigen::MatrixXd x = st.apply(raw.values);

  Ablation out;
  out.baseline = {ds.name, "Baseline", evaluate(x, ds.labels, seeded.eval)};
  out.random_train = pretrain_dataset(ds, cfg, x, st, false);
  out.random_cgcl = {ds.name, "Random-CGCL", evaluate(encode_all(out.random_train.params, x), ds.labels, seeded.eval)};
  out.cgcl_train = pretrain_dataset(ds, cfg, x, st, true);
  out.cgcl = {ds.name, "CGCL", evaluate(encode_all(out.cgcl_train.params, x), ds.labels, seeded.eval)};
  return out;
}

std::string format_table(const std::vector<MethodReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "dataset" << std::setw(14) << "method" << std::right << std::setw(10)
      << "mean(%)" << std::setw(10) << "std(%)" << '\n';
  for (const auto& m : reports) {
    out << std::left << std::setw(12) << m.dataset << std::setw(14) << m.method << std::right << std::fixed
        << std::setprecision(2) << std::setw(10) << 100.0 * m.report.mean << std::setw(10)
        << 100.0 * m.report.stddev << '\n';
  }
  return out.str();
}

}  // namespace ctrlgcl
