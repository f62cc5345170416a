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

// Command-line front end. Errors print one line
//   error: code=<kind> message="<text>"
// and exit non-zero: usage 2, data 3, format 4, audit 5, invalid 6,
// numeric 7, internal 1.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctrlgcl/augment.hpp"
#include "ctrlgcl/persistence.hpp"
#include "ctrlgcl/pipeline.hpp"
#include "ctrlgcl/pmi.hpp"
#include "ctrlgcl/random.hpp"
#include "ctrlgcl/tudataset.hpp"

namespace fs = std::filesystem;
using namespace ctrlgcl;

namespace {

class AuditFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  RunConfig cfg;
  std::string aug_kind = "substitute";
  std::string strategy = "random";
  bool fixed_augmentations = false;
  bool random_augment = false;
  int epoch = 0;
  std::string checkpoint;
  std::string embeddings;
};

void write_fingerprint(const Options& o, const std::string& command) {
  std::ofstream out(o.cfg.out_dir / (command + "_fingerprint.txt"), std::ios::trunc);
  out << "command=" << command << '\n' << fingerprint(o.cfg);
}

Dataset load(const Options& o) { return parse_tudataset(o.cfg.data_dir, o.cfg.dataset); }

int cmd_ingest(const Options& o) {
  const Dataset ds = load(o);
  const DatasetStats s = dataset_stats(ds);
  std::cout << std::left << std::setw(12) << "dataset" << std::right << std::setw(8) << "graphs" << std::setw(9)
            << "classes" << std::setw(12) << "avg_nodes" << std::setw(12) << "avg_edges" << std::setw(11)
            << "min_nodes" << std::setw(11) << "max_nodes" << '\n';
  std::cout << std::left << std::setw(12) << ds.name << std::right << std::setw(8) << s.num_graphs << std::setw(9)
            << s.num_classes << std::fixed << std::setprecision(2) << std::setw(12) << s.mean_nodes << std::setw(12)
            << s.mean_edges << std::setw(11) << s.min_nodes << std::setw(11) << s.max_nodes << '\n';
  std::cout << "self_loops_dropped=" << ds.self_loops_dropped << " duplicate_edge_lines=" << ds.duplicate_edge_lines
            << " disconnected_graphs=" << s.disconnected_graphs << '\n';
  std::ofstream csv(o.cfg.out_dir / "ingest_stats.csv", std::ios::trunc);
  csv << "dataset,graphs,classes,mean_nodes,mean_edges,min_nodes,max_nodes,total_nodes\n"
      << ds.name << ',' << s.num_graphs << ',' << s.num_classes << ',' << format_double(s.mean_nodes) << ','
      << format_double(s.mean_edges) << ',' << s.min_nodes << ',' << s.max_nodes << ',' << s.total_nodes << '\n';
  write_fingerprint(o, "ingest");
  return 0;
}

int cmd_embed(const Options& o) {
  const Dataset ds = load(o);
  const EmbeddingMatrix m = embed(ds, o.cfg);
  const fs::path bin = o.cfg.out_dir / "embeddings.bin";
  save_embeddings(bin, {m.values, m.schema, fingerprint_hash(o.cfg)});
  write_matrix_csv(o.cfg.out_dir / "embeddings.csv", m.values, m.schema);
  write_fingerprint(o, "embed");
  std::cout << "rows=" << m.values.rows() << " cols=" << m.values.cols() << " nonfinite=" << m.nonfinite
            << " checksum=" << file_checksum(bin) << '\n';
  return 0;
}

int cmd_augment(const Options& o) {
  const Dataset ds = load(o);
  const bool preserve = !o.random_augment;
  const std::vector<Graph> out = augment_dataset(ds, o.cfg, o.epoch, preserve);
  const PmiOptions pmi{o.cfg.exact_limit};

  std::ofstream csv(o.cfg.out_dir / "augment_audit.csv", std::ios::trunc);
  csv << "graph,nodes,edges_before,edges_after,removed,added,delta_before,delta_after,exact,"
         "distances_preserved,edge_contract,passed\n";
  int failures = 0;
  int audited = 0;
  long removed = 0;
  long added = 0;
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    AugmentationSpec spec;
    spec.kind = o.cfg.aug_kind;
    spec.k = o.cfg.k;
    spec.preserve_control = preserve;
    const LeaderConfig lc = augmentation_leaders(ds.graphs[i], o.cfg, i);
    const AugmentAudit a = audit_augmentation(ds.graphs[i], out[i], lc, spec, pmi);
    const bool exact = a.delta_before.exact && a.delta_after.exact;
    const bool checked = preserve && exact;
    const bool passed = !checked || a.passed();
    audited += checked ? 1 : 0;
    failures += passed ? 0 : 1;
    removed += a.removed;
    added += a.added;
    csv << i << ',' << ds.graphs[i].num_nodes() << ',' << a.edges_before << ',' << a.edges_after << ',' << a.removed
        << ',' << a.added << ',' << a.delta_before.delta << ',' << a.delta_after.delta << ',' << exact << ','
        << a.distances_preserved << ',' << a.edge_contract << ',' << passed << '\n';
  }
  Dataset augmented = ds;
  augmented.name = ds.name + "_augmented";
  augmented.graphs = out;
  write_tudataset(o.cfg.out_dir / augmented.name, augmented);
  write_fingerprint(o, "augment");
  std::cout << "graphs=" << ds.graphs.size() << " audited=" << audited << " failures=" << failures
            << " edges_removed=" << removed << " edges_added=" << added << '\n';
  if (failures > 0) throw AuditFailure(std::to_string(failures) + " graphs failed the delta-preservation audit");
  return 0;
}

int cmd_pretrain(const Options& o) {
  const Dataset ds = load(o);
  const EmbeddingMatrix m = embed(ds, o.cfg);
  const Standardizer st = Standardizer::fit(m.values);
  const TrainResult r = pretrain_dataset(ds, o.cfg, st.apply(m.values), st, !o.random_augment);
  const fs::path ckpt = o.checkpoint.empty() ? o.cfg.out_dir / "encoder.ckpt" : fs::path(o.checkpoint);
  save_checkpoint(ckpt, {r.params, fingerprint_hash(o.cfg)});
  write_loss_csv(o.cfg.out_dir / "loss.csv", r.loss_history);
  write_fingerprint(o, "pretrain");
  std::cout << "epochs=" << r.loss_history.size();
  if (!r.loss_history.empty()) {
    std::cout << " first_loss=" << format_double(r.loss_history.front())
              << " last_loss=" << format_double(r.loss_history.back());
  }
  std::cout << " checkpoint=" << ckpt.string() << '\n';
  return 0;
}

int cmd_evaluate(const Options& o) {
  const Dataset ds = load(o);
  const RunConfig seeded = with_stage_seeds(o.cfg);
  Eigen::MatrixXd raw;
  if (!o.embeddings.empty()) {
    const EmbeddingCache cache = load_embeddings(o.embeddings);
    if (static_cast<std::size_t>(cache.values.rows()) != ds.graphs.size()) {
      throw DataError("embedding cache has " + std::to_string(cache.values.rows()) + " rows for " +
                      std::to_string(ds.graphs.size()) + " graphs");
    }
    raw = cache.values;
  } else {
    raw = embed(ds, o.cfg).values;
  }
  const Standardizer st = Standardizer::fit(raw);
  const Eigen::MatrixXd x = st.apply(raw);
  std::vector<MethodReport> reports;
  if (o.checkpoint.empty()) {
    reports.push_back({ds.name, "Baseline", evaluate(x, ds.labels, seeded.eval)});
  } else {
    const Checkpoint ckpt = load_checkpoint(o.checkpoint);
    reports.push_back({ds.name, "CGCL", evaluate(encode_all(ckpt.params, x), ds.labels, seeded.eval)});
  }
  write_results_csv(o.cfg.out_dir / "results.csv", reports);
  write_summary_csv(o.cfg.out_dir / "summary.csv", reports);
  write_fingerprint(o, "evaluate");
  std::cout << format_table(reports);
  return 0;
}

int cmd_report(const Options& o) {
  const Dataset ds = load(o);
  const Ablation a = run_ablation(ds, o.cfg);
  const std::vector<MethodReport> reports{a.baseline, a.random_cgcl, a.cgcl};
  write_results_csv(o.cfg.out_dir / "results.csv", reports);
  write_summary_csv(o.cfg.out_dir / "summary.csv", reports);
  write_loss_csv(o.cfg.out_dir / "loss_cgcl.csv", a.cgcl_train.loss_history);
  write_loss_csv(o.cfg.out_dir / "loss_random_cgcl.csv", a.random_train.loss_history);
  write_fingerprint(o, "report");
  std::cout << format_table(reports);
  return 0;
}

std::string quoted(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int fail(const char* code, const std::string& message, int exit_code) {
  std::cerr << "error: code=" << code << " message=\"" << quoted(message) << "\"\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control-theoretic graph embeddings and contrastive pretraining"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the long flags; flags take precedence");

  Options o;
  RunConfig& c = o.cfg;
  std::string data_dir = c.data_dir.string();
  std::string out_dir = c.out_dir.string();
  app.add_option("--dataset", c.dataset, "TUDataset name")->capture_default_str();
  app.add_option("--data-dir", data_dir, "Directory holding <name>/ or <name>_*.txt")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", c.seed, "Global seed")->capture_default_str();
  app.add_option("--leader-sizes", c.embedding.policy.sizes, "Leader set sizes")->delimiter(',')->capture_default_str();
  app.add_option("--samples-per-size", c.embedding.policy.samples_per_size, "Leader sets per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--strategy", o.strategy, "Leader selection: random or degree")
      ->check(CLI::IsMember({"random", "degree"}))
      ->capture_default_str();
  app.add_option("--lap-eigs", c.embedding.n_lap_eigs, "Laplacian eigenvalues per end of the spectrum")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--aug-kind,--kind", o.aug_kind, "Augmentation: delete, add or substitute")
      ->check(CLI::IsMember({"delete", "add", "substitute"}))
      ->capture_default_str();
  app.add_option("--k", c.k, "Edges perturbed per graph")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_flag("--fixed-augmentations", o.fixed_augmentations, "Draw augmentations once instead of every epoch");
  app.add_option("--exact-limit", c.exact_limit, "Largest follower count for exact longest-PMI search")
      ->capture_default_str();
  app.add_option("--tau", c.train.tau, "NT-Xent temperature")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--batch", c.train.batch_size, "Batch size")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  app.add_option("--epochs", c.train.epochs, "Training epochs")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--lr", c.train.learning_rate, "Learning rate")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--momentum", c.train.momentum, "Momentum, 0 for plain gradient descent")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--hidden", c.train.hidden_dim, "Encoder hidden width")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--latent", c.train.output_dim, "Encoder output width")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--identity-init", c.train.identity_init, "Start from the identity encoder");
  app.add_option("--folds", c.eval.folds, "Cross-validation folds")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  app.add_option("--label-rate", c.eval.label_rate, "Fraction of each training fold given to the classifier")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--reps", c.eval.repetitions, "Cross-validation repetitions")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--reg", c.eval.reg, "Classifier L2 strength")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Parse and validate a dataset, print its statistics");
  auto* embed_cmd = app.add_subcommand("embed", "Compute CTRL embeddings and write the cache");
  auto* augment_cmd = app.add_subcommand("augment", "Augment every graph and audit delta preservation");
  augment_cmd->add_option("--epoch", o.epoch, "Augmentation draw to emit")->capture_default_str();
  augment_cmd->add_flag("--random", o.random_augment, "Unconstrained random perturbation (not audited)");
  auto* pretrain_cmd = app.add_subcommand("pretrain", "Contrastive pretraining; writes checkpoint and loss CSV");
  pretrain_cmd->add_option("--checkpoint", o.checkpoint, "Checkpoint path (default <out>/encoder.ckpt)");
  pretrain_cmd->add_flag("--random", o.random_augment, "Train with unconstrained random perturbations");
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Linear evaluation of raw or encoded embeddings");
  evaluate_cmd->add_option("--checkpoint", o.checkpoint, "Encoder checkpoint; omit to evaluate raw CTRL");
  evaluate_cmd->add_option("--embeddings", o.embeddings, "Embedding cache to evaluate instead of recomputing");
  auto* report_cmd = app.add_subcommand("report", "Baseline, Random-CGCL and CGCL comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    c.data_dir = data_dir;
    c.out_dir = out_dir;
    c.aug_kind = parse_augment_kind(o.aug_kind);
    c.embedding.policy.strategy = parse_leader_strategy(o.strategy);
    c.resample_augmentations = !o.fixed_augmentations;
    validate(c.embedding.policy);
    fs::create_directories(c.out_dir);

    if (ingest->parsed()) return cmd_ingest(o);
    if (embed_cmd->parsed()) return cmd_embed(o);
    if (augment_cmd->parsed()) return cmd_augment(o);
    if (pretrain_cmd->parsed()) return cmd_pretrain(o);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o);
    if (report_cmd->parsed()) return cmd_report(o);
    return fail("usage", "no subcommand", 2);
  } catch (const DataError& e) {
    return fail("data", e.what(), 3);
  } catch (const FormatError& e) {
    return fail("format", e.what(), 4);
  } catch (const AuditFailure& e) {
    return fail("audit", e.what(), 5);
  } catch (const StabilityError& e) {
    return fail("numeric", e.what(), 7);
  } catch (const std::invalid_argument& e) {
    return fail("invalid", e.what(), 6);
  } catch (const fs::filesystem_error& e) {
    return fail("data", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
