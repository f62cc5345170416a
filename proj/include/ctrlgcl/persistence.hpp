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

// Binary artifacts. Integers and doubles are little-endian; a string is a
// u32 byte length followed by its bytes.
//
// Embedding cache:
//   "CTRLEMB\0" | u32 version=1 | u64 rows | u64 cols
//   | cols x string schema | string fingerprint | rows*cols f64, row-major
//
// Encoder checkpoint:
//   "CGCLCKPT" | u32 version=1 | u32 d | u32 h | u32 p | string fingerprint
//   | W1 (h x d) b1 (h) W2 (h x h) b2 (h) W3 (p x h) b3 (p), f64, row-major

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctrlgcl/contrastive.hpp"
#include "ctrlgcl/evaluation.hpp"

namespace ctrlgcl {

inline constexpr std::uint32_t kEmbeddingCacheVersion = 1;
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct EmbeddingCache {
  Eigen::MatrixXd values;
  std::vector<std::string> schema;
  std::string fingerprint;
};

/// Throws ShapeError when the schema is empty or its length differs from
/// the column count.
void save_embeddings(const std::filesystem::path& path, const EmbeddingCache& cache);
/// Throws FormatError on bad magic, unknown version or truncation.
EmbeddingCache load_embeddings(const std::filesystem::path& path);

struct Checkpoint {
  EncoderParams params;
  std::string fingerprint;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Header "epoch,mean_loss"; epochs count from 1.
void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& losses);

struct MethodReport {
  std::string dataset;
  std::string method;
  EvalReport report;
};

/// Header "dataset,method,repetition,fold,accuracy".
void write_results_csv(const std::filesystem::path& path, const std::vector<MethodReport>& reports);
/// Header "dataset,method,mean,std".
void write_summary_csv(const std::filesystem::path& path, const std::vector<MethodReport>& reports);
/// Schema as the header, one row per matrix row.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& header);

/// FNV-1a of the file bytes as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace ctrlgcl
