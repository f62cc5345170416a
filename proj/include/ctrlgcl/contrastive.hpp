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

// Encoder z = W3 relu(W2 relu(W1 x + b1) + b2) + b3 over CTRL vectors and the
// NT-Xent objective
//
//   L = (1/M) sum_i [ -s_ii / tau + log( (1/(M-1)) sum_{j != i} exp(s_ij / tau) ) ]
//
// with s_ij = cos(z_i, z'_j) between original view i and augmented view j.
// Samples are rows throughout.

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace ctrlgcl {

struct EncoderParams {
  Eigen::MatrixXd W1, W2, W3;
  Eigen::VectorXd b1, b2, b3;

  int input_dim() const { return static_cast<int>(W1.cols()); }
  int hidden_dim() const { return static_cast<int>(W1.rows()); }
  int output_dim() const { return static_cast<int>(W3.rows()); }

  static EncoderParams zeros(int d, int h, int p);
  /// He-scaled normal weights, zero biases.
  static EncoderParams random(int d, int h, int p, std::uint64_t seed);
  /// W1 = [I; -I], W2 = I, W3 = [I, -I], zero biases: z = x exactly.
  /// Requires h >= 2d and p >= d; extra rows and columns are zero.
  static EncoderParams identity(int d, int h, int p);

  std::size_t num_parameters() const;
  /// Flattened in the checkpoint order W1 b1 W2 b2 W3 b3, matrices row-major.
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& theta);

  friend bool operator==(const EncoderParams& a, const EncoderParams& b);
};

/// Throws ShapeError when x has the wrong number of columns.
Eigen::MatrixXd encoder_forward(const EncoderParams& params, const Eigen::MatrixXd& x);
Eigen::VectorXd encoder_forward(const EncoderParams& params, const Eigen::VectorXd& x);

/// Row-wise encoder_forward.
Eigen::MatrixXd encode_all(const EncoderParams& params, const Eigen::MatrixXd& x);

/// Parameter gradient of sum_rows <dz_row, z_row> for z = encoder_forward(x),
/// in flatten() order.
Eigen::VectorXd encoder_backward(const EncoderParams& params, const Eigen::MatrixXd& x, const Eigen::MatrixXd& dz);

struct NtXent {
  double loss = 0.0;
  Eigen::MatrixXd grad_z;
  Eigen::MatrixXd grad_z_aug;
  /// Zero rows, whose similarities are taken as 0 with zero gradient.
  int zero_vectors = 0;
};

/// Throws std::invalid_argument when M < 2 and ShapeError on mismatched
/// views.
NtXent nt_xent_loss(const Eigen::MatrixXd& z, const Eigen::MatrixXd& z_aug, double tau);

struct TrainConfig {
  double tau = 0.5;
  int batch_size = 32;
  int epochs = 20;
  double learning_rate = 0.05;
  /// 0 is plain gradient descent.
  double momentum = 0.9;
  int hidden_dim = 128;
  int output_dim = 64;
  std::uint64_t seed = 0;
  bool identity_init = false;
};

/// Standardized augmented view of the whole dataset for an epoch.
using ViewFn = std::function<Eigen::MatrixXd(int epoch)>;

struct TrainResult {
  EncoderParams params;
  /// Mean loss per epoch, weighted by batch size.
  std::vector<double> loss_history;
  int zero_vectors = 0;
};

/// Each epoch draws the augmented view, shuffles rows into batches of
/// batch_size (a trailing single row joins the previous batch), and applies
/// one momentum step per batch on the NT-Xent loss of both views. Throws
/// std::invalid_argument for fewer than 2 rows.
TrainResult pretrain(const Eigen::MatrixXd& x, const ViewFn& view, const TrainConfig& cfg);

/// Start from given parameters instead of the configured initialization.
TrainResult pretrain(const Eigen::MatrixXd& x, const ViewFn& view, const TrainConfig& cfg, EncoderParams init);

}  // namespace ctrlgcl
