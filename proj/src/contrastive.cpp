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

#include "ctrlgcl/contrastive.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ctrlgcl/errors.hpp"
#include "ctrlgcl/random.hpp"

namespace ctrlgcl {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_dims(int d, int h, int p) {
  if (d < 1 || h < 1 || p < 1) {
    throw ShapeError("encoder dimensions must be positive, got d=" + std::to_string(d) + " h=" + std::to_string(h) +
                     " p=" + std::to_string(p));
  }
}

Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, double stddev, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  // Row-major fill so the draw order matches the checkpoint layout.
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = stddev * standard_normal(rng);
  }
  return m;
}

struct Activations {
  Eigen::MatrixXd a1, h1, a2, h2, z;
};

Activations forward_all(const EncoderParams& p, const Eigen::MatrixXd& x) {
  if (x.cols() != p.W1.cols()) {
    throw ShapeError("encoder expects " + std::to_string(p.W1.cols()) + " features, got " + std::to_string(x.cols()));
  }
  Activations act;
  act.a1 = (x * p.W1.transpose()).rowwise() + p.b1.transpose();
  act.h1 = act.a1.cwiseMax(0.0);
  act.a2 = (act.h1 * p.W2.transpose()).rowwise() + p.b2.transpose();
  act.h2 = act.a2.cwiseMax(0.0);
  act.z = (act.h2 * p.W3.transpose()).rowwise() + p.b3.transpose();
  return act;
}

// Rows scaled to unit length; zero rows stay zero.
Eigen::MatrixXd unit_rows(const Eigen::MatrixXd& z, Eigen::VectorXd& norms, int& zeros) {
  norms = z.rowwise().norm();
  Eigen::MatrixXd u = z;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    if (norms(i) > 0.0) {
      u.row(i) /= norms(i);
    } else {
      ++zeros;
    }
  }
  return u;
}

// Gradient through u = z / |z| given dL/du.
Eigen::MatrixXd through_normalization(const Eigen::MatrixXd& du, const Eigen::MatrixXd& u,
                                      const Eigen::VectorXd& norms) {
  Eigen::MatrixXd dz = Eigen::MatrixXd::Zero(du.rows(), du.cols());
  for (Eigen::Index i = 0; i < du.rows(); ++i) {
    if (norms(i) > 0.0) dz.row(i) = (du.row(i) - du.row(i).dot(u.row(i)) * u.row(i)) / norms(i);
  }
  return dz;
}

}  // namespace

EncoderParams EncoderParams::zeros(int d, int h, int p) {
  check_dims(d, h, p);
  EncoderParams e;
  e.W1 = Eigen::MatrixXd::Zero(h, d);
  e.W2 = Eigen::MatrixXd::Zero(h, h);
  e.W3 = Eigen::MatrixXd::Zero(p, h);
  e.b1 = Eigen::VectorXd::Zero(h);
  e.b2 = Eigen::VectorXd::Zero(h);
  e.b3 = Eigen::VectorXd::Zero(p);
  return e;
}

EncoderParams EncoderParams::random(int d, int h, int p, std::uint64_t seed) {
  EncoderParams e = zeros(d, h, p);
  Rng rng(seed);
  e.W1 = normal_matrix(h, d, std::sqrt(2.0 / d), rng);
  e.W2 = normal_matrix(h, h, std::sqrt(2.0 / h), rng);
  e.W3 = normal_matrix(p, h, std::sqrt(1.0 / h), rng);
  return e;
}

EncoderParams EncoderParams::identity(int d, int h, int p) {
  if (h < 2 * d || p < d) throw ShapeError("identity encoder needs h >= 2d and p >= d");
  EncoderParams e = zeros(d, h, p);
  e.W1.topRows(d).setIdentity();
  e.W1.middleRows(d, d) = -Eigen::MatrixXd::Identity(d, d);
  e.W2.setIdentity();
  e.W3.leftCols(d).setIdentity();
  e.W3.middleCols(d, d).topRows(d) = -Eigen::MatrixXd::Identity(d, d);
  return e;
}

std::size_t EncoderParams::num_parameters() const {
  return static_cast<std::size_t>(W1.size() + b1.size() + W2.size() + b2.size() + W3.size() + b3.size());
}

Eigen::VectorXd EncoderParams::flatten() const {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(num_parameters()));
  Eigen::Index at = 0;
  auto put_matrix = [&](const Eigen::MatrixXd& m) {
    Eigen::Map<RowMajor>(theta.data() + at, m.rows(), m.cols()) = m;
    at += m.size();
  };
  auto put_vector = [&](const Eigen::VectorXd& v) {
    theta.segment(at, v.size()) = v;
    at += v.size();
  };
  put_matrix(W1);
  put_vector(b1);
  put_matrix(W2);
  put_vector(b2);
  put_matrix(W3);
  put_vector(b3);
  return theta;
}

void EncoderParams::unflatten(const Eigen::VectorXd& theta) {
  if (theta.size() != static_cast<Eigen::Index>(num_parameters())) throw ShapeError("parameter vector length mismatch");
  Eigen::Index at = 0;
  auto get_matrix = [&](Eigen::MatrixXd& m) {
    m = Eigen::Map<const RowMajor>(theta.data() + at, m.rows(), m.cols());
    at += m.size();
  };
  auto get_vector = [&](Eigen::VectorXd& v) {
    v = theta.segment(at, v.size());
    at += v.size();
  };
  get_matrix(W1);
  get_vector(b1);
  get_matrix(W2);
  get_vector(b2);
  get_matrix(W3);
  get_vector(b3);
}

bool operator==(const EncoderParams& a, const EncoderParams& b) {
  auto same = [](const auto& x, const auto& y) { return x.rows() == y.rows() && x.cols() == y.cols() && x == y; };
  return same(a.W1, b.W1) && same(a.W2, b.W2) && same(a.W3, b.W3) && same(a.b1, b.b1) && same(a.b2, b.b2) &&
         same(a.b3, b.b3);
}

Eigen::MatrixXd encoder_forward(const EncoderParams& params, const Eigen::MatrixXd& x) {
  return forward_all(params, x).z;
}

Eigen::VectorXd encoder_forward(const EncoderParams& params, const Eigen::VectorXd& x) {
  return encoder_forward(params, Eigen::MatrixXd(x.transpose())).row(0).transpose();
}

Eigen::MatrixXd encode_all(const EncoderParams& params, const Eigen::MatrixXd& x) { return encoder_forward(params, x); }

Eigen::VectorXd encoder_backward(const EncoderParams& params, const Eigen::MatrixXd& x, const Eigen::MatrixXd& dz) {
  const Activations act = forward_all(params, x);
  if (dz.rows() != act.z.rows() || dz.cols() != act.z.cols()) throw ShapeError("encoder_backward: dz shape mismatch");
  EncoderParams g = EncoderParams::zeros(params.input_dim(), params.hidden_dim(), params.output_dim());
  g.W3 = dz.transpose() * act.h2;
  g.b3 = dz.colwise().sum().transpose();
  const Eigen::MatrixXd da2 = (dz * params.W3).cwiseProduct((act.a2.array() > 0.0).cast<double>().matrix());
  g.W2 = da2.transpose() * act.h1;
  g.b2 = da2.colwise().sum().transpose();
  const Eigen::MatrixXd da1 = (da2 * params.W2).cwiseProduct((act.a1.array() > 0.0).cast<double>().matrix());
  g.W1 = da1.transpose() * x;
  g.b1 = da1.colwise().sum().transpose();
  return g.flatten();
}

NtXent nt_xent_loss(const Eigen::MatrixXd& z, const Eigen::MatrixXd& z_aug, double tau) {
  const Eigen::Index m = z.rows();
  if (m < 2) throw std::invalid_argument("NT-Xent needs at least 2 pairs, got " + std::to_string(m));
  if (z_aug.rows() != m || z_aug.cols() != z.cols()) throw ShapeError("NT-Xent views differ in shape");
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");

  NtXent out;
  Eigen::VectorXd nz, na;
  const Eigen::MatrixXd u = unit_rows(z, nz, out.zero_vectors);
  const Eigen::MatrixXd v = unit_rows(z_aug, na, out.zero_vectors);
  const Eigen::MatrixXd s = u * v.transpose();

  // dL/ds, filled row by row.
  Eigen::MatrixXd gs = Eigen::MatrixXd::Zero(m, m);
  const double inv = 1.0 / (tau * static_cast<double>(m));
  double total = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i) top = std::max(top, s(i, j) / tau);
    }
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i) sum += std::exp(s(i, j) / tau - top);
    }
    total += -s(i, i) / tau + top + std::log(sum / static_cast<double>(m - 1));
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i) gs(i, j) = std::exp(s(i, j) / tau - top) / sum * inv;
    }
    gs(i, i) = -inv;
  }
  out.loss = total / static_cast<double>(m);
  out.grad_z = through_normalization(gs * v, u, nz);
  out.grad_z_aug = through_normalization(gs.transpose() * u, v, na);
  return out;
}

TrainResult pretrain(const Eigen::MatrixXd& x, const ViewFn& view, const TrainConfig& cfg) {
  const int d = static_cast<int>(x.cols());
  EncoderParams init = cfg.identity_init
                           ? EncoderParams::identity(d, cfg.hidden_dim, cfg.output_dim)
                           : EncoderParams::random(d, cfg.hidden_dim, cfg.output_dim, derive_seed(cfg.seed, "init"));
  return pretrain(x, view, cfg, std::move(init));
}

TrainResult pretrain(const Eigen::MatrixXd& x, const ViewFn& view, const TrainConfig& cfg, EncoderParams init) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw std::invalid_argument("pretraining needs at least 2 graphs");
  if (cfg.batch_size < 2) throw std::invalid_argument("batch size must be >= 2");
  if (cfg.epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (init.input_dim() != x.cols()) throw ShapeError("initial encoder input dimension differs from the data");

  TrainResult result;
  result.params = std::move(init);
  Eigen::VectorXd theta = result.params.flatten();
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(theta.size());
  Rng rng(derive_seed(cfg.seed, "batches"));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const Eigen::MatrixXd x_aug = view(epoch);
    if (x_aug.rows() != x.rows() || x_aug.cols() != x.cols()) throw ShapeError("augmented view differs in shape");
    shuffle(order, rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size();) {
      std::size_t stop = std::min(order.size(), start + batch);
      if (order.size() - stop == 1) stop = order.size();
      const std::vector<Eigen::Index> rows(order.begin() + static_cast<std::ptrdiff_t>(start),
                                           order.begin() + static_cast<std::ptrdiff_t>(stop));
      const Eigen::MatrixXd xb = x(rows, Eigen::all);
      const Eigen::MatrixXd xa = x_aug(rows, Eigen::all);
      const NtXent nt = nt_xent_loss(encoder_forward(result.params, xb), encoder_forward(result.params, xa), cfg.tau);
      result.zero_vectors += nt.zero_vectors;
      epoch_loss += nt.loss * static_cast<double>(rows.size());
      const Eigen::VectorXd grad =
          encoder_backward(result.params, xb, nt.grad_z) + encoder_backward(result.params, xa, nt.grad_z_aug);
      velocity = cfg.momentum * velocity - cfg.learning_rate * grad;
      theta += velocity;
      result.params.unflatten(theta);
      start = stop;
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(n));
  }
  return result;
}

}  // namespace ctrlgcl
