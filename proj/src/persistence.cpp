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

#include "ctrlgcl/persistence.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ctrlgcl/errors.hpp"
#include "ctrlgcl/random.hpp"

namespace ctrlgcl {
namespace {

namespace fs = std::filesystem;

constexpr std::array<char, 8> kEmbeddingMagic{'C', 'T', 'R', 'L', 'E', 'M', 'B', '\0'};
constexpr std::array<char, 8> kCheckpointMagic{'C', 'G', 'C', 'L', 'C', 'K', 'P', 'T'};

class Writer {
 public:
  explicit Writer(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw FormatError("cannot open " + path.string() + " for writing");
  }

  void bytes(const char* data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }

  template <typename U>
  void uint(U v) {
    std::array<char, sizeof(U)> b{};
    for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    bytes(b.data(), b.size());
  }

  void f64(double x) { uint(std::bit_cast<std::uint64_t>(x)); }

  void string(const std::string& s) {
    uint(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }

  // Row-major.
  void matrix(const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
    }
  }

  void close() {
    out_.close();
    if (!out_) throw FormatError("failed writing " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const fs::path& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    data_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void bytes(char* out, std::size_t n) {
    if (data_.size() - at_ < n) throw FormatError(path_.string() + ": truncated at byte " + std::to_string(at_));
    std::memcpy(out, data_.data() + at_, n);
    at_ += n;
  }

  template <typename U>
  U uint() {
    std::array<char, sizeof(U)> b{};
    bytes(b.data(), b.size());
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }

  std::string string() {
    const auto n = uint<std::uint32_t>();
    remaining(n);
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }

  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols) {
    remaining(static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols) * 8);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = f64();
    }
    return m;
  }

  void remaining(std::uint64_t n) const {
    if (data_.size() - at_ < n) throw FormatError(path_.string() + ": truncated at byte " + std::to_string(at_));
  }

  void expect_end() const {
    if (at_ != data_.size()) throw FormatError(path_.string() + ": trailing bytes after payload");
  }

  void magic(const std::array<char, 8>& expected, std::uint32_t version) {
    std::array<char, 8> got{};
    bytes(got.data(), got.size());
    if (got != expected) throw FormatError(path_.string() + ": bad magic, not a " + std::string(expected.data(), 7) + " file");
    const auto v = uint<std::uint32_t>();
    if (v != version) {
      throw FormatError(path_.string() + ": version mismatch (file " + std::to_string(v) + ", supported " +
                        std::to_string(version) + ")");
    }
  }

 private:
  fs::path path_;
  std::vector<char> data_;
  std::size_t at_ = 0;
};

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

void save_embeddings(const fs::path& path, const EmbeddingCache& cache) {
  if (cache.schema.empty()) throw ShapeError("embedding cache needs a nonempty schema");
  if (static_cast<Eigen::Index>(cache.schema.size()) != cache.values.cols()) {
    throw ShapeError("schema has " + std::to_string(cache.schema.size()) + " names for " +
                     std::to_string(cache.values.cols()) + " columns");
  }
  Writer w(path);
  w.bytes(kEmbeddingMagic.data(), kEmbeddingMagic.size());
  w.uint(kEmbeddingCacheVersion);
  w.uint(static_cast<std::uint64_t>(cache.values.rows()));
  w.uint(static_cast<std::uint64_t>(cache.values.cols()));
  for (const auto& name : cache.schema) w.string(name);
  w.string(cache.fingerprint);
  w.matrix(cache.values);
  w.close();
}

EmbeddingCache load_embeddings(const fs::path& path) {
  Reader r(path);
  r.magic(kEmbeddingMagic, kEmbeddingCacheVersion);
  const auto rows = r.uint<std::uint64_t>();
  const auto cols = r.uint<std::uint64_t>();
  if (cols == 0) throw FormatError(path.string() + ": empty schema");
  r.remaining(cols * 4);
  EmbeddingCache cache;
  for (std::uint64_t c = 0; c < cols; ++c) cache.schema.push_back(r.string());
  cache.fingerprint = r.string();
  cache.values = r.matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  r.expect_end();
  return cache;
}

void save_checkpoint(const fs::path& path, const Checkpoint& ckpt) {
  const EncoderParams& p = ckpt.params;
  Writer w(path);
  w.bytes(kCheckpointMagic.data(), kCheckpointMagic.size());
  w.uint(kCheckpointVersion);
  w.uint(static_cast<std::uint32_t>(p.input_dim()));
  w.uint(static_cast<std::uint32_t>(p.hidden_dim()));
  w.uint(static_cast<std::uint32_t>(p.output_dim()));
  w.string(ckpt.fingerprint);
  const Eigen::VectorXd theta = p.flatten();
  for (Eigen::Index i = 0; i < theta.size(); ++i) w.f64(theta(i));
  w.close();
}

Checkpoint load_checkpoint(const fs::path& path) {
  Reader r(path);
  r.magic(kCheckpointMagic, kCheckpointVersion);
  const auto d = static_cast<int>(r.uint<std::uint32_t>());
  const auto h = static_cast<int>(r.uint<std::uint32_t>());
  const auto p = static_cast<int>(r.uint<std::uint32_t>());
  if (d < 1 || h < 1 || p < 1) throw FormatError(path.string() + ": zero encoder dimension");
  Checkpoint ckpt;
  ckpt.fingerprint = r.string();
  ckpt.params = EncoderParams::zeros(d, h, p);
  const auto count = static_cast<Eigen::Index>(ckpt.params.num_parameters());
  r.remaining(static_cast<std::uint64_t>(count) * 8);
  Eigen::VectorXd theta(count);
  for (Eigen::Index i = 0; i < count; ++i) theta(i) = r.f64();
  r.expect_end();
  ckpt.params.unflatten(theta);
  return ckpt;
}

void write_loss_csv(const fs::path& path, const std::vector<double>& losses) {
  auto out = open_text(path);
  out << "epoch,mean_loss\n";
  for (std::size_t e = 0; e < losses.size(); ++e) out << e + 1 << ',' << format_double(losses[e]) << '\n';
}

void write_results_csv(const fs::path& path, const std::vector<MethodReport>& reports) {
  auto out = open_text(path);
  out << "dataset,method,repetition,fold,accuracy\n";
  for (const auto& m : reports) {
    for (const auto& f : m.report.folds) {
      out << m.dataset << ',' << m.method << ',' << f.repetition << ',' << f.fold << ',' << format_double(f.accuracy)
          << '\n';
    }
  }
}

void write_summary_csv(const fs::path& path, const std::vector<MethodReport>& reports) {
  auto out = open_text(path);
  out << "dataset,method,mean,std\n";
  for (const auto& m : reports) {
    out << m.dataset << ',' << m.method << ',' << format_double(m.report.mean) << ','
        << format_double(m.report.stddev) << '\n';
  }
}

void write_matrix_csv(const fs::path& path, const Eigen::MatrixXd& values, const std::vector<std::string>& header) {
  auto out = open_text(path);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << format_double(values(r, c));
    out << '\n';
  }
}

std::string file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << fnv1a(bytes);
  return hex.str();
}

}  // namespace ctrlgcl
