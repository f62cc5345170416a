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

#include "support/oracles.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include <unistd.h>

namespace ctrlgcl::testing {

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

namespace {

bool connected_by_union_find(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  int groups = n;
  for (const Edge& e : edges) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups <= 1;
}

}  // namespace

Graph random_connected_graph(Rng& rng, int n) {
  std::uniform_real_distribution<double> density(0.1, 0.6);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (true) {
    const double p = density(rng);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (coin(rng) < p) edges.emplace_back(i, j);
      }
    }
    if (connected_by_union_find(n, edges)) return Graph(n, edges);
  }
}

Graph random_tree(Rng& rng, int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i, static_cast<int>(rng() % static_cast<std::uint64_t>(i)));
  return Graph(n, edges);
}

LeaderConfig random_leaders(Rng& rng, int n, int count) {
  std::vector<Node> nodes(static_cast<std::size_t>(n));
  std::iota(nodes.begin(), nodes.end(), 0);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  nodes.resize(static_cast<std::size_t>(std::min(count, n)));
  return LeaderConfig(nodes, n);
}

std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.num_nodes();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  for (auto& row : d) {
    for (int& x : row) x = x >= inf ? -1 : x;
  }
  return d;
}

int brute_force_pmi(const Graph& g, const LeaderConfig& lc) {
  const auto dist = floyd_warshall(g);
  const int inf = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> rows;
  for (const Node f : lc.followers()) {
    std::vector<int> r;
    for (const Node l : lc.leaders()) r.push_back(dist[l][f] < 0 ? inf : dist[l][f]);
    rows.push_back(r);
  }
  const std::size_t m = lc.num_leaders();
  std::vector<int> seq;
  std::vector<char> used(rows.size(), 0);
  int best = 0;
  std::function<void()> grow = [&] {
    best = std::max(best, static_cast<int>(seq.size()));
    for (std::size_t cand = 0; cand < rows.size(); ++cand) {
      if (used[cand]) continue;
      bool ok = false;
      for (std::size_t c = 0; c < m && !ok; ++c) {
        ok = std::all_of(seq.begin(), seq.end(), [&](int later) { return rows[cand][c] < rows[later][c]; });
      }
      if (!ok) continue;
      used[cand] = 1;
      seq.push_back(static_cast<int>(cand));
      grow();
      seq.pop_back();
      used[cand] = 0;
    }
  };
  grow();
  return best;
}

Eigen::MatrixXd kronecker_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::Index n = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  // Column-major vec: vec(A W) = (I kron A) vec W, vec(W A^T) = (A kron I) vec W.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n) += I(i, j) * A + A(i, j) * I;
    }
  }
  const Eigen::MatrixXd Q = B * B.transpose();
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
  const Eigen::VectorXd w = K.fullPivLu().solve(rhs);
  return Eigen::Map<const Eigen::MatrixXd>(w.data(), n, n);
}

namespace {

constexpr std::int64_t kPrimes[] = {2147483647, 2147483629, 2147483587};

std::int64_t reduce(std::int64_t x, std::int64_t p) {
  const std::int64_t r = x % p;
  return r < 0 ? r + p : r;
}

std::int64_t power_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b = reduce(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int rank_mod(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[static_cast<std::size_t>(rank)]);
    auto& top = m[static_cast<std::size_t>(rank)];
    const std::int64_t inv = power_mod(top[c], p - 2, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      const std::int64_t f = m[r][c] * inv % p;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = reduce(m[r][k] - f * top[k] % p, p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int exact_integer_rank(const std::vector<std::vector<std::int64_t>>& m) {
  int best = 0;
  for (const std::int64_t p : kPrimes) {
    auto r = m;
    for (auto& row : r) {
      for (auto& x : row) x = reduce(x, p);
    }
    best = std::max(best, rank_mod(std::move(r), p));
  }
  return best;
}

int exact_controllability_rank(const Graph& g, const LeaderConfig& lc) {
  const auto& fol = lc.followers();
  const auto& lead = lc.leaders();
  const std::size_t nf = fol.size();
  const std::size_t nl = lead.size();
  if (nf == 0) return 0;
  int best = 0;
  for (const std::int64_t p : kPrimes) {
    // Integer Laplacian restricted to follower rows.
    auto entry = [&](Node a, Node b) -> std::int64_t {
      if (a == b) return g.degree(a);
      return g.has_edge(a, b) ? -1 : 0;
    };
    std::vector<std::vector<std::int64_t>> block(nf, std::vector<std::int64_t>(nl));
    for (std::size_t i = 0; i < nf; ++i) {
      for (std::size_t j = 0; j < nl; ++j) block[i][j] = reduce(-entry(fol[i], lead[j]), p);
    }
    std::vector<std::vector<std::int64_t>> K(nf);
    for (std::size_t step = 0; step < nf; ++step) {
      for (std::size_t i = 0; i < nf; ++i) K[i].insert(K[i].end(), block[i].begin(), block[i].end());
      std::vector<std::vector<std::int64_t>> next(nf, std::vector<std::int64_t>(nl, 0));
      for (std::size_t i = 0; i < nf; ++i) {
        for (std::size_t k = 0; k < nf; ++k) {
          const std::int64_t a = reduce(-entry(fol[i], fol[k]), p);
          if (a == 0) continue;
          for (std::size_t j = 0; j < nl; ++j) next[i][j] = (next[i][j] + a * block[k][j]) % p;
        }
      }
      block = std::move(next);
    }
    best = std::max(best, rank_mod(std::move(K), p));
  }
  return best;
}

Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x,
                                 double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double keep = x(i);
    x(i) = keep + h;
    const double up = f(x);
    x(i) = keep - h;
    const double down = f(x);
    x(i) = keep;
    g(i) = (up - down) / (2 * h);
  }
  return g;
}

double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), floor});
}

void write_k2_k3_fixture(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  auto file = [&](const std::string& suffix) { return std::ofstream(dir / (name + "_" + suffix + ".txt")); };
  // Nodes 1-2 form K2, nodes 3-5 form K3. Node 3 carries a self-loop line.
  file("A") << "1, 2\n2, 1\n3, 4\n4, 3\n3, 5\n5, 3\n4, 5\n5, 4\n3, 3\n";
  file("graph_indicator") << "1\n1\n2\n2\n2\n";
  file("graph_labels") << "1\n-1\n";
  file("node_labels") << "0\n1\n2\n2\n0\n";
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("ctrlgcl_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace ctrlgcl::testing
