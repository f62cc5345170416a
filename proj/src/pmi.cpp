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

#include "ctrlgcl/pmi.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ctrlgcl/controllability.hpp"

namespace ctrlgcl {

DlTable::DlTable(std::vector<Node> nodes, std::vector<DlVector> vectors, Node num_nodes)
    : nodes_(std::move(nodes)), vectors_(std::move(vectors)), slot_(static_cast<std::size_t>(num_nodes), -1) {
  if (nodes_.size() != vectors_.size()) throw ShapeError("DlTable: one vector per node required");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node v = nodes_[i];
    if (v < 0 || v >= num_nodes) throw std::out_of_range("DlTable: node " + std::to_string(v) + " out of range");
    if (vectors_[i].size() != vectors_.front().size()) throw ShapeError("DlTable: ragged vectors");
    slot_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
}

bool DlTable::contains(Node v) const {
  return v >= 0 && static_cast<std::size_t>(v) < slot_.size() && slot_[static_cast<std::size_t>(v)] >= 0;
}

const DlVector& DlTable::at(Node v) const {
  if (!contains(v)) throw std::out_of_range("no distance-to-leader vector for node " + std::to_string(v));
  return vectors_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(v)])];
}

DlTable dl_vectors(const Graph& g, const LeaderConfig& lc) {
  if (lc.num_nodes() != g.num_nodes()) throw InvalidLeaders("leader config built for a different node count");
  std::vector<std::vector<Hops>> from_leader;
  from_leader.reserve(lc.num_leaders());
  for (const Node l : lc.leaders()) from_leader.push_back(bfs_distances(g, l));
  std::vector<DlVector> vectors;
  vectors.reserve(lc.num_followers());
  for (const Node v : lc.followers()) {
    DlVector d(lc.num_leaders());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = from_leader[j][static_cast<std::size_t>(v)];
    vectors.push_back(std::move(d));
  }
  return DlTable(lc.followers(), std::move(vectors), g.num_nodes());
}

bool is_valid_pmi(const PmiSequence& seq, const DlTable& dl) {
  if (seq.nodes.size() != seq.coords.size()) throw ShapeError("PMI sequence: nodes and coords differ in length");
  std::vector<const DlVector*> rows;
  rows.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    rows.push_back(&dl.at(seq.nodes[i]));
    if (seq.coords[i] < 0 || static_cast<std::size_t>(seq.coords[i]) >= dl.num_leaders()) {
      throw std::out_of_range("PMI sequence: coordinate " + std::to_string(seq.coords[i]) + " out of range");
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto c = static_cast<std::size_t>(seq.coords[i]);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!((*rows[i])[c] < (*rows[j])[c])) return false;
    }
  }
  return true;
}

namespace {

// Positions into the table, sorted by (vector, node id).
std::vector<std::size_t> canonical_order(const DlTable& dl) {
  std::vector<std::size_t> order(dl.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dl.vectors()[a] != dl.vectors()[b]) return dl.vectors()[a] < dl.vectors()[b];
    return dl.nodes()[a] < dl.nodes()[b];
  });
  return order;
}

DeltaBound finish(PmiSequence seq, bool exact) {
  DeltaBound out;
  out.delta = static_cast<int>(seq.size());
  out.exact = exact;
  out.support = seq.nodes;
  std::sort(out.support.begin(), out.support.end());
  out.witness = std::move(seq);
  return out;
}

using Mask = std::vector<std::uint64_t>;

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const std::uint64_t w : m) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

class ExactSearch {
 public:
  // Rows are distinct vectors in lexicographic order.
  explicit ExactSearch(std::vector<DlVector> rows)
      : rows_(std::move(rows)), m_(rows_.empty() ? 0 : rows_.front().size()), words_((rows_.size() + 63) / 64) {}

  Mask full() const {
    Mask r(words_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) r[i / 64] |= std::uint64_t{1} << (i % 64);
    return r;
  }

  int solve(const Mask& r) { return step(r).length; }

  // Row index and coordinate per position of an optimal sequence from r.
  std::vector<std::pair<std::size_t, int>> trace(Mask r) {
    std::vector<std::pair<std::size_t, int>> out;
    while (true) {
      const Step s = step(r);
      if (s.length == 0) break;
      out.emplace_back(s.pick, s.coord);
      r = s.rest;
    }
    return out;
  }

 private:
  struct Step {
    int length = 0;
    std::size_t pick = 0;
    int coord = 0;
    Mask rest;
  };

  static int popcount(const Mask& r) {
    int n = 0;
    for (const std::uint64_t w : r) n += std::popcount(w);
    return n;
  }

  template <typename F>
  void for_each(const Mask& r, F&& f) const {
    for (std::size_t k = 0; k < r.size(); ++k) {
      for (std::uint64_t w = r[k]; w != 0; w &= w - 1) f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }

  // Minimizers of coordinate c in r are removed; the lowest row index among
  // them, which is the lexicographically smallest vector, is the pick.
  Step branch(const Mask& r, int c) const {
    const auto cc = static_cast<std::size_t>(c);
    Hops lo = Hops::infinity();
    bool first = true;
    for_each(r, [&](std::size_t i) {
      if (first || rows_[i][cc] < lo) lo = rows_[i][cc];
      first = false;
    });
    Step s;
    s.coord = c;
    s.rest = r;
    bool picked = false;
    for_each(r, [&](std::size_t i) {
      if (rows_[i][cc] == lo) {
        if (!picked) s.pick = i;
        picked = true;
        s.rest[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      }
    });
    return s;
  }

  Step step(const Mask& r) {
    const int count = popcount(r);
    if (count == 0) return {};
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
    Step best;
    for (int c = 0; c < static_cast<int>(m_); ++c) {
      Step s = branch(r, c);
      s.length = 1 + (count == 1 ? 0 : step(s.rest).length);
      if (s.length > best.length) best = std::move(s);
      if (best.length == count) break;
    }
    memo_.emplace(r, best);
    return best;
  }

  std::vector<DlVector> rows_;
  std::size_t m_;
  std::size_t words_;
  std::unordered_map<Mask, Step, MaskHash> memo_;
};

}  // namespace

DeltaBound exact_longest_pmi(const DlTable& dl) {
  if (dl.size() == 0 || dl.num_leaders() == 0) return finish({}, true);
  // Equal vectors are mutually exclusive in a PMI, so one representative
  // (lowest id) per distinct vector suffices.
  std::vector<DlVector> rows;
  std::vector<Node> rep;
  for (const std::size_t i : canonical_order(dl)) {
    if (!rows.empty() && rows.back() == dl.vectors()[i]) continue;
    rows.push_back(dl.vectors()[i]);
    rep.push_back(dl.nodes()[i]);
  }
  ExactSearch search(std::move(rows));
  PmiSequence seq;
  for (const auto& [row, coord] : search.trace(search.full())) {
    seq.nodes.push_back(rep[row]);
    seq.coords.push_back(coord);
  }
  return finish(std::move(seq), true);
}

DeltaBound greedy_pmi(const DlTable& dl) {
  const std::size_t m = dl.num_leaders();
  std::vector<std::size_t> remaining = canonical_order(dl);
  PmiSequence seq;
  while (!remaining.empty() && m > 0) {
    // Per coordinate: minimum, how many attain it, and the first attainer in
    // canonical order.
    std::vector<Hops> lo(m, Hops::infinity());
    std::vector<std::size_t> ties(m, 0);
    std::vector<std::size_t> first(m, 0);
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      const DlVector& v = dl.vectors()[remaining[k]];
      for (std::size_t c = 0; c < m; ++c) {
        if (ties[c] == 0 || v[c] < lo[c]) {
          lo[c] = v[c];
          ties[c] = 1;
          first[c] = k;
        } else if (v[c] == lo[c]) {
          ++ties[c];
        }
      }
    }
    std::size_t best_k = remaining.size();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < m; ++c) {
      if (ties[c] == 1 && first[c] < best_k) {
        best_k = first[c];
        best_c = c;
      }
    }
    if (best_k == remaining.size()) {
      // No lossless choice; keep the coordinate that discards the fewest.
      std::size_t fewest = remaining.size() + 1;
      for (std::size_t c = 0; c < m; ++c) {
        if (ties[c] < fewest) {
          fewest = ties[c];
          best_c = c;
          best_k = first[c];
        }
      }
    }
    const std::size_t chosen = remaining[best_k];
    seq.nodes.push_back(dl.nodes()[chosen]);
    seq.coords.push_back(static_cast<int>(best_c));
    const Hops cut = dl.vectors()[chosen][best_c];
    std::erase_if(remaining, [&](std::size_t i) { return !(cut < dl.vectors()[i][best_c]); });
  }
  return finish(std::move(seq), false);
}

DeltaBound longest_pmi(const DlTable& dl, const PmiOptions& options) {
  if (dl.size() <= options.exact_limit) return exact_longest_pmi(dl);
  return greedy_pmi(dl);
}

DeltaBound longest_pmi(const Graph& g, const LeaderConfig& lc, const PmiOptions& options) {
  return longest_pmi(dl_vectors(g, lc), options);
}

DeltaGammaCheck delta_leq_gamma_check(const Graph& g, const LeaderConfig& lc, const PmiOptions& options) {
  const DeltaBound bound = longest_pmi(g, lc, options);
  if (!bound.exact) throw std::domain_error("delta_leq_gamma_check requires the exact PMI regime");
  DeltaGammaCheck out;
  out.delta = bound.delta;
  out.gamma = controllability_rank(g, lc);
  out.holds = out.delta <= out.gamma;
  return out;
}

}  // namespace ctrlgcl
