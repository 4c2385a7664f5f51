// Copyright 2026 The magicscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "magicscope/bitvec.hpp"
#include "magicscope/pauli.hpp"

namespace magicscope {

/// Graph on the measurements of a set, with an edge for every anticommuting pair.
class FrustrationGraph {
 public:
  FrustrationGraph() = default;
  explicit FrustrationGraph(std::size_t m) : adjacency_(m, BitVector(m)) {}

  std::size_t size() const { return adjacency_.size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i].get(j); }
  const BitVector& neighbors(std::size_t i) const { return adjacency_[i]; }

  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("FrustrationGraph: self-loops are not allowed");
    adjacency_[i].set(j);
    adjacency_[j].set(i);
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adjacency_) twice += row.popcount();
    return twice / 2;
  }

  bool is_independent(const std::vector<std::size_t>& set) const {
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (std::size_t b = a + 1; b < set.size(); ++b) {
        if (adjacent(set[a], set[b])) return false;
      }
    }
    return true;
  }

  /// Independent and no outside vertex can be added.
  bool is_maximal_independent(const std::vector<std::size_t>& set) const {
    if (!is_independent(set)) return false;
    BitVector in(size());
    for (std::size_t v : set) in.set(v);
    for (std::size_t v = 0; v < size(); ++v) {
      if (in.get(v)) continue;
      if ((adjacency_[v] & in).none()) return false;
    }
    return true;
  }

 private:
  std::vector<BitVector> adjacency_;
};

inline FrustrationGraph build_frustration_graph(const MeasurementSet& measurements) {
  FrustrationGraph g(measurements.size());
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    for (std::size_t j = i + 1; j < measurements.size(); ++j) {
      if (!commutes(measurements[i], measurements[j])) g.add_edge(i, j);
    }
  }
  return g;
}

namespace detail {

// Bron-Kerbosch with Tomita pivoting, run on the complement graph so that
// cliques there are independent sets here.
class MisEnumerator {
 public:
  MisEnumerator(const FrustrationGraph& g, const std::function<void(const std::vector<std::size_t>&)>& emit)
      : emit_(emit) {
    const std::size_t m = g.size();
    compatible_.reserve(m);
    for (std::size_t v = 0; v < m; ++v) {
      BitVector c = g.neighbors(v);
      BitVector all(m);
      for (std::size_t i = 0; i < m; ++i) all.set(i);
      all.subtract(c);
      all.set(v, false);
      compatible_.push_back(std::move(all));
    }
  }

  void run() {
    const std::size_t m = compatible_.size();
    BitVector candidates(m), excluded(m);
    for (std::size_t i = 0; i < m; ++i) candidates.set(i);
    current_.clear();
    expand(candidates, excluded);
  }

 private:
  void expand(BitVector candidates, BitVector excluded) {
    if (candidates.none()) {
      if (excluded.none()) emit_(current_);
      return;
    }
    const std::size_t m = compatible_.size();
    std::size_t pivot = m;
    std::size_t best = 0;
    for (const BitVector* pool : {&candidates, &excluded}) {
      for (std::size_t u = pool->find_first(); u < m; u = pool->find_next(u + 1)) {
        const std::size_t score = and_popcount(candidates, compatible_[u]);
        if (pivot == m || score > best) {
          pivot = u;
          best = score;
        }
      }
    }
    BitVector branch = candidates;
    branch.subtract(compatible_[pivot]);
    for (std::size_t v = branch.find_first(); v < m; v = branch.find_next(v + 1)) {
      current_.push_back(v);
      expand(candidates & compatible_[v], excluded & compatible_[v]);
      current_.pop_back();
      candidates.set(v, false);
      excluded.set(v, true);
    }
  }

  std::vector<BitVector> compatible_;
  std::vector<std::size_t> current_;
  const std::function<void(const std::vector<std::size_t>&)>& emit_;
};

}  // namespace detail

/// Calls `emit` once per maximal independent set (indices sorted ascending), in
/// search order. Use enumerate_maximal_independent_sets for a deterministic order.
inline void for_each_maximal_independent_set(const FrustrationGraph& g,
                                             const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (g.size() == 0) return;
  std::function<void(const std::vector<std::size_t>&)> sorted_emit = [&](const std::vector<std::size_t>& raw) {
    std::vector<std::size_t> s = raw;
    std::sort(s.begin(), s.end());
    emit(s);
  };
  detail::MisEnumerator(g, sorted_emit).run();
}

/// All maximal independent sets, each sorted, in lexicographic order.
inline std::vector<std::vector<std::size_t>> enumerate_maximal_independent_sets(const FrustrationGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  for_each_maximal_independent_set(g, [&](const std::vector<std::size_t>& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace magicscope
