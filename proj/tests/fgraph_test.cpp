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

#include "magicscope/fgraph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace magicscope {
namespace {

// Exhaustive reference: all subsets that are maximal independent sets.
std::vector<std::vector<std::size_t>> brute_force_mis(const FrustrationGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t m = g.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (g.is_maximal_independent(s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(FrustrationGraph, EdgesAreAnticommutingPairs) {
  const auto m = parse_measurement_text("ZZ\nXI\nIX\nXX\n");
  const auto g = build_frustration_graph(m);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_FALSE(g.adjacent(0, 3));
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(FrustrationGraph, SelfLoopRejected) {
  FrustrationGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
}

TEST(MaximalIndependentSets, SmallCases) {
  const auto xyz = build_frustration_graph(parse_measurement_text("X\nY\nZ\n"));
  EXPECT_EQ(enumerate_maximal_independent_sets(xyz),
            (std::vector<std::vector<std::size_t>>{{0}, {1}, {2}}));

  const auto commuting = build_frustration_graph(parse_measurement_text("XI\nIX\n"));
  EXPECT_EQ(enumerate_maximal_independent_sets(commuting), (std::vector<std::vector<std::size_t>>{{0, 1}}));

  // Path 0-1-2-3: {0,2}, {0,3}, {1,3}.
  FrustrationGraph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  EXPECT_EQ(enumerate_maximal_independent_sets(path),
            (std::vector<std::vector<std::size_t>>{{0, 2}, {0, 3}, {1, 3}}));

  EXPECT_TRUE(enumerate_maximal_independent_sets(FrustrationGraph(0)).empty());
}

TEST(MaximalIndependentSets, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 14;
    const double density = (rng() % 100) / 100.0;
    FrustrationGraph g(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if ((rng() % 1000) / 1000.0 < density) g.add_edge(i, j);
    const auto fast = enumerate_maximal_independent_sets(g);
    EXPECT_EQ(fast, brute_force_mis(g)) << "trial " << trial;
  }
}

TEST(MaximalIndependentSets, DisjointTrianglesGiveThreeToTheK) {
  // k disjoint triangles: 3^k maximal independent sets (the Moon-Moser extremal graph).
  for (std::size_t k = 1; k <= 6; ++k) {
    FrustrationGraph g(3 * k);
    for (std::size_t t = 0; t < k; ++t) {
      g.add_edge(3 * t, 3 * t + 1);
      g.add_edge(3 * t + 1, 3 * t + 2);
      g.add_edge(3 * t, 3 * t + 2);
    }
    std::size_t count = 0;
    for_each_maximal_independent_set(g, [&](const std::vector<std::size_t>& s) {
      EXPECT_TRUE(g.is_maximal_independent(s));
      ++count;
    });
    std::size_t expected = 1;
    for (std::size_t t = 0; t < k; ++t) expected *= 3;
    EXPECT_EQ(count, expected);
  }
}

}  // namespace
}  // namespace magicscope
