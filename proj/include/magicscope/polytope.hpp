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
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "magicscope/fgraph.hpp"
#include "magicscope/gf2.hpp"
#include "magicscope/parallel.hpp"
#include "magicscope/pauli.hpp"

namespace magicscope {

/// One sign (+1 / -1) per member of an independent set, aligned with its indices.
using SignAssignment = std::vector<int>;

/// A maximal independent set S of the frustration graph together with an
/// admissible sign assignment f on it.
struct SignedContext {
  std::vector<std::size_t> set;
  SignAssignment signs;

  friend bool operator==(const SignedContext&, const SignedContext&) = default;
  friend auto operator<=>(const SignedContext&, const SignedContext&) = default;
};

/// Point of {-1, 0, +1}^m.
struct Vertex {
  std::vector<std::int8_t> coords;

  std::size_t size() const { return coords.size(); }
  int operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// V-representation of the reduced stabilizer polytope: vertices[i] comes from contexts[i].
struct VertexSet {
  std::size_t dimension = 0;
  std::vector<Vertex> vertices;
  std::vector<SignedContext> contexts;
  std::size_t independent_set_count = 0;
  /// Maximal independent sets with no admissible signs.
  std::size_t empty_contexts = 0;

  std::size_t size() const { return vertices.size(); }
};

/// Columns are the symplectic vectors (x; z) of the measurements indexed by `set`.
inline gf2::F2Matrix symplectic_matrix(const MeasurementSet& measurements, const std::vector<std::size_t>& set) {
  const std::size_t n = measurements.num_qubits();
  gf2::F2Matrix out(2 * n, set.size());
  for (std::size_t j = 0; j < set.size(); ++j) {
    const PauliString& p = measurements[set[j]];
    for (std::size_t q = 0; q < n; ++q) {
      if (p.xbits().get(q)) out.set(q, j);
      if (p.zbits().get(q)) out.set(n + q, j);
    }
  }
  return out;
}

/// All f in {+-1}^S such that no signed subset product equals -1.
///
/// Subsets with a product proportional to the identity are exactly the kernel of
/// the symplectic matrix of S. For each kernel basis row c the product of the
/// selected measurements is (-1)^sigma_c; f is admissible iff K x = sigma with
/// f_j = (-1)^x_j. The solutions form the coset x_p + ker K of size 2^rank.
/// Assignments are returned in lexicographic order of x (+1 sorts before -1).
inline std::vector<SignAssignment> admissible_signs(const MeasurementSet& measurements,
                                                    const std::vector<std::size_t>& set) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (set[a] >= measurements.size()) throw std::out_of_range("admissible_signs: index out of range");
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (!commutes(measurements[set[a]], measurements[set[b]])) {
        throw std::invalid_argument("admissible_signs: measurements " + std::to_string(set[a] + 1) + " and " +
                                    std::to_string(set[b] + 1) + " anticommute");
      }
    }
  }
  const std::size_t s = set.size();
  const gf2::F2Matrix kernel = gf2::kernel_basis(symplectic_matrix(measurements, set));

  BitVector sigma(kernel.rows());
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    PauliString product(measurements.num_qubits());
    for (std::size_t j = 0; j < s; ++j) {
      if (kernel.get(i, j)) product = multiply(product, measurements[set[j]]);
    }
    const auto sign = identity_sign(product);
    assert(sign.has_value());
    sigma.set(i, *sign < 0);
  }

  const auto particular = gf2::solve(kernel, sigma);
  if (!particular) return {};

  const gf2::F2Matrix free_directions = gf2::kernel_basis(kernel);
  const std::size_t dim = free_directions.rows();
  if (dim >= std::numeric_limits<std::size_t>::digits - 1) {
    throw std::length_error("admissible_signs: 2^" + std::to_string(dim) + " assignments cannot be listed");
  }

  std::vector<BitVector> solutions;
  solutions.reserve(std::size_t{1} << dim);
  BitVector x = *particular;
  // Gray-code walk over the coset.
  for (std::size_t step = 0; step < (std::size_t{1} << dim); ++step) {
    if (step > 0) x ^= free_directions.row(static_cast<std::size_t>(std::countr_zero(step)));
    solutions.push_back(x);
  }
  std::sort(solutions.begin(), solutions.end());

  std::vector<SignAssignment> out;
  out.reserve(solutions.size());
  for (const auto& sol : solutions) {
    SignAssignment f(s);
    for (std::size_t j = 0; j < s; ++j) f[j] = sol.get(j) ? -1 : 1;
    out.push_back(std::move(f));
  }
  return out;
}

/// Coordinates equal to f on S and zero elsewhere.
inline Vertex vertex(const MeasurementSet& measurements, const SignedContext& context) {
  if (context.set.size() != context.signs.size()) {
    throw std::invalid_argument("vertex: set and sign lengths differ");
  }
  Vertex v{std::vector<std::int8_t>(measurements.size(), 0)};
  for (std::size_t j = 0; j < context.set.size(); ++j) {
    v.coords.at(context.set[j]) = static_cast<std::int8_t>(context.signs[j]);
  }
  return v;
}

struct PolytopeOptions {
  unsigned threads = 1;
  /// Receives one line per maximal independent set with no admissible signs.
  std::ostream* verbose = nullptr;
};

/// Vertices of the reduced stabilizer polytope, one per (maximal independent
/// set, admissible sign assignment), ordered lexicographically by (S, f).
inline VertexSet v_representation(const MeasurementSet& measurements, const PolytopeOptions& options = {}) {
  const FrustrationGraph graph = build_frustration_graph(measurements);
  const auto sets = enumerate_maximal_independent_sets(graph);

  std::vector<std::vector<SignAssignment>> per_set(sets.size());
  parallel_for(sets.size(), options.threads,
               [&](std::size_t i) { per_set[i] = admissible_signs(measurements, sets[i]); });

  VertexSet out;
  out.dimension = measurements.size();
  out.independent_set_count = sets.size();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (per_set[i].empty()) {
      ++out.empty_contexts;
      if (options.verbose) {
        *options.verbose << "no admissible signs for independent set {";
        for (std::size_t j = 0; j < sets[i].size(); ++j) *options.verbose << (j ? "," : "") << sets[i][j] + 1;
        *options.verbose << "}\n";
      }
      continue;
    }
    for (auto& f : per_set[i]) {
      SignedContext ctx{sets[i], std::move(f)};
      out.vertices.push_back(vertex(measurements, ctx));
      out.contexts.push_back(std::move(ctx));
    }
  }
#ifndef NDEBUG
  {
    std::set<Vertex> distinct(out.vertices.begin(), out.vertices.end());
    assert(distinct.size() == out.vertices.size());
  }
#endif
  return out;
}

namespace detail {

// Saturating arithmetic for the size envelope.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace detail

/// Number of pure n-qubit stabilizer states, 2^n * prod_{k=1..n} (2^k + 1) (saturating).
inline std::uint64_t stabilizer_state_count(std::size_t n) {
  std::uint64_t total = detail::sat_pow(2, n);
  for (std::size_t k = 1; k <= n; ++k) total = detail::sat_mul(total, detail::sat_pow(2, k) + 1);
  return total;
}

/// Upper bound on the vertex count for any m-element measurement set on n
/// qubits: 2^min(n,m) * min(3^(floor(m/3)+1), |stab_n|), the last term only
/// for n <= 4. Saturates at UINT64_MAX.
inline std::uint64_t size_bound(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("size_bound: n and m must be positive");
  std::uint64_t sets = detail::sat_pow(3, m / 3 + 1);
  if (n <= 4) sets = std::min(sets, stabilizer_state_count(n));
  return detail::sat_mul(detail::sat_pow(2, std::min(n, m)), sets);
}

/// One vertex per line, coordinates separated by single spaces.
inline std::string vertices_to_text(const VertexSet& vs) {
  std::ostringstream out;
  for (const auto& v : vs.vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << static_cast<int>(v[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace magicscope
