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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magicscope/bitvec.hpp"

namespace magicscope::gf2 {

/// Dense matrix over F2 stored as bit-packed rows.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
  F2Matrix(std::size_t cols, std::vector<BitVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw std::invalid_argument("F2Matrix: row length does not match column count");
    }
  }

  static F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }
  /// Rows given as strings of '0'/'1'.
  static F2Matrix from_strings(std::size_t cols, const std::vector<std::string>& rows) {
    std::vector<BitVector> out;
    for (const auto& r : rows) out.push_back(BitVector::from_string(r));
    return F2Matrix(cols, std::move(out));
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }
  const std::vector<BitVector>& row_vectors() const { return rows_; }

  /// M * v over F2.
  BitVector multiply(const BitVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("F2Matrix::multiply: dimension mismatch");
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.set(r, dot(rows_[r], v));
    return out;
  }

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

struct RrefResult {
  F2Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form. Pivots are taken column by column, choosing the
/// lowest-index remaining row with a one, so results are reproducible.
inline RrefResult rref(F2Matrix m) {
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) std::swap(m.row(pivot), m.row(r));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) m.row(i) ^= m.row(r);
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const F2Matrix& m) { return rref(m).rank; }

/// Basis of {k : M k = 0}, one basis vector per row, ordered by free column.
inline F2Matrix kernel_basis(const F2Matrix& m) {
  const RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : rr.pivot_columns) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector k(m.cols());
    k.set(free);
    for (std::size_t i = 0; i < rr.rank; ++i) {
      if (rr.reduced.get(i, free)) k.set(rr.pivot_columns[i]);
    }
    basis.push_back(std::move(k));
  }
  return F2Matrix(m.cols(), std::move(basis));
}

/// A particular solution of K x = sigma with free variables set to zero, or
/// nullopt when the system is inconsistent.
inline std::optional<BitVector> solve(const F2Matrix& k, const BitVector& sigma) {
  if (sigma.size() != k.rows()) {
    throw std::invalid_argument("gf2::solve: right-hand side has length " + std::to_string(sigma.size()) +
                                ", expected " + std::to_string(k.rows()));
  }
  const std::size_t cols = k.cols();
  std::vector<BitVector> aug;
  aug.reserve(k.rows());
  for (std::size_t r = 0; r < k.rows(); ++r) {
    BitVector row = k.row(r).resized(cols + 1);
    row.set(cols, sigma.get(r));
    aug.push_back(std::move(row));
  }
  const RrefResult rr = rref(F2Matrix(cols + 1, std::move(aug)));
  if (!rr.pivot_columns.empty() && rr.pivot_columns.back() == cols) return std::nullopt;

  BitVector x(cols);
  for (std::size_t i = 0; i < rr.rank; ++i) x.set(rr.pivot_columns[i], rr.reduced.get(i, cols));
  return x;
}

}  // namespace magicscope::gf2
