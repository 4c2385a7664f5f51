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
#include <stdexcept>
#include <string>
#include <vector>

namespace magicscope {

/// Fixed-length bit vector packed into 64-bit words. Bits past size() are
/// always zero so word-level comparisons and popcounts stay exact.
class BitVector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  static BitVector from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
      }
    }
    return v;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    assert(i < size_);
    return (words_[i / word_bits] >> (i % word_bits)) & 1u;
  }
  bool operator[](std::size_t i) const { return get(i); }

  void set(std::size_t i, bool value = true) {
    assert(i < size_);
    const word_type mask = word_type{1} << (i % word_bits);
    if (value) {
      words_[i / word_bits] |= mask;
    } else {
      words_[i / word_bits] &= ~mask;
    }
  }
  void flip(std::size_t i) {
    assert(i < size_);
    words_[i / word_bits] ^= word_type{1} << (i % word_bits);
  }

  /// Copy with a new length; extra bits are zero, dropped bits are lost.
  BitVector resized(std::size_t size) const {
    BitVector out(size);
    const std::size_t common = std::min(words_.size(), out.words_.size());
    std::copy_n(words_.begin(), common, out.words_.begin());
    out.clear_tail();
    return out;
  }

  std::size_t popcount() const {
    std::size_t total = 0;
    for (word_type w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
  }
  bool none() const { return !any(); }

  /// Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from / word_bits;
    word_type w = words_[wi] & (~word_type{0} << (from % word_bits));
    while (true) {
      if (w != 0) {
        return std::min(size_, wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
      }
      if (++wi >= words_.size()) return size_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const { return find_next(0); }

  BitVector& operator^=(const BitVector& o) {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  BitVector& operator&=(const BitVector& o) {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// this &= ~o
  BitVector& subtract(const BitVector& o) {
    assert(o.size_ == size_);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  /// Parity of popcount(a & b), the GF(2) inner product.
  friend bool dot(const BitVector& a, const BitVector& b) {
    assert(a.size_ == b.size_);
    word_type acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }
  friend std::size_t and_popcount(const BitVector& a, const BitVector& b) {
    assert(a.size_ == b.size_);
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      total += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
    }
    return total;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Lexicographic by bit index (bit 0 most significant), then by length.
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    const std::size_t common = std::min(a.size_, b.size_);
    for (std::size_t i = 0; i < common; ++i) {
      if (a.get(i) != b.get(i)) return a.get(i) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.size_ <=> b.size_;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = find_first(); i < size_; i = find_next(i + 1)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  const std::vector<word_type>& words() const { return words_; }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }
  void clear_tail() {
    if (size_ % word_bits != 0 && !words_.empty()) {
      words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

}  // namespace magicscope
