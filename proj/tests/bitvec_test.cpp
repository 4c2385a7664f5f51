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

#include "magicscope/bitvec.hpp"

#include <gtest/gtest.h>

namespace magicscope {
namespace {

TEST(BitVector, SetGetFlipAcrossWordBoundary) {
  BitVector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_TRUE(v.get(0));
  EXPECT_TRUE(v.get(64));
  EXPECT_TRUE(v[129]);
  EXPECT_FALSE(v.get(63));
  EXPECT_EQ(v.popcount(), 3u);
  v.flip(64);
  EXPECT_FALSE(v.get(64));
  EXPECT_EQ(v.ones(), (std::vector<std::size_t>{0, 129}));
}

TEST(BitVector, FindNextWalksSetBits) {
  BitVector v = BitVector::from_string("0100100001");
  std::vector<std::size_t> seen;
  for (std::size_t i = v.find_first(); i < v.size(); i = v.find_next(i + 1)) seen.push_back(i);
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 4, 9}));
  EXPECT_EQ(BitVector(5).find_first(), 5u);
}

TEST(BitVector, DotIsParityOfOverlap) {
  const auto a = BitVector::from_string("1101");
  const auto b = BitVector::from_string("1011");
  EXPECT_EQ(and_popcount(a, b), 2u);
  EXPECT_FALSE(dot(a, b));
  EXPECT_TRUE(dot(a, BitVector::from_string("1000")));
}

TEST(BitVector, ResizeKeepsPrefixAndZeroFills) {
  const auto a = BitVector::from_string("101");
  EXPECT_EQ(a.resized(6).to_string(), "101000");
  EXPECT_EQ(BitVector::from_string("1111").resized(2).to_string(), "11");
  EXPECT_EQ(a.resized(70).popcount(), 2u);
}

TEST(BitVector, OrderingTreatsBitZeroAsMostSignificant) {
  EXPECT_LT(BitVector::from_string("011"), BitVector::from_string("100"));
  EXPECT_LT(BitVector::from_string("000"), BitVector::from_string("001"));
  EXPECT_EQ(BitVector::from_string("010"), BitVector::from_string("010"));
}

TEST(BitVector, SubtractClearsMaskedBits) {
  auto a = BitVector::from_string("1111");
  a.subtract(BitVector::from_string("0101"));
  EXPECT_EQ(a.to_string(), "1010");
  EXPECT_EQ((a | BitVector::from_string("0001")).to_string(), "1011");
  EXPECT_EQ((a ^ a).none(), true);
}

TEST(BitVector, FromStringRejectsOtherCharacters) {
  EXPECT_THROW(BitVector::from_string("10a"), std::invalid_argument);
}

}  // namespace
}  // namespace magicscope
