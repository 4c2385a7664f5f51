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

#include "magicscope/state.hpp"

#include <gtest/gtest.h>

#include <random>

namespace magicscope {
namespace {

// Dense 2^n x 2^n matrix of a Pauli string built from Kronecker products.
Eigen::MatrixXcd dense(const PauliString& p) {
  Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    const char c = p.letter(q);
    const Eigen::MatrixXcd& f = c == 'X' ? x : c == 'Y' ? y : c == 'Z' ? z : i2;
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index s = 0; s < out.cols(); ++s) next.block(2 * r, 2 * s, 2, 2) = out(r, s) * f;
    out = next;
  }
  const Complex prefix[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int rel = ((p.phase() - static_cast<int>(p.y_count() % 4)) % 4 + 4) % 4;
  return prefix[rel] * out;
}

TEST(State, ApplyPauliMatchesDenseMatrix) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 3;
    std::string s(n, 'I');
    for (auto& c : s) c = "IXYZ"[rng() % 4];
    PauliString p = parse_pauli(s);
    if (rng() & 1) p = multiply(p, parse_pauli(std::string(n, 'I')).negated());
    const StateVector psi = random_state(n, rng);
    EXPECT_LT((apply_pauli(p, psi) - dense(p) * psi).norm(), 1e-12);
  }
}

TEST(State, MultiplyMatchesDenseProducts) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 3;
    auto rand_pauli = [&] {
      std::string s(n, 'I');
      for (auto& c : s) c = "IXYZ"[rng() % 4];
      return parse_pauli(s);
    };
    const auto a = rand_pauli(), b = rand_pauli(), c = rand_pauli();
    EXPECT_LT((dense(multiply(a, b)) - dense(a) * dense(b)).norm(), 1e-12);
    EXPECT_LT((dense(multiply(multiply(a, b), c)) - dense(a) * dense(b) * dense(c)).norm(), 1e-12);
    const bool dense_commute = (dense(a) * dense(b) - dense(b) * dense(a)).norm() < 1e-12;
    EXPECT_EQ(commutes(a, b), dense_commute);
  }
}

TEST(State, KnownProducts) {
  // (X (x) Z)(Z (x) X) = Y (x) Y.
  const auto p = multiply(parse_pauli("XZ"), parse_pauli("ZX"));
  EXPECT_EQ(format_pauli(p), "YY");
  EXPECT_LT((dense(p) - dense(parse_pauli("XZ")) * dense(parse_pauli("ZX"))).norm(), 1e-12);
  const auto chain = multiply(multiply(parse_pauli("XX"), parse_pauli("YY")), parse_pauli("ZZ"));
  EXPECT_EQ(identity_sign(chain), -1);
  EXPECT_LT((dense(parse_pauli("XX")) * dense(parse_pauli("YY")) * dense(parse_pauli("ZZ")) +
             Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-12);
}

TEST(State, ParseEncodings) {
  const auto a = parse_pauli("+XIZ");
  EXPECT_EQ(a.xbits().to_string(), "100");
  EXPECT_EQ(a.zbits().to_string(), "001");
  EXPECT_EQ(a.phase(), 0);
  const auto b = parse_pauli("-Y");
  EXPECT_EQ(b.phase(), 3);
  EXPECT_EQ(b.xbits().to_string(), "1");
  EXPECT_EQ(b.zbits().to_string(), "1");
}

TEST(State, ExpectationExamples) {
  EXPECT_DOUBLE_EQ(pauli_expectation(basis_state(4, 0), parse_pauli("ZZII")), 1.0);
  StateVector plus = bloch_state(1, 0, 0);
  StateVector plus4 = kron(kron(plus, plus), kron(plus, plus));
  EXPECT_NEAR(pauli_expectation(plus4, parse_pauli("IIXI")), 1.0, 1e-12);
  StateVector bell = StateVector::Zero(4);
  bell[0] = bell[3] = 1 / std::sqrt(2.0);
  EXPECT_NEAR(pauli_expectation(bell, parse_pauli("YY")), -1.0, 1e-12);
  EXPECT_NEAR(pauli_expectation(bell, parse_pauli("XX")), 1.0, 1e-12);
  EXPECT_NEAR(pauli_expectation(bell, parse_pauli("-ZZ")), -1.0, 1e-12);
}

TEST(State, BlochStateReproducesBlochVector) {
  const double c = 1 / std::sqrt(3.0);
  const auto t = bloch_state(c, c, c);
  EXPECT_NEAR(pauli_expectation(t, parse_pauli("X")), c, 1e-12);
  EXPECT_NEAR(pauli_expectation(t, parse_pauli("Y")), c, 1e-12);
  EXPECT_NEAR(pauli_expectation(t, parse_pauli("Z")), c, 1e-12);
}

TEST(State, ExpectationsStayInRange) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random_state(3, rng);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    for (const char* s : {"XYZ", "ZZI", "IYI", "-XXX"}) {
      const double v = pauli_expectation(psi, parse_pauli(s));
      EXPECT_LE(std::abs(v), 1.0);
    }
  }
}

TEST(State, Errors) {
  EXPECT_THROW(pauli_expectation(basis_state(1, 0), multiply(parse_pauli("X"), parse_pauli("Z"))),
               std::invalid_argument);
  EXPECT_THROW(pauli_expectation(basis_state(2, 0), parse_pauli("X")), std::invalid_argument);
  EXPECT_THROW(qubit_count(StateVector::Zero(3)), std::invalid_argument);
}

}  // namespace
}  // namespace magicscope
