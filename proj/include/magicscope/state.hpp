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

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "magicscope/pauli.hpp"

namespace magicscope {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Largest qubit count for dense state vectors.
inline constexpr std::size_t max_dense_qubits = 24;

/// Number of qubits of a state vector; throws unless its length is 2^n.
inline std::size_t qubit_count(const StateVector& psi) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  if (dim == 0 || !std::has_single_bit(dim)) throw std::invalid_argument("state length is not a power of two");
  return static_cast<std::size_t>(std::countr_zero(dim));
}

/// Pauli in basis-index form: P|b> = coefficient * (-1)^popcount(z & b) |b ^ x>.
/// Qubit q corresponds to index bit n - 1 - q.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex coefficient{1.0, 0.0};
};

inline PauliMasks pauli_masks(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  if (n > max_dense_qubits) throw std::invalid_argument("Pauli string too wide for dense simulation");
  PauliMasks out;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if (p.xbits().get(q)) out.x |= bit;
    if (p.zbits().get(q)) out.z |= bit;
  }
  static const Complex powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  out.coefficient = powers[p.phase()];
  return out;
}

inline StateVector apply_pauli(const PauliString& p, const StateVector& psi) {
  if (qubit_count(psi) != p.num_qubits()) throw std::invalid_argument("apply_pauli: width mismatch");
  const PauliMasks m = pauli_masks(p);
  StateVector out(psi.size());
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double s = (std::popcount(m.z & ub) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(ub ^ m.x)] = m.coefficient * s * psi[b];
  }
  return out;
}

/// <psi|P|psi> for Hermitian P.
inline double pauli_expectation(const StateVector& psi, const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("pauli_expectation: " + format_pauli(p) + " is not Hermitian");
  if (qubit_count(psi) != p.num_qubits()) throw std::invalid_argument("pauli_expectation: width mismatch");
  const PauliMasks m = pauli_masks(p);
  Complex total = 0;
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double s = (std::popcount(m.z & ub) & 1) ? -1.0 : 1.0;
    total += std::conj(psi[static_cast<Eigen::Index>(ub ^ m.x)]) * s * psi[b];
  }
  total *= m.coefficient;
  return std::clamp(total.real(), -1.0, 1.0);
}

inline std::vector<double> expectations(const StateVector& psi, const MeasurementSet& measurements) {
  std::vector<double> out;
  out.reserve(measurements.size());
  for (const auto& p : measurements) out.push_back(pauli_expectation(psi, p));
  return out;
}

inline StateVector basis_state(std::size_t n, std::uint64_t index) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
  psi[static_cast<Eigen::Index>(index)] = 1.0;
  return psi;
}

/// Tensor product, a on the leading qubits.
inline StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

/// Haar-random pure state.
inline StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector psi(static_cast<Eigen::Index>(std::uint64_t{1} << n));
  for (auto& c : psi) c = Complex(g(rng), g(rng));
  return psi / psi.norm();
}

/// Single-qubit state with the given Bloch vector (unit length).
inline StateVector bloch_state(double x, double y, double z) {
  const double theta = std::acos(std::clamp(z, -1.0, 1.0));
  const double phi = std::atan2(y, x);
  StateVector psi(2);
  psi[0] = std::cos(theta / 2);
  psi[1] = std::polar(std::sin(theta / 2), phi);
  return psi;
}

}  // namespace magicscope
