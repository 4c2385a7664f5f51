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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magicscope/errors.hpp"
#include "magicscope/lp.hpp"
#include "magicscope/pauli.hpp"
#include "magicscope/rom.hpp"
#include "magicscope/state.hpp"

// Brute-force reference implementations for small qubit counts. Everything here
// scales as the number of stabilizer states and exists to check the fast paths.
namespace magicscope::oracle {

inline constexpr std::size_t max_qubits = 4;

inline void require_oracle_width(std::size_t n) {
  if (n == 0 || n > max_qubits) {
    throw std::out_of_range("oracle supports 1 to " + std::to_string(max_qubits) + " qubits, got " +
                            std::to_string(n));
  }
}

/// The i-th unsigned n-qubit Pauli, base-4 digits I=0, X=1, Y=2, Z=3 with
/// qubit 1 as the most significant digit.
inline PauliString pauli_from_index(std::size_t n, std::size_t index) {
  std::string letters(n, 'I');
  for (std::size_t q = n; q-- > 0;) {
    letters[q] = "IXYZ"[index % 4];
    index /= 4;
  }
  return PauliString::from_letters(letters);
}

/// Maximal stabilizer group: n independent commuting generators and all 2^n
/// signed elements (identity included), sorted.
class StabilizerGroup {
 public:
  explicit StabilizerGroup(std::vector<PauliString> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw std::invalid_argument("StabilizerGroup: no generators");
    const std::size_t n = generators_.front().num_qubits();
    if (generators_.size() != n) throw std::invalid_argument("StabilizerGroup: need exactly n generators");
    for (std::size_t i = 0; i < n; ++i) {
      if (!generators_[i].is_hermitian()) throw std::invalid_argument("StabilizerGroup: non-Hermitian generator");
      for (std::size_t j = 0; j < i; ++j) {
        if (!commutes(generators_[i], generators_[j])) {
          throw std::invalid_argument("StabilizerGroup: generators do not commute");
        }
      }
    }
    elements_.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      PauliString p(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) p = multiply(p, generators_[i]);
      }
      if (mask != 0 && p.is_identity_up_to_phase()) {
        throw std::invalid_argument("StabilizerGroup: generators are dependent or generate -1");
      }
      elements_.push_back(std::move(p));
    }
    std::sort(elements_.begin(), elements_.end());
  }

  std::size_t num_qubits() const { return generators_.front().num_qubits(); }
  const std::vector<PauliString>& generators() const { return generators_; }
  const std::vector<PauliString>& elements() const { return elements_; }

  bool contains(const PauliString& p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

  /// Sorted element encodings; equal fingerprints mean equal groups.
  std::vector<std::uint64_t> fingerprint() const {
    std::vector<std::uint64_t> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) {
      const PauliMasks m = pauli_masks(e);
      out.push_back(m.x << 34 | m.z << 2 | static_cast<std::uint64_t>(e.phase()));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<PauliString> generators_;
  std::vector<PauliString> elements_;
};

/// <P> in the stabilizer state of S: +1 if P in S, -1 if -P in S, else 0.
inline int stabilizer_expectation(const StabilizerGroup& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits()) throw std::invalid_argument("stabilizer_expectation: width mismatch");
  if (s.contains(p)) return 1;
  if (s.contains(p.negated())) return -1;
  return 0;
}

/// Every pure n-qubit stabilizer state as its group, sorted by fingerprint.
/// Builds all Lagrangian subspaces by growing isotropic ones one generator at a
/// time (deduplicated by their element sets), then attaches all 2^n sign patterns.
inline std::vector<StabilizerGroup> enumerate_stabilizer_groups(std::size_t n) {
  require_oracle_width(n);
  const std::size_t paulis = std::size_t{1} << (2 * n);
  std::vector<PauliString> unsigned_paulis;
  for (std::size_t i = 0; i < paulis; ++i) unsigned_paulis.push_back(pauli_from_index(n, i));

  // Subspace key: sorted Pauli indices of its elements.
  using Key = std::vector<std::size_t>;
  std::map<Key, std::vector<std::size_t>> level{{Key{0}, {}}};
  auto index_of = [&](const PauliString& p) {
    std::size_t idx = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const char c = p.letter(q);
      idx = idx * 4 + static_cast<std::size_t>(c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3);
    }
    return idx;
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::map<Key, std::vector<std::size_t>> next;
    for (const auto& [elements, gens] : level) {
      for (std::size_t cand = 1; cand < paulis; ++cand) {
        if (std::binary_search(elements.begin(), elements.end(), cand)) continue;
        const PauliString& c = unsigned_paulis[cand];
        bool ok = true;
        for (std::size_t g : gens) {
          if (!commutes(c, unsigned_paulis[g])) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        Key grown = elements;
        for (std::size_t e : elements) grown.push_back(index_of(multiply(unsigned_paulis[e], c)));
        std::sort(grown.begin(), grown.end());
        if (next.count(grown)) continue;
        auto g2 = gens;
        g2.push_back(cand);
        next.emplace(std::move(grown), std::move(g2));
      }
    }
    level = std::move(next);
  }

  std::vector<std::pair<std::vector<std::uint64_t>, StabilizerGroup>> groups;
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& [elements, gens] : level) {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      std::vector<PauliString> generators;
      for (std::size_t i = 0; i < n; ++i) {
        const PauliString& g = unsigned_paulis[gens[i]];
        generators.push_back(signs >> i & 1 ? g.negated() : g);
      }
      StabilizerGroup group(std::move(generators));
      auto fp = group.fingerprint();
      if (seen.insert(fp).second) groups.emplace_back(std::move(fp), std::move(group));
    }
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<StabilizerGroup> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(std::move(g.second));
  return out;
}

/// Cached enumeration, n <= 4.
inline const std::vector<StabilizerGroup>& stabilizer_groups(std::size_t n) {
  require_oracle_width(n);
  static std::once_flag once[max_qubits + 1];
  static std::vector<StabilizerGroup> cache[max_qubits + 1];
  std::call_once(once[n], [n] { cache[n] = enumerate_stabilizer_groups(n); });
  return cache[n];
}

/// State vector of the stabilizer state, via the projector prod (1 + g)/2.
inline StateVector stabilizer_state(const StabilizerGroup& s) {
  const std::size_t n = s.num_qubits();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  for (Eigen::Index start = 0; start < dim; ++start) {
    StateVector psi = StateVector::Zero(dim);
    psi[start] = 1.0;
    for (const auto& g : s.generators()) psi = 0.5 * (psi + apply_pauli(g, psi));
    if (psi.norm() > 1e-6) return psi / psi.norm();
  }
  throw std::logic_error("stabilizer_state: projector vanished");
}

/// Distinct projections of all pure stabilizer states onto M.
inline std::set<std::vector<int>> topdown_vertices(const MeasurementSet& measurements) {
  const std::size_t n = measurements.num_qubits();
  require_oracle_width(n);
  std::set<std::vector<int>> out;
  for (const auto& s : stabilizer_groups(n)) {
    std::vector<int> v;
    v.reserve(measurements.size());
    for (const auto& p : measurements) v.push_back(stabilizer_expectation(s, p));
    out.insert(std::move(v));
  }
  return out;
}

/// All 4^n expectations of psi in pauli_from_index order.
inline std::vector<double> pauli_table(const StateVector& psi) {
  const std::size_t n = qubit_count(psi);
  require_oracle_width(n);
  std::vector<double> out;
  out.reserve(std::size_t{1} << (2 * n));
  for (std::size_t i = 0; i < (std::size_t{1} << (2 * n)); ++i) out.push_back(pauli_expectation(psi, pauli_from_index(n, i)));
  return out;
}

/// Robustness of magic from a complete Pauli table: min ||x||_1 over affine
/// combinations of all stabilizer states reproducing the table.
inline double full_rom(const std::vector<double>& table, double lp_tol = 1e-9) {
  std::size_t n = 0;
  while (n <= max_qubits && (std::size_t{1} << (2 * n)) < table.size()) ++n;
  if ((std::size_t{1} << (2 * n)) != table.size()) throw std::invalid_argument("full_rom: table length is not 4^n");
  require_oracle_width(n);
  if (std::abs(table[0] - 1.0) > 1e-6) throw InconsistentDataError("full_rom: identity expectation must be 1");
  for (double v : table) {
    if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-6) throw InconsistentDataError("full_rom: entry outside [-1, 1]");
  }
  const auto& groups = stabilizer_groups(n);
  const auto rows = static_cast<Eigen::Index>(table.size());
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(groups.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const PauliString p = pauli_from_index(n, static_cast<std::size_t>(r));
    for (std::size_t c = 0; c < groups.size(); ++c) a(r, static_cast<Eigen::Index>(c)) = stabilizer_expectation(groups[c], p);
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(table.data(), rows);
  const Eigen::VectorXd cost = Eigen::VectorXd::Ones(a.cols());
  lp::Options o;
  o.feasibility_tol = lp_tol;
  o.optimality_tol = lp_tol;
  const auto sol = lp::solve(lp::ProblemView{a, b, cost, /*mirrored=*/true}, o);
  if (sol.status == lp::Status::infeasible) throw InconsistentDataError("full_rom: table is not reachable by any state");
  if (sol.status != lp::Status::optimal) throw SolverError(std::string("full_rom: ") + lp::to_string(sol.status));
  return sol.x.lpNorm<1>();
}

/// Whether point is a convex combination of points, up to tol in the phase-one residual.
inline bool in_convex_hull(const std::vector<std::vector<double>>& points, const std::vector<double>& point,
                           double tol = 1e-7) {
  if (points.empty()) return false;
  const auto dim = static_cast<Eigen::Index>(point.size());
  Eigen::MatrixXd a(dim + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != point.size()) throw std::invalid_argument("in_convex_hull: dimension mismatch");
    for (Eigen::Index i = 0; i < dim; ++i) a(i, static_cast<Eigen::Index>(j)) = points[j][static_cast<std::size_t>(i)];
    a(dim, static_cast<Eigen::Index>(j)) = 1.0;
  }
  Eigen::VectorXd b(dim + 1);
  for (Eigen::Index i = 0; i < dim; ++i) b[i] = point[static_cast<std::size_t>(i)];
  b[dim] = 1.0;
  const Eigen::VectorXd cost = Eigen::VectorXd::Zero(a.cols());
  lp::Options o;
  o.feasibility_tol = tol;
  const auto sol = lp::solve(lp::ProblemView{a, b, cost, false}, o);
  if (sol.status == lp::Status::infeasible) return false;
  if (sol.status != lp::Status::optimal) throw SolverError(std::string("in_convex_hull: ") + lp::to_string(sol.status));
  return true;
}

/// conv(A) == conv(B), checked point by point in both directions.
inline bool hull_equal(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                       double tol = 1e-7) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  for (const auto& p : a) {
    if (!in_convex_hull(b, p, tol)) return false;
  }
  for (const auto& p : b) {
    if (!in_convex_hull(a, p, tol)) return false;
  }
  return true;
}

template <typename Range>
std::vector<std::vector<double>> to_points(const Range& vectors) {
  std::vector<std::vector<double>> out;
  for (const auto& v : vectors) {
    std::vector<double> p;
    for (std::size_t i = 0; i < v.size(); ++i) p.push_back(static_cast<double>(v[i]));
    out.push_back(std::move(p));
  }
  return out;
}

// Clifford gates.

enum class GateKind { h, s, s_dag, cnot };

struct Gate {
  GateKind kind;
  std::size_t target;
  std::size_t control = 0;  // cnot only
};

using Circuit = std::vector<Gate>;

namespace detail {

inline PauliString single(std::size_t n, std::size_t q, char letter, bool negative = false) {
  std::string s(n, 'I');
  s[q] = letter;
  const auto p = PauliString::from_letters(s);
  return negative ? p.negated() : p;
}

// Images of X_q and Z_q under conjugation g P g^dagger.
inline std::pair<PauliString, PauliString> conjugate_generators(const Gate& g, std::size_t n, std::size_t q) {
  PauliString x = single(n, q, 'X'), z = single(n, q, 'Z');
  switch (g.kind) {
    case GateKind::h:
      if (q == g.target) return {z, x};
      break;
    case GateKind::s:
      if (q == g.target) return {single(n, q, 'Y'), z};
      break;
    case GateKind::s_dag:
      if (q == g.target) return {single(n, q, 'Y', true), z};
      break;
    case GateKind::cnot:
      if (q == g.control) x = multiply(x, single(n, g.target, 'X'));
      if (q == g.target) z = multiply(single(n, g.control, 'Z'), z);
      break;
  }
  return {x, z};
}

inline Gate inverse(const Gate& g) {
  Gate out = g;
  if (g.kind == GateKind::s) out.kind = GateKind::s_dag;
  if (g.kind == GateKind::s_dag) out.kind = GateKind::s;
  return out;
}

}  // namespace detail

/// g P g^dagger.
inline PauliString conjugate(const PauliString& p, const Gate& g) {
  const std::size_t n = p.num_qubits();
  if (g.target >= n || (g.kind == GateKind::cnot && (g.control >= n || g.control == g.target))) {
    throw std::invalid_argument("conjugate: gate qubits out of range");
  }
  // P = i^k prod_q X_q^x_q prod_q Z_q^z_q; conjugation is multiplicative.
  PauliString out(p.phase(), BitVector(n), BitVector(n));
  for (std::size_t q = 0; q < n; ++q) {
    if (p.xbits().get(q)) out = multiply(out, detail::conjugate_generators(g, n, q).first);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (p.zbits().get(q)) out = multiply(out, detail::conjugate_generators(g, n, q).second);
  }
  return out;
}

/// C P C^dagger, with C applying circuit[0] first.
inline PauliString conjugate(PauliString p, const Circuit& c) {
  for (const auto& g : c) p = conjugate(p, g);
  return p;
}

/// C^dagger P C.
inline PauliString conjugate_inverse(PauliString p, const Circuit& c) {
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = conjugate(p, detail::inverse(*it));
  return p;
}

inline StateVector apply_gate(const Gate& g, const StateVector& psi) {
  const std::size_t n = qubit_count(psi);
  const auto bit = [n](std::size_t q) { return std::uint64_t{1} << (n - 1 - q); };
  StateVector out = psi;
  const std::uint64_t t = bit(g.target);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const auto b = static_cast<std::uint64_t>(i);
    switch (g.kind) {
      case GateKind::h: {
        if (b & t) break;
        const Complex a0 = psi[i], a1 = psi[static_cast<Eigen::Index>(b | t)];
        out[i] = (a0 + a1) / std::sqrt(2.0);
        out[static_cast<Eigen::Index>(b | t)] = (a0 - a1) / std::sqrt(2.0);
        break;
      }
      case GateKind::s:
        if (b & t) out[i] = psi[i] * Complex(0, 1);
        break;
      case GateKind::s_dag:
        if (b & t) out[i] = psi[i] * Complex(0, -1);
        break;
      case GateKind::cnot:
        if (b & bit(g.control)) out[static_cast<Eigen::Index>(b ^ t)] = psi[i];
        break;
    }
  }
  return out;
}

inline StateVector apply_circuit(const Circuit& c, StateVector psi) {
  for (const auto& g : c) psi = apply_gate(g, psi);
  return psi;
}

inline MeasurementSet conjugate_inverse(const MeasurementSet& m, const Circuit& c) {
  std::vector<PauliString> out;
  for (const auto& p : m) out.push_back(conjugate_inverse(p, c));
  return MeasurementSet(std::move(out));
}

inline Circuit random_clifford_circuit(std::size_t n, std::size_t depth, std::mt19937_64& rng) {
  Circuit c;
  for (std::size_t i = 0; i < depth; ++i) {
    const auto r = rng() % (n > 1 ? 4 : 3);
    Gate g{static_cast<GateKind>(r), static_cast<std::size_t>(rng() % n)};
    if (g.kind == GateKind::cnot) {
      g.control = static_cast<std::size_t>(rng() % (n - 1));
      if (g.control >= g.target) ++g.control;
    }
    c.push_back(g);
  }
  return c;
}

/// Expectations after complete dephasing in the computational basis: strings
/// with any X or Y factor average to zero.
inline std::vector<double> dephased(const MeasurementSet& m, const std::vector<double>& values) {
  if (values.size() != m.size()) throw std::invalid_argument("dephased: length mismatch");
  std::vector<double> out(values);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].xbits().any()) out[i] = 0.0;
  }
  return out;
}

/// A random measurement set: m distinct non-identity strings, each negated with probability 1/4.
inline MeasurementSet random_measurement_set(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  const std::size_t available = 2 * ((std::size_t{1} << (2 * n)) - 1);
  if (m > available) throw std::invalid_argument("random_measurement_set: m too large");
  std::vector<PauliString> out;
  while (out.size() < m) {
    const std::size_t idx = 1 + static_cast<std::size_t>(rng() % ((std::size_t{1} << (2 * n)) - 1));
    PauliString p = pauli_from_index(n, idx);
    if (rng() % 4 == 0) p = p.negated();
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return MeasurementSet(std::move(out));
}

}  // namespace magicscope::oracle
