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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magicscope/errors.hpp"
#include "magicscope/pauli.hpp"
#include "magicscope/state.hpp"

namespace magicscope {

enum class Model { tfim, annni, xxz };
enum class Boundary { periodic, open };

inline const char* to_string(Model m) {
  switch (m) {
    case Model::tfim: return "tfim";
    case Model::annni: return "annni";
    case Model::xxz: return "xxz";
  }
  return "unknown";
}

inline const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

inline Model parse_model(const std::string& s) {
  if (s == "tfim") return Model::tfim;
  if (s == "annni") return Model::annni;
  if (s == "xxz") return Model::xxz;
  throw std::invalid_argument("unknown model '" + s + "' (expected tfim, annni or xxz)");
}

/// Coupling names in output order.
inline std::vector<std::string> parameter_names(Model m) {
  switch (m) {
    case Model::tfim: return {"g"};
    case Model::annni: return {"k", "g"};
    case Model::xxz: return {"delta", "h"};
  }
  return {};
}

inline constexpr std::size_t min_chain_qubits = 2;
inline constexpr std::size_t max_chain_qubits = 14;

struct SpinChainSpec {
  Model model = Model::tfim;
  std::size_t n = 4;
  Boundary boundary = Boundary::periodic;
  /// Keyed by parameter_names(model); missing couplings default to 0.
  std::map<std::string, double> params;

  double param(const std::string& name) const {
    auto it = params.find(name);
    return it == params.end() ? 0.0 : it->second;
  }

  void validate() const {
    if (n < min_chain_qubits || n > max_chain_qubits) {
      throw std::invalid_argument("chain length " + std::to_string(n) + " outside [" +
                                  std::to_string(min_chain_qubits) + ", " + std::to_string(max_chain_qubits) + "]");
    }
    if (model == Model::annni && n < 3) throw std::invalid_argument("annni needs at least 3 qubits");
    const auto names = parameter_names(model);
    for (const auto& [name, value] : params) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw std::invalid_argument("model " + std::string(to_string(model)) + " has no parameter '" + name + "'");
      }
      if (!std::isfinite(value)) throw std::invalid_argument("parameter '" + name + "' is not finite");
    }
  }
};

/// Role of a term in the chain, used to pick one representative per role.
enum class TermRole { zz_near, zz_next, xx_near, yy_near, x_field };

struct HamiltonianTerm {
  double weight = 0;
  PauliString pauli;
  TermRole role = TermRole::x_field;
};

namespace detail {

inline PauliString chain_pauli(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> factors) {
  std::string s(n, 'I');
  for (auto [q, c] : factors) s[q] = c;
  return PauliString::from_letters(s);
}

// Every structural term with its raw weight, duplicates merged in first-seen order.
inline std::vector<HamiltonianTerm> term_inventory(const SpinChainSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const bool periodic = spec.boundary == Boundary::periodic;
  std::vector<HamiltonianTerm> raw;
  auto bonds = [&](std::size_t distance) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t count = periodic ? n : (n > distance ? n - distance : 0);
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(i, (i + distance) % n);
    return out;
  };
  switch (spec.model) {
    case Model::tfim:
    case Model::annni: {
      const double k = spec.model == Model::annni ? spec.param("k") : 0.0;
      const double g = spec.param("g");
      for (auto [a, b] : bonds(1)) raw.push_back({-1.0, chain_pauli(n, {{a, 'Z'}, {b, 'Z'}}), TermRole::zz_near});
      if (spec.model == Model::annni) {
        for (auto [a, b] : bonds(2)) raw.push_back({k, chain_pauli(n, {{a, 'Z'}, {b, 'Z'}}), TermRole::zz_next});
      }
      for (std::size_t i = 0; i < n; ++i) raw.push_back({-g, chain_pauli(n, {{i, 'X'}}), TermRole::x_field});
      break;
    }
    case Model::xxz: {
      const double delta = spec.param("delta"), h = spec.param("h");
      for (auto [a, b] : bonds(1)) {
        raw.push_back({0.25, chain_pauli(n, {{a, 'X'}, {b, 'X'}}), TermRole::xx_near});
        raw.push_back({0.25, chain_pauli(n, {{a, 'Y'}, {b, 'Y'}}), TermRole::yy_near});
        raw.push_back({0.25 * delta, chain_pauli(n, {{a, 'Z'}, {b, 'Z'}}), TermRole::zz_near});
      }
      for (std::size_t i = 0; i < n; ++i) raw.push_back({-0.5 * h, chain_pauli(n, {{i, 'X'}}), TermRole::x_field});
      break;
    }
  }
  std::vector<HamiltonianTerm> merged;
  for (auto& t : raw) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const HamiltonianTerm& m) { return m.pauli == t.pauli; });
    if (it == merged.end()) {
      merged.push_back(std::move(t));
    } else {
      it->weight += t.weight;
    }
  }
  return merged;
}

}  // namespace detail

/// Weighted Pauli terms of the chain Hamiltonian. Coinciding strings (short
/// periodic chains) are merged and zero weights dropped.
inline std::vector<HamiltonianTerm> build_hamiltonian(const SpinChainSpec& spec) {
  std::vector<HamiltonianTerm> out;
  for (auto& t : detail::term_inventory(spec)) {
    if (t.weight != 0.0) out.push_back(std::move(t));
  }
  return out;
}

enum class MeasurementScope { first_cell, all_terms };

/// All distinct strings the Hamiltonian can contain for this model and size
/// (independent of coupling values), or one per role on the lowest qubits.
inline MeasurementSet hamiltonian_measurement_set(const SpinChainSpec& spec, MeasurementScope scope) {
  const auto inventory = detail::term_inventory(spec);
  std::vector<PauliString> out;
  if (scope == MeasurementScope::all_terms) {
    for (const auto& t : inventory) out.push_back(t.pauli);
    return MeasurementSet(std::move(out));
  }
  const std::size_t n = spec.n;
  auto add = [&](PauliString p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  };
  using detail::chain_pauli;
  switch (spec.model) {
    case Model::tfim: add(chain_pauli(n, {{0, 'Z'}, {1, 'Z'}})); break;
    case Model::annni:
      add(chain_pauli(n, {{0, 'Z'}, {1, 'Z'}}));
      add(chain_pauli(n, {{0, 'Z'}, {2 % n, 'Z'}}));
      break;
    case Model::xxz:
      add(chain_pauli(n, {{0, 'X'}, {1, 'X'}}));
      add(chain_pauli(n, {{0, 'Y'}, {1, 'Y'}}));
      add(chain_pauli(n, {{0, 'Z'}, {1, 'Z'}}));
      break;
  }
  add(chain_pauli(n, {{0, 'X'}}));
  return MeasurementSet(std::move(out));
}

/// Sum of weighted Pauli terms applied matrix-free. Terms sharing an X mask are
/// folded into one diagonal, so H = sum_x X^x D_x.
class PauliSumOperator {
 public:
  explicit PauliSumOperator(const std::vector<HamiltonianTerm>& terms) {
    if (terms.empty()) throw std::invalid_argument("PauliSumOperator: no terms");
    n_ = terms.front().pauli.num_qubits();
    if (n_ > max_dense_qubits) throw std::invalid_argument("PauliSumOperator: too many qubits");
    dim_ = Eigen::Index{1} << n_;
    std::map<std::uint64_t, std::size_t> slot;
    for (const auto& t : terms) {
      if (t.pauli.num_qubits() != n_) throw std::invalid_argument("PauliSumOperator: width mismatch");
      if (!t.pauli.is_hermitian()) throw std::invalid_argument("PauliSumOperator: non-Hermitian term");
      const PauliMasks m = pauli_masks(t.pauli);
      auto [it, fresh] = slot.emplace(m.x, masks_.size());
      if (fresh) {
        masks_.push_back(m.x);
        diagonals_.push_back(StateVector::Zero(dim_));
      }
      StateVector& d = diagonals_[it->second];
      for (Eigen::Index b = 0; b < dim_; ++b) {
        const double s = (std::popcount(m.z & static_cast<std::uint64_t>(b)) & 1) ? -1.0 : 1.0;
        d[b] += t.weight * s * m.coefficient;
      }
    }
  }

  std::size_t num_qubits() const { return n_; }
  Eigen::Index dimension() const { return dim_; }

  void apply(const StateVector& in, StateVector& out) const {
    out.setZero(dim_);
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      const std::uint64_t x = masks_[k];
      const StateVector& d = diagonals_[k];
      for (Eigen::Index b = 0; b < dim_; ++b) out[static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ x)] += d[b] * in[b];
    }
  }

  StateVector operator*(const StateVector& in) const {
    StateVector out;
    apply(in, out);
    return out;
  }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (std::size_t k = 0; k < masks_.size(); ++k) {
      for (Eigen::Index b = 0; b < dim_; ++b) h(static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ masks_[k]), b) += diagonals_[k][b];
    }
    return h;
  }

 private:
  std::size_t n_ = 0;
  Eigen::Index dim_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<StateVector> diagonals_;
};

struct EigenOptions {
  double tolerance = 1e-10;
  /// Gap below which the ground level counts as degenerate.
  double degeneracy_threshold = 1e-8;
  /// Dense diagonalization up to this many qubits.
  std::size_t dense_max_qubits = 8;
  std::size_t krylov_dim = 80;
  std::size_t max_restarts = 200;
  std::uint64_t seed = 12345;
};

struct GroundStateResult {
  double energy = 0;
  StateVector state;
  double gap_estimate = 0;
  bool degenerate = false;
  double residual = 0;
  std::size_t matvecs = 0;
};

namespace detail {

struct LanczosResult {
  double value = 0;
  StateVector vector;
  double residual = 0;
  std::size_t matvecs = 0;
};

// Lowest eigenpair of `op` restricted to the orthogonal complement of `deflate`,
// by explicitly restarted Lanczos with full reorthogonalization.
inline LanczosResult lanczos_lowest(const PauliSumOperator& op, const std::vector<StateVector>& deflate,
                                    const EigenOptions& opt, std::uint64_t seed) {
  const Eigen::Index dim = op.dimension();
  auto project_out = [&](StateVector& v) {
    for (const auto& d : deflate) v -= d.dot(v) * d;
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector start(dim);
  for (auto& c : start) c = Complex(g(rng), g(rng));
  project_out(start);
  start.normalize();

  LanczosResult out;
  const auto kmax = static_cast<Eigen::Index>(std::min<std::size_t>(opt.krylov_dim, static_cast<std::size_t>(dim)));
  for (std::size_t restart = 0; restart <= opt.max_restarts; ++restart) {
    std::vector<StateVector> basis{start};
    std::vector<double> alpha, beta;
    StateVector w;
    Eigen::VectorXd ritz;
    for (Eigen::Index j = 0; j < kmax; ++j) {
      op.apply(basis.back(), w);
      ++out.matvecs;
      project_out(w);
      alpha.push_back(basis.back().dot(w).real());
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) w -= v.dot(w) * v;
        project_out(w);
      }
      const double b = w.norm();
      const auto k = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      ritz = es.eigenvectors().col(0);
      const double estimate = b * std::abs(ritz[k - 1]);
      if (estimate <= 0.1 * opt.tolerance || b <= 1e-14 || j + 1 == kmax) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }
    StateVector v = StateVector::Zero(dim);
    for (Eigen::Index i = 0; i < ritz.size(); ++i) v += ritz[i] * basis[static_cast<std::size_t>(i)];
    project_out(v);
    v.normalize();
    op.apply(v, w);
    ++out.matvecs;
    project_out(w);
    const double value = v.dot(w).real();
    const double residual = (w - value * v).norm();
    out.value = value;
    out.vector = v;
    out.residual = residual;
    if (residual <= opt.tolerance) return out;
    start = v;
  }
  throw SolverError("Lanczos did not reach residual " + std::to_string(opt.tolerance) + " (last " +
                    std::to_string(out.residual) + ")");
}

}  // namespace detail

/// Lowest eigenpair of the Hamiltonian and an estimate of the first gap.
inline GroundStateResult ground_state(const std::vector<HamiltonianTerm>& terms, const EigenOptions& opt = {}) {
  const PauliSumOperator op(terms);
  GroundStateResult out;
  if (op.num_qubits() <= opt.dense_max_qubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    out.energy = es.eigenvalues()[0];
    out.state = es.eigenvectors().col(0);
    out.gap_estimate = es.eigenvalues().size() > 1 ? es.eigenvalues()[1] - es.eigenvalues()[0] : 0.0;
  } else {
    const auto ground = detail::lanczos_lowest(op, {}, opt, opt.seed);
    const auto excited = detail::lanczos_lowest(op, {ground.vector}, opt, opt.seed + 1);
    out.energy = ground.value;
    out.state = ground.vector;
    out.gap_estimate = excited.value - ground.value;
    out.matvecs = ground.matvecs + excited.matvecs;
  }
  out.gap_estimate = std::max(0.0, out.gap_estimate);
  out.degenerate = out.gap_estimate < opt.degeneracy_threshold;
  out.residual = (op * out.state - out.energy * out.state).norm();
  if (out.residual > opt.tolerance) {
    throw SolverError("ground state residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

/// <phi|H|phi>.
inline double energy_expectation(const std::vector<HamiltonianTerm>& terms, const StateVector& phi) {
  double e = 0;
  for (const auto& t : terms) e += t.weight * pauli_expectation(phi, t.pauli);
  return e;
}

/// Compact label such as "Z1Z2" (1-based qubits, identities omitted, sign kept).
inline std::string compact_label(const PauliString& p) {
  std::string out = p.sign() < 0 ? "-" : "";
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    const char c = p.letter(q);
    if (c != 'I') out += c + std::to_string(q + 1);
  }
  return out;
}

}  // namespace magicscope
