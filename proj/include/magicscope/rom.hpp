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
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "magicscope/errors.hpp"
#include "magicscope/lp.hpp"
#include "magicscope/polytope.hpp"

namespace magicscope {

struct Tolerances {
  /// Primal feasibility of the LP.
  double lp = 1e-9;
  /// rom <= 1 + decision counts as a member.
  double decision = 1e-7;
  /// Allowed excess of |<P>| over 1 in input data.
  double input = 1e-6;
};

/// Expectation values aligned with a MeasurementSet.
class ExpectationVector {
 public:
  ExpectationVector() = default;
  explicit ExpectationVector(std::vector<double> values, double input_tolerance = Tolerances{}.input)
      : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!std::isfinite(v) || std::abs(v) > 1.0 + input_tolerance) {
        throw InconsistentDataError("expectation " + std::to_string(i + 1) + " = " + std::to_string(v) +
                                    " lies outside [-1, 1]");
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

enum class RomStatus { optimal, infeasible, numerically_degenerate };

inline const char* to_string(RomStatus s) {
  switch (s) {
    case RomStatus::optimal: return "optimal";
    case RomStatus::infeasible: return "infeasible";
    case RomStatus::numerically_degenerate: return "numerically_degenerate";
  }
  return "unknown";
}

struct RomResult {
  double rom = std::numeric_limits<double>::infinity();
  /// Quasi-probabilities over the vertices, in VertexSet order.
  std::vector<double> coefficients;
  double negativity = std::numeric_limits<double>::infinity();
  bool member = false;
  RomStatus status = RomStatus::infeasible;
  /// Optimal LP basis, usable as a warm start for a nearby expectation vector.
  std::vector<std::size_t> basis;
};

/// LP data for one vertex set, reusable across many expectation vectors.
class RomProblem {
 public:
  explicit RomProblem(const VertexSet& vertices, Tolerances tol = {}) : tol_(tol), dimension_(vertices.dimension) {
    const auto rows = static_cast<Eigen::Index>(dimension_ + 1);
    const auto cols = static_cast<Eigen::Index>(vertices.size());
    columns_.resize(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Vertex& v = vertices.vertices[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < dimension_; ++i) columns_(static_cast<Eigen::Index>(i), j) = v[i];
      columns_(rows - 1, j) = 1.0;
    }
    ones_ = Eigen::VectorXd::Ones(cols);
    zeros_ = Eigen::VectorXd::Zero(cols);
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(columns_.cols()); }
  const Tolerances& tolerances() const { return tol_; }

  /// min ||x||_1 over affine combinations of the vertices reproducing b.
  RomResult rom(const ExpectationVector& b, const std::vector<std::size_t>* warm_basis = nullptr) const {
    const Eigen::VectorXd r = rhs(b);
    const lp::Solution sol =
        lp::solve(lp::ProblemView{columns_, r, ones_, /*mirrored=*/true}, lp_options(), warm_basis);
    RomResult out;
    if (sol.status == lp::Status::infeasible) return out;
    if (sol.status != lp::Status::optimal) {
      out.status = RomStatus::numerically_degenerate;
      if (sol.x.size() == 0) return out;
    } else {
      out.status = RomStatus::optimal;
    }
    out.coefficients.assign(sol.x.data(), sol.x.data() + sol.x.size());
    out.rom = sol.x.lpNorm<1>();
    out.negativity = out.rom;
    out.member = out.rom <= 1.0 + tol_.decision;
    out.basis = sol.basis;
    return out;
  }

  /// Whether b is a convex combination of the vertices. The phase-one residual
  /// is accepted up to the decision tolerance so that the answer matches
  /// rom(b).member away from exact boundary ties.
  bool contains(const ExpectationVector& b) const {
    const Eigen::VectorXd r = rhs(b);
    lp::Options o = lp_options();
    o.feasibility_tol = tol_.decision;
    const lp::Solution sol = lp::solve(lp::ProblemView{columns_, r, zeros_, /*mirrored=*/false}, o);
    if (sol.status == lp::Status::infeasible) return false;
    if (sol.status != lp::Status::optimal) throw SolverError(std::string("membership LP: ") + lp::to_string(sol.status));
    return true;
  }

 private:
  lp::Options lp_options() const {
    lp::Options o;
    o.feasibility_tol = tol_.lp;
    o.optimality_tol = tol_.lp;
    return o;
  }

  Eigen::VectorXd rhs(const ExpectationVector& b) const {
    if (b.size() != dimension_) {
      throw std::invalid_argument("expectation vector has " + std::to_string(b.size()) + " entries, polytope has " +
                                  std::to_string(dimension_) + " coordinates");
    }
    Eigen::VectorXd r(static_cast<Eigen::Index>(dimension_ + 1));
    for (std::size_t i = 0; i < dimension_; ++i) r[static_cast<Eigen::Index>(i)] = b[i];
    r[static_cast<Eigen::Index>(dimension_)] = 1.0;
    return r;
  }

  Tolerances tol_;
  std::size_t dimension_;
  Eigen::MatrixXd columns_;
  Eigen::VectorXd ones_;
  Eigen::VectorXd zeros_;
};

inline RomResult reduced_rom(const VertexSet& vertices, const ExpectationVector& b, Tolerances tol = {}) {
  return RomProblem(vertices, tol).rom(b);
}

inline bool membership(const VertexSet& vertices, const ExpectationVector& b, Tolerances tol = {}) {
  return RomProblem(vertices, tol).contains(b);
}

struct WitnessReport {
  bool witnessed = false;
  std::string message;
};

/// Leaving the reduced polytope proves the state is not a stabilizer state.
/// Staying inside proves nothing.
inline WitnessReport witness(const MeasurementSet& measurements, const ExpectationVector& b, Tolerances tol = {},
                             unsigned threads = 1) {
  PolytopeOptions po;
  po.threads = threads;
  const bool inside = membership(v_representation(measurements, po), b, tol);
  if (inside) return {false, "consistent with a stabilizer state on M (not a certificate of stabilizerness)"};
  return {true, "nonstabilizerness witnessed"};
}

/// Samples for additive error delta with failure probability epsilon when
/// estimating through a quasi-probability decomposition of negativity `rom`.
inline std::uint64_t sample_complexity(double rom, double delta, double epsilon) {
  // LP round-off may leave rom a hair below 1.
  if (!(rom >= 1.0 - 1e-9) || !std::isfinite(rom)) throw std::domain_error("sample_complexity: rom must be finite and >= 1");
  rom = std::max(rom, 1.0);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::domain_error("sample_complexity: delta must be positive");
  if (!(epsilon > 0.0 && epsilon <= 2.0)) throw std::domain_error("sample_complexity: epsilon must lie in (0, 2]");
  const double n = 2.0 / (delta * delta) * rom * rom * std::log(2.0 / epsilon);
  if (n >= 1.8e19) throw std::overflow_error("sample_complexity: bound exceeds 64-bit range");
  return static_cast<std::uint64_t>(std::ceil(n));
}

}  // namespace magicscope
