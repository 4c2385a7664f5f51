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
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace magicscope::lp {

enum class Status { optimal, infeasible, unbounded, numerical_failure, iteration_limit };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::numerical_failure: return "numerical_failure";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

struct Options {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t max_iterations = 200000;
  std::size_t refactor_interval = 50;
  /// Consecutive non-improving pivots before switching to Bland's rule.
  std::size_t stall_limit = 40;
  /// Columns kept from each full pricing pass for cheap minor iterations.
  std::size_t candidate_list = 4096;
  /// Size of the right-hand-side shift applied during phase two of mirrored
  /// problems to break degeneracy; 0 disables it.
  double perturbation = 1e-7;
};

/// Marks a basis row held by an artificial variable.
inline constexpr std::size_t no_column = std::numeric_limits<std::size_t>::max();

/// min c.x  s.t.  A x = b,  x >= 0.
///
/// With `mirrored` set every column j stands for two variables, p_j on a_j and
/// q_j on -a_j, both with cost c_j; the reported x_j is p_j - q_j. That is the
/// split form of an l1 objective over free variables.
struct Problem {
  Eigen::MatrixXd columns;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
  bool mirrored = false;
};

/// Non-owning form of Problem, so a large column matrix can be shared across solves.
struct ProblemView {
  const Eigen::MatrixXd& columns;
  const Eigen::VectorXd& rhs;
  const Eigen::VectorXd& cost;
  bool mirrored = false;
};

struct Solution {
  Status status = Status::numerical_failure;
  double objective = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  /// Full passes over all columns to price entering candidates.
  std::size_t pricing_passes = 0;
  /// max |A x - b| of the returned point.
  double residual = std::numeric_limits<double>::quiet_NaN();
  /// Final basis as column indices (no_column for artificial rows); feed it
  /// back to solve() to warm-start a nearby problem.
  std::vector<std::size_t> basis;
};

namespace detail {

// Two-phase revised simplex with an explicit dense basis inverse. The row count
// is small (tens) while columns may number 1e5, so pricing A^T y dominates.
class RevisedSimplex {
 public:
  RevisedSimplex(const ProblemView& p, const Options& o)
      : prob_(p), opt_(o), rows_(static_cast<std::size_t>(p.columns.rows())),
        n_(static_cast<std::size_t>(p.columns.cols())), structural_(p.mirrored ? 2 * n_ : n_) {
    if (static_cast<std::size_t>(p.rhs.size()) != rows_) throw std::invalid_argument("lp: rhs length mismatch");
    if (static_cast<std::size_t>(p.cost.size()) != n_) throw std::invalid_argument("lp: cost length mismatch");
  }

  Solution run(const std::vector<std::size_t>* warm) {
    try {
      return run_phases(warm);
    } catch (const std::runtime_error&) {
      Solution sol;
      sol.status = Status::numerical_failure;
      sol.iterations = iterations_;
      return sol;
    }
  }

 private:
  Solution run_phases(const std::vector<std::size_t>* warm) {
    Solution sol;
    if (n_ == 0) {
      sol.status = prob_.rhs.lpNorm<Eigen::Infinity>() <= opt_.feasibility_tol ? Status::optimal : Status::infeasible;
      sol.objective = 0.0;
      sol.residual = prob_.rhs.lpNorm<Eigen::Infinity>();
      return sol;
    }
    scale_ = std::max(1.0, prob_.rhs.lpNorm<Eigen::Infinity>());
    rhs_ = prob_.rhs;
    artificial_sign_.resize(static_cast<Eigen::Index>(rows_));
    for (std::size_t i = 0; i < rows_; ++i) artificial_sign_[idx(i)] = prob_.rhs[idx(i)] < 0 ? -1.0 : 1.0;
    if (warm && prob_.mirrored && try_warm_start(*warm)) return finish(phase_two());

    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = structural_ + i;
    refactor();

    Status s = iterate(/*phase=*/1);
    if (s != Status::optimal) return finish(s);
    if (phase_one_infeasibility() > opt_.feasibility_tol * scale_) return finish(Status::infeasible);
    drive_out_artificials();
    return finish(phase_two());
  }

  // For mirrored problems the basic values are first shifted up by small
  // distinct amounts so that no pivot is degenerate. Once optimal the shift is
  // removed, basic columns that went negative swap to their mirror, and a short
  // unperturbed pass restores optimality.
  Status phase_two() {
    if (!prob_.mirrored || opt_.perturbation <= 0) return iterate(/*phase=*/2);
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(idx(rows_));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (is_artificial(basis_[i])) continue;
      const double u = static_cast<double>((0x9E3779B97F4A7C15ull * (i + 1)) >> 11) * 0x1.0p-53;
      shift += column(basis_[i]) * (opt_.perturbation * scale_ * (1.0 + u));
    }
    rhs_ = prob_.rhs + shift;
    refactor();
    const Status s = iterate(/*phase=*/2);
    rhs_ = prob_.rhs;
    refactor();
    if (s != Status::optimal) return s;
    bool flipped = false;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i]) && values_[idx(i)] < 0) {
        basis_[i] = basis_[i] >= n_ ? basis_[i] - n_ : basis_[i] + n_;
        flipped = true;
      }
    }
    if (flipped) refactor();
    return iterate(/*phase=*/2);
  }

  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  // Any nonsingular basis is primal feasible for split free variables once each
  // basic column takes the sign of its value, so phase one can be skipped.
  bool try_warm_start(const std::vector<std::size_t>& warm) {
    if (warm.size() != rows_) return false;
    std::vector<bool> used(n_, false);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (warm[i] == no_column) {
        basis_[i] = structural_ + i;
        continue;
      }
      if (warm[i] >= n_ || used[warm[i]]) return false;
      used[warm[i]] = true;
      basis_[i] = warm[i];
    }
    try {
      refactor();
    } catch (const std::runtime_error&) {
      return false;
    }
    bool flipped = false;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double v = values_[idx(i)];
      if (is_artificial(basis_[i])) {
        if (std::abs(v) > opt_.feasibility_tol * scale_) return false;
      } else if (v < 0) {
        basis_[i] += n_;
        flipped = true;
      }
    }
    if (flipped) refactor();
    return true;
  }

  double column_dot(std::size_t var, const Eigen::VectorXd& y) const {
    const double d = prob_.columns.col(idx(var % n_)).dot(y);
    return var >= n_ ? -d : d;
  }

  bool is_artificial(std::size_t var) const { return var >= structural_; }

  Eigen::VectorXd column(std::size_t var) const {
    if (is_artificial(var)) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(idx(rows_));
      e[idx(var - structural_)] = artificial_sign_[idx(var - structural_)];
      return e;
    }
    const std::size_t j = var % n_;
    Eigen::VectorXd c = prob_.columns.col(idx(j));
    if (var >= n_) c = -c;
    return c;
  }

  double cost(std::size_t var, int phase) const {
    if (phase == 1) return is_artificial(var) ? 1.0 : 0.0;
    return is_artificial(var) ? 0.0 : prob_.cost[idx(var % n_)];
  }

  void refactor() {
    Eigen::MatrixXd b(idx(rows_), idx(rows_));
    for (std::size_t i = 0; i < rows_; ++i) b.col(idx(i)) = column(basis_[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) throw std::runtime_error("lp: singular basis");
    inverse_ = lu.inverse();
    values_ = inverse_ * rhs_;
    for (auto& v : values_) {
      if (v < 0 && v > -opt_.feasibility_tol * scale_) v = 0;
    }
    since_refactor_ = 0;
  }

  double phase_one_infeasibility() const {
    double total = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (is_artificial(basis_[i])) total += std::abs(values_[idx(i)]);
    }
    return total;
  }

  double objective(int phase) const {
    double total = 0;
    for (std::size_t i = 0; i < rows_; ++i) total += cost(basis_[i], phase) * values_[idx(i)];
    return total;
  }

  // Entering variable, or structural_ + rows_ when optimal. Artificials that
  // left the basis never re-enter.
  //
  // Outside Bland mode a full pass keeps the most negative reduced costs as a
  // candidate list; later calls price only that list until it runs dry.
  std::size_t price(int phase, bool bland) {
    Eigen::VectorXd cb(idx(rows_));
    for (std::size_t i = 0; i < rows_; ++i) cb[idx(i)] = cost(basis_[i], phase);
    const Eigen::VectorXd y = inverse_.transpose() * cb;
    const std::size_t none = structural_ + rows_;

    if (!bland && !candidates_.empty()) {
      std::size_t best = none;
      double best_d = -opt_.optimality_tol;
      for (std::size_t var : candidates_) {
        if (in_basis_[var]) continue;
        const double d = cost(var, phase) - column_dot(var, y);
        if (d < best_d) {
          best = var;
          best_d = d;
        }
      }
      if (best != none) return best;
      candidates_.clear();
    }

    ++pricing_passes_;
    const Eigen::VectorXd w = prob_.columns.transpose() * y;
    std::vector<std::pair<double, std::size_t>> improving;
    for (std::size_t var = 0; var < structural_; ++var) {
      if (in_basis_[var]) continue;
      const std::size_t j = var % n_;
      const double wj = var >= n_ ? -w[idx(j)] : w[idx(j)];
      const double d = cost(var, phase) - wj;
      if (d < -opt_.optimality_tol) {
        if (bland) return var;
        improving.emplace_back(d, var);
      }
    }
    if (improving.empty()) return none;
    const std::size_t keep = std::min(improving.size(), std::max<std::size_t>(1, opt_.candidate_list));
    std::partial_sort(improving.begin(), improving.begin() + static_cast<std::ptrdiff_t>(keep), improving.end());
    candidates_.clear();
    for (std::size_t i = 0; i < keep; ++i) candidates_.push_back(improving[i].second);
    return candidates_.front();
  }

  Status iterate(int phase) {
    candidates_.clear();
    in_basis_.assign(structural_, false);
    for (std::size_t v : basis_) {
      if (!is_artificial(v)) in_basis_[v] = true;
    }
    bool bland = false;
    std::size_t stall = 0;
    double last_obj = objective(phase);
    while (true) {
      if (iterations_ >= opt_.max_iterations) return Status::iteration_limit;
      const std::size_t entering = price(phase, bland);
      if (entering == structural_ + rows_) return Status::optimal;

      const Eigen::VectorXd alpha = inverse_ * column(entering);
      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_pivot = 0;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = alpha[idx(i)];
        double ratio;
        if (phase == 2 && is_artificial(basis_[i])) {
          // Artificials left in redundant rows are fixed at zero.
          if (std::abs(a) <= opt_.pivot_tol) continue;
          ratio = 0.0;
        } else {
          if (a <= opt_.pivot_tol) continue;
          ratio = std::max(0.0, values_[idx(i)]) / a;
        }
        const bool better = ratio < best_ratio - 1e-12;
        const bool tie = !better && ratio <= best_ratio + 1e-12;
        if (better || (tie && (bland ? basis_[i] < basis_[leave] : std::abs(a) > best_pivot))) {
          leave = i;
          best_ratio = ratio;
          best_pivot = std::abs(a);
        }
      }
      if (leave == rows_) return Status::unbounded;
      pivot(entering, leave, alpha);
      ++iterations_;

      const double obj = objective(phase);
      if (obj < last_obj - 1e-12 * std::max(1.0, std::abs(last_obj))) {
        stall = 0;
        bland = false;
        last_obj = obj;
      } else if (++stall > opt_.stall_limit) {
        bland = true;
      }
    }
  }

  void pivot(std::size_t entering, std::size_t leave, const Eigen::VectorXd& alpha) {
    const double a = alpha[idx(leave)];
    const double theta = values_[idx(leave)] / a;
    inverse_.row(idx(leave)) /= a;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == leave) continue;
      const double f = alpha[idx(i)];
      if (f != 0.0) {
        inverse_.row(idx(i)) -= f * inverse_.row(idx(leave));
        values_[idx(i)] -= f * theta;
        if (values_[idx(i)] < 0 && values_[idx(i)] > -opt_.feasibility_tol * scale_) values_[idx(i)] = 0;
      }
    }
    values_[idx(leave)] = theta;
    if (!is_artificial(basis_[leave])) in_basis_[basis_[leave]] = false;
    basis_[leave] = entering;
    in_basis_[entering] = true;
    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }

  void drive_out_artificials() {
    in_basis_.assign(structural_, false);
    for (std::size_t v : basis_) {
      if (!is_artificial(v)) in_basis_[v] = true;
    }
    for (std::size_t row = 0; row < rows_; ++row) {
      if (!is_artificial(basis_[row])) continue;
      const Eigen::VectorXd g = inverse_.row(idx(row)).transpose();
      const Eigen::VectorXd w = prob_.columns.transpose() * g;
      std::size_t best = n_;
      double best_abs = 1e-7;
      for (std::size_t j = 0; j < n_; ++j) {
        if (in_basis_[j] || (prob_.mirrored && in_basis_[j + n_])) continue;
        if (std::abs(w[idx(j)]) > best_abs) {
          best = j;
          best_abs = std::abs(w[idx(j)]);
        }
      }
      if (best == n_) continue;  // redundant row
      const Eigen::VectorXd alpha = inverse_ * column(best);
      pivot(best, row, alpha);
    }
    refactor();
  }

  Solution finish(Status s) {
    Solution sol;
    sol.iterations = iterations_;
    sol.pricing_passes = pricing_passes_;
    sol.status = s;
    if (s == Status::optimal || s == Status::iteration_limit) {
      refactor();
      sol.x = Eigen::VectorXd::Zero(idx(n_));
      for (std::size_t i = 0; i < rows_; ++i) {
        const std::size_t var = basis_[i];
        if (is_artificial(var)) continue;
        const double v = std::max(0.0, values_[idx(i)]);
        sol.x[idx(var % n_)] += var >= n_ ? -v : v;
      }
      sol.residual = (prob_.columns * sol.x - prob_.rhs).lpNorm<Eigen::Infinity>();
      sol.objective = prob_.mirrored ? prob_.cost.dot(sol.x.cwiseAbs()) : prob_.cost.dot(sol.x);
      sol.basis.reserve(rows_);
      for (std::size_t var : basis_) sol.basis.push_back(is_artificial(var) ? no_column : var % n_);
      if (s == Status::optimal && sol.residual > 1e3 * opt_.feasibility_tol * scale_) {
        sol.status = Status::numerical_failure;
      }
    }
    return sol;
  }

  ProblemView prob_;
  Options opt_;
  std::size_t rows_;
  std::size_t n_;
  std::size_t structural_;
  double scale_ = 1.0;
  Eigen::VectorXd artificial_sign_;
  Eigen::VectorXd rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<std::size_t> candidates_;
  Eigen::MatrixXd inverse_;
  Eigen::VectorXd values_;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
  std::size_t pricing_passes_ = 0;
};

}  // namespace detail

/// `warm_basis`, typically Solution::basis of a nearby problem, lets a
/// mirrored problem start directly in phase two. Unusable bases are ignored.
inline Solution solve(const ProblemView& problem, const Options& options = {},
                      const std::vector<std::size_t>* warm_basis = nullptr) {
  return detail::RevisedSimplex(problem, options).run(warm_basis);
}

inline Solution solve(const Problem& problem, const Options& options = {}) {
  return solve(ProblemView{problem.columns, problem.rhs, problem.cost, problem.mirrored}, options);
}

}  // namespace magicscope::lp
