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
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "magicscope/errors.hpp"
#include "magicscope/parallel.hpp"
#include "magicscope/polytope.hpp"
#include "magicscope/rom.hpp"
#include "magicscope/spinchain.hpp"

namespace magicscope {

/// `steps` evenly spaced values from start to stop inclusive.
struct GridAxis {
  std::string name;
  double start = 0;
  double stop = 0;
  std::size_t steps = 1;

  double value(std::size_t i) const {
    if (steps == 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

/// Parses "name=start:stop:steps[,name=start:stop:steps...]".
inline std::vector<GridAxis> parse_grid(const std::string& text, Model model) {
  if (text.empty()) throw ParseError("empty grid specification");
  const auto names = parameter_names(model);
  std::vector<GridAxis> axes;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("grid axis '" + item + "' must look like name=start:stop:steps");
    GridAxis axis;
    axis.name = item.substr(0, eq);
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      throw ParseError("model " + std::string(to_string(model)) + " has no parameter '" + axis.name + "'");
    }
    for (const auto& a : axes) {
      if (a.name == axis.name) throw ParseError("grid axis '" + axis.name + "' given twice");
    }
    std::vector<std::string> parts;
    std::stringstream fields(item.substr(eq + 1));
    std::string f;
    while (std::getline(fields, f, ':')) parts.push_back(f);
    if (parts.size() != 3) throw ParseError("grid axis '" + item + "' must have start:stop:steps");
    try {
      std::size_t used = 0;
      axis.start = std::stod(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("trailing");
      axis.stop = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("trailing");
      const long long steps = std::stoll(parts[2], &used);
      if (used != parts[2].size() || steps < 1) throw std::invalid_argument("steps");
      axis.steps = static_cast<std::size_t>(steps);
    } catch (const std::exception&) {
      throw ParseError("grid axis '" + item + "' has malformed numbers (steps must be a positive integer)");
    }
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) throw ParseError("grid axis '" + item + "' is not finite");
    axes.push_back(axis);
  }
  return axes;
}

inline std::size_t grid_size(const std::vector<GridAxis>& axes) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.steps;
  return total;
}

/// Parameter values at grid index i; the last axis varies fastest.
inline std::map<std::string, double> grid_point(const std::vector<GridAxis>& axes, std::size_t i) {
  std::map<std::string, double> out;
  for (std::size_t a = axes.size(); a-- > 0;) {
    out[axes[a].name] = axes[a].value(i % axes[a].steps);
    i /= axes[a].steps;
  }
  return out;
}

struct SweepRecord {
  std::size_t index = 0;
  SpinChainSpec spec;
  double energy = std::numeric_limits<double>::quiet_NaN();
  double gap_estimate = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> expectations;
  double rom = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  /// "ok", or a short failure description.
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct SweepOptions {
  unsigned threads = 1;
  EigenOptions eigen;
  Tolerances tolerances;
  /// Grid points solved in sequence by one worker, each LP warm-started from
  /// the previous one. Chains never cross a row of the last axis.
  std::size_t chain_length = 32;
};

/// Solves every grid point from `first` on with a single shared polytope and
/// hands records to `emit` in grid order. Failures are recorded per point.
inline void run_sweep(const SpinChainSpec& base, const std::vector<GridAxis>& axes, const MeasurementSet& measurements,
                      const SweepOptions& options, const std::function<void(const SweepRecord&)>& emit,
                      std::size_t first = 0) {
  if (measurements.num_qubits() != base.n) {
    throw std::invalid_argument("measurement set acts on " + std::to_string(measurements.num_qubits()) +
                                " qubits, chain has " + std::to_string(base.n));
  }
  base.validate();
  PolytopeOptions po;
  po.threads = options.threads;
  const RomProblem lp(v_representation(measurements, po), options.tolerances);

  const std::size_t total = grid_size(axes);
  const std::size_t row = axes.empty() ? 1 : axes.back().steps;
  std::vector<std::pair<std::size_t, std::size_t>> chains;
  for (std::size_t i = first; i < total;) {
    const std::size_t row_end = (i / row + 1) * row;
    const std::size_t end = std::min({row_end, total, i + std::max<std::size_t>(1, options.chain_length)});
    chains.emplace_back(i, end);
    i = end;
  }

  auto solve_chain = [&](std::size_t c, std::vector<SweepRecord>& out) {
    std::vector<std::size_t> basis;
    for (std::size_t i = chains[c].first; i < chains[c].second; ++i) {
      SweepRecord rec;
      rec.index = i;
      rec.spec = base;
      for (const auto& [name, value] : grid_point(axes, i)) rec.spec.params[name] = value;
      try {
        const auto gs = ground_state(build_hamiltonian(rec.spec), options.eigen);
        rec.energy = gs.energy;
        rec.gap_estimate = gs.gap_estimate;
        rec.degenerate = gs.degenerate;
        rec.expectations = expectations(gs.state, measurements);
      } catch (const SolverError& e) {
        rec.status = std::string("eigensolver_failed: ") + e.what();
        out.push_back(std::move(rec));
        continue;
      }
      const auto r = lp.rom(ExpectationVector(rec.expectations, options.tolerances.input), basis.empty() ? nullptr : &basis);
      if (r.status == RomStatus::optimal) {
        rec.rom = r.rom;
        basis = r.basis;
      } else {
        rec.status = std::string("lp_") + to_string(r.status);
        basis.clear();
      }
      out.push_back(std::move(rec));
    }
  };

  const std::size_t workers = std::max(1u, resolve_thread_count(options.threads));
  for (std::size_t batch = 0; batch < chains.size(); batch += workers) {
    const std::size_t count = std::min(workers, chains.size() - batch);
    std::vector<std::vector<SweepRecord>> results(count);
    parallel_for(count, options.threads, [&](std::size_t k) { solve_chain(batch + k, results[k]); });
    for (const auto& chain : results) {
      for (const auto& rec : chain) emit(rec);
    }
  }
}

/// Fixed numeric formatting so identical runs give identical files.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline std::string sweep_csv_header(Model model, const MeasurementSet& measurements) {
  std::string h = "model,n,boundary";
  for (const auto& p : parameter_names(model)) h += "," + p;
  h += ",energy,gap_estimate";
  for (const auto& p : measurements) h += "," + compact_label(p);
  h += ",rom,degenerate_flag,solver_status";
  return h;
}

/// `m` is the measurement count; failed rows without expectations get nan columns.
inline std::string sweep_csv_row(const SweepRecord& r, std::size_t m) {
  std::string line = std::string(to_string(r.spec.model)) + "," + std::to_string(r.spec.n) + "," +
                     to_string(r.spec.boundary);
  for (const auto& p : parameter_names(r.spec.model)) line += "," + format_number(r.spec.param(p));
  line += "," + format_number(r.energy) + "," + format_number(r.gap_estimate);
  for (std::size_t i = 0; i < m; ++i) {
    line += "," + format_number(i < r.expectations.size() ? r.expectations[i] : std::numeric_limits<double>::quiet_NaN());
  }
  line += "," + format_number(r.rom) + "," + (r.degenerate ? "1" : "0") + ",";
  std::string status = r.status;
  std::replace(status.begin(), status.end(), ',', ';');
  std::replace(status.begin(), status.end(), '\n', ' ');
  return line + status;
}

}  // namespace magicscope
