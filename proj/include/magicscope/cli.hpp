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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magicscope/errors.hpp"
#include "magicscope/io.hpp"
#include "magicscope/oracle.hpp"
#include "magicscope/parallel.hpp"
#include "magicscope/polytope.hpp"
#include "magicscope/rom.hpp"
#include "magicscope/spinchain.hpp"
#include "magicscope/sweep.hpp"

namespace magicscope::cli {

enum ExitCode : int { success = 0, usage_error = 1, parse_error = 2, inconsistent_data = 3, solver_failure = 4 };

struct GlobalOptions {
  unsigned threads = 0;
  double lp_tol = Tolerances{}.lp;
  double decision_tol = Tolerances{}.decision;
  std::uint64_t seed = 1;

  Tolerances tolerances() const {
    Tolerances t;
    t.lp = lp_tol;
    t.decision = decision_tol;
    return t;
  }
};

namespace detail {

inline MeasurementSet load_measurements(const std::string& path) {
  std::istringstream in(io::read_file(path));
  return parse_measurement_file(in);
}

// Writes to `path`, or to `fallback` when path is empty.
inline void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw FileError("cannot write '" + path + "'");
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct PolytopeArgs {
  std::string measurements;
  std::string out;
  std::string format = "json";
  bool verbose = false;
};

inline int cmd_polytope(const PolytopeArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const MeasurementSet m = load_measurements(a.measurements);
  PolytopeOptions po;
  po.threads = resolve_thread_count(g.threads);
  po.verbose = a.verbose ? &err : nullptr;
  const VertexSet vs = v_representation(m, po);
  write_output(a.out, a.format == "txt" ? vertices_to_text(vs) : io::vertices_to_json(m, vs), out);
  err << "vertices: " << vs.size() << "\n"
      << "maximal independent sets: " << vs.independent_set_count << "\n"
      << "elapsed: " << std::fixed << std::setprecision(3) << seconds_since(t0) << " s\n";
  return success;
}

struct RomArgs {
  std::string measurements;
  std::string expectations;
  std::string out;
  double delta = 0.1;
  double epsilon = 0.05;
};

inline int cmd_rom(const RomArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  const MeasurementSet m = load_measurements(a.measurements);
  const Tolerances tol = g.tolerances();
  const ExpectationVector b(io::parse_expectations(io::read_file(a.expectations), m), tol.input);
  PolytopeOptions po;
  po.threads = resolve_thread_count(g.threads);
  const RomProblem lp(v_representation(m, po), tol);
  const RomResult r = lp.rom(b);

  nlohmann::ordered_json j;
  j["status"] = to_string(r.status);
  j["vertices"] = lp.vertex_count();
  int code = success;
  if (r.status == RomStatus::optimal) {
    const bool inside = lp.contains(b);
    j["rom"] = r.rom;
    j["negativity"] = r.negativity;
    j["member"] = r.member;
    j["witnessed"] = !inside;
    j["message"] = inside ? "consistent with a stabilizer state on M (not a certificate of stabilizerness)"
                          : "nonstabilizerness witnessed";
    j["sample_bound"] = sample_complexity(r.rom, a.delta, a.epsilon);
    j["delta"] = a.delta;
    j["epsilon"] = a.epsilon;
  } else if (r.status == RomStatus::infeasible) {
    j["message"] = "expectations lie outside the affine hull of the reduced polytope";
    code = inconsistent_data;
  } else {
    j["message"] = "linear program lost numerical accuracy";
    code = solver_failure;
  }
  write_output(a.out, j.dump(2) + "\n", out);
  return code;
}

struct ScanArgs {
  std::string model;
  std::size_t n = 0;
  std::string grid;
  std::string measurements = "first-cell";
  std::string out;
  bool open = false;
  bool resume = false;
  std::vector<std::string> fixed;
};

// Number of complete data rows already in `path` under `header`; trims a torn last line.
inline std::size_t completed_rows(const std::string& path, const std::string& header) {
  if (!std::filesystem::exists(path)) return 0;
  std::string text = io::read_file(path);
  if (text.empty()) return 0;
  if (const auto last_nl = text.rfind('\n'); last_nl != text.size() - 1) {
    text.erase(last_nl == std::string::npos ? 0 : last_nl + 1);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text)) throw FileError("cannot rewrite '" + path + "'");
  }
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return 0;
  if (line != header) throw ParseError("cannot resume '" + path + "': its header does not match this scan");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  return rows;
}

inline int cmd_scan(const ScanArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  SpinChainSpec spec;
  spec.model = parse_model(a.model);
  spec.n = a.n;
  spec.boundary = a.open ? Boundary::open : Boundary::periodic;
  for (const auto& f : a.fixed) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ParseError("--param expects name=value, got '" + f + "'");
    try {
      std::size_t used = 0;
      const std::string value = f.substr(eq + 1);
      spec.params[f.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ParseError("--param value in '" + f + "' is not a number");
    }
  }
  spec.validate();
  const auto axes = parse_grid(a.grid, spec.model);

  MeasurementSet m;
  if (a.measurements == "first-cell") {
    m = hamiltonian_measurement_set(spec, MeasurementScope::first_cell);
  } else if (a.measurements == "all-terms") {
    m = hamiltonian_measurement_set(spec, MeasurementScope::all_terms);
  } else {
    m = load_measurements(a.measurements);
    if (m.num_qubits() != spec.n) {
      throw ParseError("measurement file acts on " + std::to_string(m.num_qubits()) + " qubits, --n is " +
                       std::to_string(spec.n));
    }
  }

  const std::string header = sweep_csv_header(spec.model, m);
  std::size_t first = 0;
  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty()) {
    first = a.resume ? completed_rows(a.out, header) : 0;
    file.open(a.out, std::ios::binary | (first > 0 ? std::ios::app : std::ios::trunc));
    if (!file) throw FileError("cannot write '" + a.out + "'");
    sink = &file;
  }
  if (first == 0) *sink << header << "\n";

  SweepOptions so;
  so.threads = resolve_thread_count(g.threads);
  so.tolerances = g.tolerances();
  so.eigen.seed = g.seed;
  std::size_t rows = 0, failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  run_sweep(spec, axes, m, so, [&](const SweepRecord& r) {
    *sink << sweep_csv_row(r, m.size()) << "\n";
    sink->flush();
    ++rows;
    failed += !r.ok();
  }, first);
  if (!*sink) throw FileError("write to scan output failed");
  err << "rows written: " << rows << " (skipped " << first << " already present), failed: " << failed << "\n"
      << "elapsed: " << std::fixed << std::setprecision(3) << seconds_since(t0) << " s\n";
  return failed ? solver_failure : success;
}

struct OracleArgs {
  std::string check;
  std::size_t n = 2;
  std::size_t trials = 50;
};

inline std::string vector_text(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s + ")";
}

inline std::string measurement_text(const MeasurementSet& m) {
  std::string s = "{";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ", " : "") + format_pauli(m[i]);
  return s + "}";
}

inline int cmd_oracle(const OracleArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream&) {
  constexpr std::size_t cap = 3;
  if (a.n < 1 || a.n > cap) {
    throw std::invalid_argument("--check " + a.check + " supports --n from 1 to " + std::to_string(cap));
  }
  std::mt19937_64 rng(g.seed);
  std::size_t trials = a.check == "counts" ? 1 : a.trials;
  std::size_t passed = 0;
  const Tolerances tol = g.tolerances();
  auto random_set = [&] {
    const std::size_t max_m = std::min<std::size_t>(6, 2 * ((std::size_t{1} << (2 * a.n)) - 1));
    return oracle::random_measurement_set(a.n, 2 + rng() % (max_m - 1), rng);
  };

  for (std::size_t t = 0; t < trials; ++t) {
    if (a.check == "counts") {
      const std::size_t found = oracle::enumerate_stabilizer_groups(a.n).size();
      const std::uint64_t expected = stabilizer_state_count(a.n);
      out << "n=" << a.n << " expected=" << expected << " found=" << found << "\n";
      passed += found == expected;
    } else if (a.check == "hulls") {
      const auto m = random_set();
      const auto bottom = v_representation(m);
      const auto top = oracle::topdown_vertices(m);
      if (oracle::hull_equal(oracle::to_points(bottom.vertices), oracle::to_points(top), tol.decision)) {
        ++passed;
      } else {
        out << "counterexample: trial=" << t << " M=" << measurement_text(m) << "\n" << vertices_to_text(bottom);
      }
    } else if (a.check == "rom-bound") {
      const auto m = random_set();
      const auto psi = random_state(a.n, rng);
      const double reduced = reduced_rom(v_representation(m), ExpectationVector(expectations(psi, m)), tol).rom;
      const double full = oracle::full_rom(oracle::pauli_table(psi), tol.lp);
      if (reduced <= full + 1e-6) {
        ++passed;
      } else {
        out << "counterexample: trial=" << t << " M=" << measurement_text(m) << " reduced=" << format_number(reduced)
            << " full=" << format_number(full) << " b=" << vector_text(expectations(psi, m)) << "\n";
      }
    } else if (a.check == "lemma1") {
      const auto m = random_set();
      const auto base = v_representation(m);
      const auto padded = v_representation(m.padded(a.n + 2));
      if (vertices_to_text(base) == vertices_to_text(padded) && base.contexts == padded.contexts) {
        ++passed;
      } else {
        out << "counterexample: trial=" << t << " M=" << measurement_text(m) << "\n";
      }
    }
  }
  const bool ok = passed == trials;
  out << "check=" << a.check << " n=" << a.n << " trials=" << trials << " passed=" << passed
      << " result=" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? success : inconsistent_data;
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced stabilizer polytopes, reduced robustness of magic and spin-chain scans", "magicscope"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores; MAGICSCOPE_THREADS overrides)");
  app.add_option("--lp-tol", g.lp_tol, "LP primal feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--decision-tol", g.decision_tol, "Membership tolerance: rom <= 1 + tol")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random trials and eigensolver start vectors");

  detail::PolytopeArgs pa;
  auto* polytope = app.add_subcommand("polytope", "Vertices of the reduced stabilizer polytope");
  polytope->add_option("measurements", pa.measurements, "Measurement file")->required()->check(CLI::ExistingFile);
  polytope->add_option("--out", pa.out, "Output path (default: stdout)");
  polytope->add_option("--format", pa.format, "json or txt")->check(CLI::IsMember({"json", "txt"}));
  polytope->add_flag("--verbose", pa.verbose, "Report independent sets without admissible signs");

  detail::RomArgs ra;
  auto* rom = app.add_subcommand("rom", "Reduced robustness of magic and membership verdict");
  rom->add_option("measurements", ra.measurements, "Measurement file")->required()->check(CLI::ExistingFile);
  rom->add_option("expectations", ra.expectations, "Expectation file")->required()->check(CLI::ExistingFile);
  rom->add_option("--out", ra.out, "Output path (default: stdout)");
  rom->add_option("--delta", ra.delta, "Additive error for the sample bound")->check(CLI::PositiveNumber);
  rom->add_option("--epsilon", ra.epsilon, "Failure probability for the sample bound")->check(CLI::Range(1e-300, 2.0));

  detail::ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Sweep a spin-chain parameter grid");
  scan->add_option("--model", sa.model, "tfim, annni or xxz")->required()->check(CLI::IsMember({"tfim", "annni", "xxz"}));
  scan->add_option("--n", sa.n, "Number of qubits")->required()->check(CLI::Range(min_chain_qubits, max_chain_qubits));
  scan->add_option("--grid", sa.grid, "name=start:stop:steps[,...]")->required();
  scan->add_option("--measurements", sa.measurements, "first-cell, all-terms or a measurement file");
  scan->add_option("--param", sa.fixed, "Fixed coupling name=value (repeatable)");
  scan->add_option("--out", sa.out, "CSV output path (default: stdout)");
  scan->add_flag("--open", sa.open, "Open boundary (default periodic)");
  scan->add_flag("--resume", sa.resume, "Skip grid rows already present in --out");

  detail::OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "Brute-force consistency checks");
  orc->add_option("--check", oa.check, "counts, hulls, rom-bound or lemma1")
      ->required()
      ->check(CLI::IsMember({"counts", "hulls", "rom-bound", "lemma1"}));
  orc->add_option("--n", oa.n, "Number of qubits");
  orc->add_option("--trials", oa.trials, "Random trials")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? success : usage_error;
  }
  if (scan->parsed() && sa.resume && sa.out.empty()) {
    err << "error: --resume needs --out\n";
    return usage_error;
  }

  try {
    if (polytope->parsed()) return detail::cmd_polytope(pa, g, out, err);
    if (rom->parsed()) return detail::cmd_rom(ra, g, out, err);
    if (scan->parsed()) return detail::cmd_scan(sa, g, out, err);
    return detail::cmd_oracle(oa, g, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const MeasurementSetError& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (const InconsistentDataError& e) {
    err << "inconsistent data: " << e.what() << "\n";
    return inconsistent_data;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return solver_failure;
  } catch (const FileError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return solver_failure;
  }
}

}  // namespace magicscope::cli
