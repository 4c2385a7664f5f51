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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magicscope/oracle.hpp"
#include "magicscope/polytope.hpp"
#include "magicscope/rom.hpp"
#include "magicscope/spinchain.hpp"
#include "magicscope/state.hpp"
#include "magicscope/sweep.hpp"

using namespace magicscope;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds
  std::function<Verdict()> check;
};

// Collects failed sub-checks without stopping at the first one.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failures_.size() < 5) failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  Verdict verdict() const {
    Verdict v;
    v.pass = failed_ == 0;
    std::ostringstream out;
    out << (total_ - failed_) << "/" << total_ << " checks";
    if (!notes_.empty()) out << "; " << notes_;
    for (const auto& f : failures_) out << "\n      failed: " << f;
    v.detail = out.str();
    return v;
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::set<std::vector<int>> vertex_points(const VertexSet& vs) {
  std::set<std::vector<int>> out;
  for (const auto& v : vs.vertices) out.insert(std::vector<int>(v.coords.begin(), v.coords.end()));
  return out;
}

MeasurementSet marginal_set(std::size_t n) {
  std::vector<PauliString> out;
  for (std::size_t q = 0; q < n; ++q) {
    for (char c : {'X', 'Y', 'Z'}) {
      std::string s(n, 'I');
      s[q] = c;
      out.push_back(PauliString::from_letters(s));
    }
  }
  return MeasurementSet(out);
}

double rom_of(const MeasurementSet& m, const StateVector& psi) {
  return reduced_rom(v_representation(m), ExpectationVector(expectations(psi, m))).rom;
}

// Random sets shared by the hull and padding criteria.
struct RandomCase {
  std::size_t n;
  MeasurementSet m;
};
const std::vector<RandomCase>& random_cases() {
  static const std::vector<RandomCase> cases = [] {
    std::mt19937_64 rng(2024);
    std::vector<RandomCase> out;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + rng() % 3;
      const std::size_t m = 2 + rng() % 5;
      out.push_back({n, oracle::random_measurement_set(n, m, rng)});
    }
    return out;
  }();
  return cases;
}

Verdict golden_set() {
  Checker c;
  auto expect_points = [&](const std::string& text, std::set<std::vector<int>> expected) {
    c.expect(vertex_points(v_representation(parse_measurement_text(text))) == expected, "vertices of {" + text + "}");
  };
  expect_points("Z\n", {{1}, {-1}});
  expect_points("ZI\nIZ\n", {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  expect_points("X\nZ\n", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  expect_points("ZZ\nXI\n", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  expect_points("Z\n-Z\n", {{1, -1}, {-1, 1}});
  expect_points("X\nY\nZ\n", {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  return c.verdict();
}

Verdict size_bound_tightness() {
  Checker c;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto vs = v_representation(marginal_set(n));
    const std::size_t expected = static_cast<std::size_t>(std::llround(std::pow(2.0, n) * std::pow(3.0, n)));
    c.expect(vs.size() == expected, "n=" + std::to_string(n) + " gave " + std::to_string(vs.size()));
    c.note("n=" + std::to_string(n) + ": " + std::to_string(vs.size()));
  }
  return c.verdict();
}

Verdict hull_equivalence() {
  Checker c;
  std::size_t index = 0;
  for (const auto& rc : random_cases()) {
    const auto bottom = oracle::to_points(v_representation(rc.m).vertices);
    const auto top = oracle::to_points(oracle::topdown_vertices(rc.m));
    c.expect(oracle::hull_equal(bottom, top, 1e-7), "set " + std::to_string(index));
    ++index;
  }
  return c.verdict();
}

Verdict padding_invariance() {
  Checker c;
  std::size_t index = 0;
  for (const auto& rc : random_cases()) {
    const auto base = v_representation(rc.m);
    const auto padded = v_representation(rc.m.padded(rc.n + 2));
    c.expect(vertices_to_text(base) == vertices_to_text(padded) && base.contexts == padded.contexts,
             "set " + std::to_string(index));
    ++index;
  }
  return c.verdict();
}

Verdict stabilizer_counts() {
  Checker c;
  const std::size_t expected[] = {0, 6, 60, 1080};
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t found = oracle::enumerate_stabilizer_groups(n).size();
    c.expect(found == expected[n] && found == stabilizer_state_count(n), "n=" + std::to_string(n));
    c.note("n=" + std::to_string(n) + ": " + std::to_string(found));
  }
  return c.verdict();
}

Verdict magic_state_values() {
  Checker c;
  const auto m = parse_measurement_text("X\nY\nZ\n");
  const double r3 = 1 / std::sqrt(3.0), r2 = 1 / std::sqrt(2.0);
  struct Case {
    const char* name;
    StateVector psi;
    double expected;
  };
  for (const auto& [name, psi, expected] :
       {Case{"T", bloch_state(r3, r3, r3), std::sqrt(3.0)}, Case{"H", bloch_state(r2, 0, r2), std::sqrt(2.0)}}) {
    const double reduced = rom_of(m, psi);
    const double full = oracle::full_rom(oracle::pauli_table(psi));
    c.expect(std::abs(reduced - expected) <= 1e-6, std::string(name) + " reduced " + fmt(reduced, 12));
    c.expect(std::abs(full - reduced) <= 1e-6, std::string(name) + " full " + fmt(full, 12));
    c.note(std::string(name) + ": reduced " + fmt(reduced, 10) + ", full " + fmt(full, 10));
  }
  return c.verdict();
}

Verdict monotone_properties() {
  Checker c;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0, 1);
  const Tolerances tol;
  std::size_t members = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const auto m = oracle::random_measurement_set(n, 2 + rng() % 5, rng);
    // Every fourth state is a stabilizer state so both membership outcomes occur.
    StateVector psi;
    if (t % 4 == 0) {
      const auto& groups = oracle::stabilizer_groups(n);
      psi = oracle::stabilizer_state(groups[rng() % groups.size()]);
    } else {
      psi = random_state(n, rng);
    }
    const auto vs = v_representation(m);
    const RomProblem lp(vs, tol);
    const auto b = expectations(psi, m);
    const double rom = lp.rom(ExpectationVector(b)).rom;
    const std::string tag = "trial " + std::to_string(t);

    c.expect(rom >= 1 - 1e-9, tag + " (a) rom " + fmt(rom, 12));
    const double full = oracle::full_rom(oracle::pauli_table(psi), tol.lp);
    c.expect(rom <= full + 1e-6, tag + " (b) " + fmt(rom, 12) + " > " + fmt(full, 12));

    const bool inside = lp.contains(ExpectationVector(b));
    members += inside;
    c.expect(inside == (rom <= 1 + tol.decision), tag + " (c) rom " + fmt(rom, 12));

    const auto other = random_state(n, rng);
    const double p = unit(rng);
    const auto b2 = expectations(other, m);
    std::vector<double> mix(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mix[i] = p * b[i] + (1 - p) * b2[i];
    const double rom2 = lp.rom(ExpectationVector(b2)).rom;
    const double rom_mix = lp.rom(ExpectationVector(mix)).rom;
    c.expect(rom_mix <= p * rom + (1 - p) * rom2 + 1e-6, tag + " (d)");

    const auto circuit = oracle::random_clifford_circuit(n, 1 + rng() % 8, rng);
    const double moved = rom_of(m, oracle::apply_circuit(circuit, psi));
    const double pulled = rom_of(oracle::conjugate_inverse(m, circuit), psi);
    c.expect(std::abs(moved - pulled) <= 1e-6, tag + " (e) " + fmt(moved, 12) + " vs " + fmt(pulled, 12));

    const double dephased = lp.rom(ExpectationVector(oracle::dephased(m, b))).rom;
    c.expect(dephased <= rom + 1e-6, tag + " (f) " + fmt(dephased, 12) + " > " + fmt(rom, 12));
  }
  c.note(std::to_string(members) + " of 100 states inside their reduced polytope");
  return c.verdict();
}

struct ChainScan {
  std::vector<double> g;
  std::vector<double> rom;
};

ChainScan tfim_scan(std::size_t n, const std::string& grid) {
  SpinChainSpec base;
  base.model = Model::tfim;
  base.n = n;
  const auto m = hamiltonian_measurement_set(base, MeasurementScope::first_cell);
  ChainScan out;
  run_sweep(base, parse_grid(grid, Model::tfim), m, SweepOptions{}, [&](const SweepRecord& r) {
    out.g.push_back(r.spec.param("g"));
    out.rom.push_back(r.ok() ? r.rom : std::nan(""));
  });
  return out;
}

Verdict tfim_reproduction() {
  Checker c;
  double previous_distance = INFINITY;
  for (std::size_t n : {3, 6, 9}) {
    const auto scan = tfim_scan(n, "g=0:2:41");
    const auto far = tfim_scan(n, "g=10:10:1");
    const std::string tag = "n=" + std::to_string(n);
    const auto peak = std::max_element(scan.rom.begin(), scan.rom.end()) - scan.rom.begin();
    const double argmax = scan.g[peak];
    const double distance = std::abs(argmax - 1.0);
    c.expect(std::abs(scan.rom.front() - 1) <= 1e-6, tag + " rom(0)=" + fmt(scan.rom.front(), 10));
    c.expect(scan.rom.back() <= 1 + 1e-3, tag + " rom(2)=" + fmt(scan.rom.back(), 10) + " exceeds 1+1e-3");
    c.expect(far.rom[0] <= 1 + 1e-3, tag + " rom(10)=" + fmt(far.rom[0], 10) + " exceeds 1+1e-3");
    c.expect(argmax >= 0.7 && argmax <= 1.3, tag + " argmax " + fmt(argmax));
    c.expect(distance <= previous_distance + 1e-12, tag + " |argmax-1| grew to " + fmt(distance));
    previous_distance = distance;
    c.note(tag + ": argmax " + fmt(argmax) + ", peak " + fmt(scan.rom[peak]) + ", rom(2) " + fmt(scan.rom.back()) +
           ", rom(10) " + fmt(far.rom[0]));
  }
  return c.verdict();
}

Verdict free_region(Model model, const std::string& grid) {
  Checker c;
  SpinChainSpec base;
  base.model = model;
  base.n = 8;
  const auto m = hamiltonian_measurement_set(base, MeasurementScope::all_terms);
  double worst = 0;
  run_sweep(base, parse_grid(grid, model), m, SweepOptions{}, [&](const SweepRecord& r) {
    std::string tag;
    for (const auto& [k, v] : r.spec.params) tag += k + "=" + fmt(v) + " ";
    c.expect(r.ok() && std::abs(r.rom - 1) <= 1e-6, tag + "rom " + fmt(r.rom, 12) + " status " + r.status);
    worst = std::max(worst, std::abs(r.rom - 1));
  });
  c.note("m=" + std::to_string(m.size()) + ", max |rom-1| " + fmt(worst, 3));
  return c.verdict();
}

Verdict performance_envelope() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto vs = v_representation(marginal_set(4), PolytopeOptions{resolve_thread_count(), nullptr});
  const double polytope_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(vs.size() == 1296, "n=4 marginal set gave " + std::to_string(vs.size()) + " vertices");
  c.expect(polytope_s < 1.0, "n=4 marginal polytope took " + fmt(polytope_s) + " s");

  SpinChainSpec base;
  base.model = Model::annni;
  base.n = 10;
  const auto m = hamiltonian_measurement_set(base, MeasurementScope::all_terms);
  SweepOptions options;
  options.threads = resolve_thread_count();
  std::size_t rows = 0, failed = 0;
  const auto t1 = std::chrono::steady_clock::now();
  run_sweep(base, parse_grid("k=0:1:20,g=0:2:20", Model::annni), m, options, [&](const SweepRecord& r) {
    ++rows;
    failed += !r.ok();
  });
  const double sweep_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  c.expect(rows == 400 && failed == 0, std::to_string(failed) + " of " + std::to_string(rows) + " sweep points failed");
  c.expect(sweep_s < 1800, "20x20 sweep took " + fmt(sweep_s) + " s");
  c.note("polytope " + fmt(polytope_s, 3) + " s; sweep " + fmt(sweep_s, 4) + " s on " +
         std::to_string(options.threads) + " thread(s)");
  return c.verdict();
}

Verdict decision_agreement() {
  Checker c;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> shrink(0.3, 1.0);
  std::size_t inside = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const auto m = oracle::random_measurement_set(n, 2 + rng() % 5, rng);
    auto b = expectations(random_state(n, rng), m);
    const double s = shrink(rng);
    for (double& v : b) v *= s;
    const RomProblem lp(v_representation(m));
    const bool member = lp.rom(ExpectationVector(b)).member;
    const bool contains = lp.contains(ExpectationVector(b));
    inside += contains;
    c.expect(member == contains, "trial " + std::to_string(t));
  }
  c.note(std::to_string(inside) + " of 200 points inside");
  return c.verdict();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "small-polytope golden set", 1, golden_set},
      {2, "size-bound tightness on marginal sets", 1, size_bound_tightness},
      {3, "bottom-up and top-down hulls agree on 50 random sets", 120, hull_equivalence},
      {4, "padding leaves vertex files unchanged", 60, padding_invariance},
      {5, "stabilizer group counts", 60, stabilizer_counts},
      {6, "T and H state robustness on the octahedron", 60, magic_state_values},
      {7, "monotone properties on 100 random states", 600, monotone_properties},
      {8, "TFIM critical peak", 300, tfim_reproduction},
      {9, "ANNNI classical line is free", 300,
       [] { return free_region(Model::annni, "k=0:1:5,g=0:0:1"); }},
      {10, "XXZ ferromagnetic region is free", 300,
       [] { return free_region(Model::xxz, "h=0:0:1,delta=-1.9:-1.1:3"); }},
      {11, "performance envelope", 1800, performance_envelope},
      {12, "membership and rom=1 decisions agree", 300, decision_agreement},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = cr.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > cr.time_limit) {
      v.pass = false;
      v.detail += "; over time limit of " + fmt(cr.time_limit) + " s";
    }
    failures += !v.pass;
    std::printf("criterion %2d %s  %s [%.3f s]\n      %s\n", cr.id, v.pass ? "PASS" : "FAIL", cr.title.c_str(), seconds,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
