// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and runtime budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "golden_strength_b.hpp"
#include "qdarwin/circuit.hpp"
#include "qdarwin/infotheory.hpp"
#include "qdarwin/pipeline.hpp"
#include "qdarwin/sampler.hpp"
#include "qdarwin/tomography.hpp"

using namespace qdarwin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0: no runtime limit
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const StrengthVariant kVariants[] = {StrengthVariant::A, StrengthVariant::B};

std::vector<CountsTable> exact_tables(const StateVector& psi) {
  std::vector<CountsTable> out;
  for (const auto& s : enumerate_settings(psi.n_qubits())) out.push_back({s, 1, exact_probabilities(psi, s)});
  return out;
}

Outcome closed_form_equivalence() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto v : kVariants) {
      const auto cfg = standard_config(n, v);
      const auto closed = theoretical_state(cfg);
      const auto simulated = simulate_statevector(build_darwinism_circuit(cfg));
      for (std::size_t i = 0; i < closed.size(); ++i) worst = std::max(worst, std::abs(closed[i] - simulated[i]));
    }
  return {worst <= 1e-10, "max amplitude difference " + fmt(worst) + " over 10 configurations"};
}

Outcome tomography_round_trip() {
  double worst = 1.0;
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto v : kVariants) {
      const auto psi = theoretical_state(standard_config(n, v));
      const auto report = make_reconstruction_report(reconstruct_from_counts(exact_tables(psi), n),
                                                     DensityMatrix::pure(psi), false);
      worst = std::min(worst, report.fidelity_vs_theory);
    }
  return {worst >= 1.0 - 1e-9, "min fidelity 1 - " + fmt(1.0 - worst) + " for n = 2..6"};
}

Outcome ghz_information() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    RunConfig cfg;
    cfg.qubits = n;
    const auto rows = run_theory(cfg).info.rows;
    for (std::size_t f = 0; f < rows.size(); ++f) {
      const bool whole = f + 1 == rows.size();
      worst = std::max(worst, std::abs(rows[f].mi - (whole ? 2.0 : 1.0)));
      worst = std::max(worst, std::abs(rows[f].holevo - 1.0));
      worst = std::max(worst, std::abs(rows[f].discord - (whole ? 1.0 : 0.0)));
    }
  }
  return {worst <= 1e-9, "max deviation from (MI, chi, D) plateau " + fmt(worst)};
}

Outcome strength_b_curves() {
  double worst = 0.0;
  for (const auto& g : golden::kStrengthB) {
    RunConfig cfg;
    cfg.qubits = g.qubits;
    cfg.variant = StrengthVariant::B;
    const auto& row = run_theory(cfg).info.rows.at(g.fragment - 1);
    worst = std::max({worst, std::abs(row.mi - g.mi), std::abs(row.holevo - g.holevo), std::abs(row.discord - g.discord)});
  }
  return {worst <= 1e-7, "max deviation from oracle " + fmt(worst) + " over " +
                             std::to_string(std::size(golden::kStrengthB)) + " rows"};
}

Outcome shot_noise_convergence() {
  Outcome out;
  std::ostringstream detail;
  for (std::size_t n : {2u, 4u}) {
    const double threshold = n == 2 ? 0.98 : 0.90;
    for (auto v : kVariants) {
      double sum = 0.0;
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RunConfig cfg;
        cfg.qubits = n;
        cfg.variant = v;
        cfg.readout_flip.reset();
        cfg.mitigation = false;
        cfg.seed = seed;
        sum += run_experiment(cfg).unmitigated.fidelity_vs_theory;
      }
      const double mean = sum / 20.0;
      out.pass = out.pass && mean >= threshold;
      detail << n << (v == StrengthVariant::A ? "A" : "B") << " mean F " << fmt(mean) << " (>= " << threshold << ") ";
    }
  }
  out.detail = detail.str();
  return out;
}

Outcome mitigation_trend() {
  Outcome out;
  std::ostringstream detail;
  for (auto v : kVariants) {
    int fidelity_up = 0, purity_up = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      RunConfig cfg;
      cfg.qubits = 2;
      cfg.variant = v;
      cfg.seed = seed;
      const auto r = run_experiment(cfg);
      fidelity_up += r.mitigated->fidelity_vs_theory >= r.unmitigated.fidelity_vs_theory;
      purity_up += r.mitigated->purity_projected >= r.unmitigated.purity_projected;
    }
    out.pass = out.pass && fidelity_up >= 95 && purity_up >= 90;
    detail << "2" << (v == StrengthVariant::A ? "A" : "B") << " fidelity up " << fidelity_up << "/100, purity up "
           << purity_up << "/100 ";
  }
  out.detail = detail.str();
  return out;
}

Outcome stokes_identities() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> basis(0, 2);
  const char names[] = {'X', 'Y', 'Z'};
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(4);
    double total = 0.0;
    for (double& x : p) total += (x = u(rng));
    for (double& x : p) x /= total;
    const std::string label{names[basis(rng)], names[basis(rng)]};
    const CountsTable t{MeasurementSetting::from_label(label), 1, p};
    // S_IO keeps qubit 1 only, S_OI keeps qubit 0 only.
    const double direct_io = (p[0] + p[2]) - (p[1] + p[3]);
    const double direct_oi = (p[0] + p[1]) - (p[2] + p[3]);
    worst = std::max(worst, std::abs(stokes_value(t, 0b01) - direct_io));
    worst = std::max(worst, std::abs(stokes_value(t, 0b10) - direct_oi));
  }
  return {worst <= 1e-12, "max |sign-substitution - marginal| " + fmt(worst) + " over 1000 cases"};
}

Outcome physicality() {
  Outcome out;
  double max_purity = 0.0, min_mi = 1e9;
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto v : kVariants)
      for (std::uint64_t seed = 1; seed <= 3; ++seed)
        for (double noise : {0.02, 0.3}) {
          RunConfig cfg;
          cfg.qubits = n;
          cfg.variant = v;
          cfg.seed = seed;
          cfg.readout_flip = noise;
          const auto r = run_experiment(cfg);
          max_purity = std::max({max_purity, r.unmitigated.purity_projected, r.mitigated->purity_projected});
          for (const auto& report : r.info)
            for (const auto& row : report.rows) min_mi = std::min(min_mi, row.mi);
        }
  const bool projected_ok = max_purity <= 1.0 + 1e-7 && min_mi >= -1e-9;

  // Heavy readout noise, mitigated, unprojected: the inverted confusion
  // matrices amplify shot noise into negative eigenvalues.
  RunConfig raw;
  raw.qubits = 4;
  raw.variant = StrengthVariant::A;
  raw.readout_flip = 0.3;
  raw.seed = 1;
  raw.mode = EntropyMode::Raw;
  const auto r = run_experiment(raw);
  double raw_min = 1e9;
  for (const auto& report : r.info)
    for (const auto& row : report.rows) raw_min = std::min(raw_min, row.mi);
  const bool negative_found = raw_min < -1e-9;

  out.pass = projected_ok && negative_found;
  out.detail = "projected: max purity " + fmt(max_purity) + ", min MI " + fmt(min_mi) +
               "; raw 4A noise 0.3 seed 1: min MI " + fmt(raw_min);
  return out;
}

Outcome determinism() {
  RunConfig cfg;
  cfg.qubits = 4;
  cfg.variant = StrengthVariant::B;
  cfg.seed = 2718;
  bool same = true;
  cfg.workers = 1;
  const auto reference = cmd_experiment(cfg);
  for (std::size_t workers : {1u, 2u, 4u, 8u}) {  // 1 again: plain rerun
    cfg.workers = workers;
    const auto again = cmd_experiment(cfg);
    same = same && again.size() == reference.size();
    for (std::size_t i = 0; same && i < again.size(); ++i)
      same = again[i].name == reference[i].name && again[i].contents == reference[i].contents;
  }
  return {same, "cmd_experiment reruns at 1, 2, 4, 8 workers byte-identical to a 1-worker reference"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form state equals gate simulation", 1.0, closed_form_equivalence},
      {2, "infinite-shot tomography round trip", 30.0, tomography_round_trip},
      {3, "GHZ information values", 0.0, ghz_information},
      {4, "strength-B curves match oracle", 0.0, strength_b_curves},
      {5, "shot-noise convergence at 8192 shots", 120.0, shot_noise_convergence},
      {6, "mitigation improves fidelity and purity", 300.0, mitigation_trend},
      {7, "Stokes sign-substitution identities", 0.0, stokes_identities},
      {8, "physicality of projected states; raw negative MI", 0.0, physicality},
      {9, "determinism across worker counts", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt(elapsed) + " s";
    if (c.budget_seconds > 0.0) {
      timing += " (limit " + fmt(c.budget_seconds) + " s)";
      pass = pass && elapsed < c.budget_seconds;
    }
    std::printf("%s criterion %d: %s -- %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                timing.c_str());
    failures += !pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
