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

#include "qdarwin/infotheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qdarwin/error.hpp"

namespace qdarwin {
namespace {

constexpr double kBranchCutoff = 1e-12;

std::size_t checked_width(const DensityMatrix& rho, const FragmentSpec& fragment) {
  const std::size_t n = rho.n_qubits();
  if (n < 2) throw InvalidArgument("fragment analysis needs a system qubit and at least one environment qubit");
  if (fragment.indices.empty()) throw InvalidArgument("fragment is empty");
  for (std::size_t q : fragment.indices) {
    if (q == 0 || q >= n) throw InvalidArgument("fragment index " + std::to_string(q) + " is out of range 1.." + std::to_string(n - 1));
  }
  std::vector<std::size_t> sorted = fragment.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidArgument("fragment has duplicate indices");
  return n;
}

}  // namespace

double mutual_information(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode) {
  const std::size_t n = checked_width(rho, fragment);
  const std::size_t system[] = {0};
  std::vector<std::size_t> joint = fragment.indices;
  joint.push_back(0);
  const double hs = von_neumann_entropy(partial_trace(rho, system, n), mode);
  const double hf = von_neumann_entropy(partial_trace(rho, fragment.indices, n), mode);
  const double hsf = von_neumann_entropy(partial_trace(rho, joint, n), mode);
  return hs + hf - hsf;
}

ConditionalStates conditional_env_states(const DensityMatrix& rho, const FragmentSpec& fragment) {
  const std::size_t n = checked_width(rho, fragment);
  const std::size_t n_env = n - 1;
  const std::size_t half = std::size_t{1} << n_env;
  const ComplexMatrix& m = rho.mat();

  // Environment fragment indices relative to the environment register.
  std::vector<std::size_t> env_keep;
  for (std::size_t q : fragment.indices) env_keep.push_back(q - 1);

  ConditionalStates out;
  for (std::size_t s = 0; s < 2; ++s) {
    const std::size_t offset = s * half;
    double p = 0.0;
    for (std::size_t i = 0; i < half; ++i) p += m(offset + i, offset + i).real();
    out.p[s] = p;
    if (p <= kBranchCutoff) {
      out.p[s] = 0.0;
      continue;
    }
    ComplexMatrix block(half);
    for (std::size_t i = 0; i < half; ++i)
      for (std::size_t j = 0; j < half; ++j) block(i, j) = m(offset + i, offset + j) / p;
    // A principal block of a PSD matrix is PSD, so physicality carries over.
    const DensityMatrix env_state = DensityMatrix::trusted(std::move(block), rho.physical());
    out.rho[s] = partial_trace(env_state, env_keep, n_env);
  }
  if (!out.rho[0] && !out.rho[1]) throw NumericalError("conditional_env_states: both system branches vanish");
  return out;
}

double holevo(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode) {
  const ConditionalStates cond = conditional_env_states(rho, fragment);
  const double weight = cond.p[0] + cond.p[1];
  std::optional<ComplexMatrix> mixture;
  double conditional_entropy = 0.0;
  bool physical = true;
  for (std::size_t s = 0; s < 2; ++s) {
    if (!cond.rho[s]) continue;
    const double ps = cond.p[s] / weight;
    const DensityMatrix& branch = *cond.rho[s];
    physical = physical && branch.physical();
    conditional_entropy += ps * von_neumann_entropy(branch, mode);
    ComplexMatrix term = branch.mat() * Complex{ps, 0.0};
    if (mixture) {
      *mixture += term;
    } else {
      mixture = std::move(term);
    }
  }
  const DensityMatrix averaged = DensityMatrix::trusted(std::move(*mixture), physical);
  return von_neumann_entropy(averaged, mode) - conditional_entropy;
}

double discord(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode) {
  return mutual_information(rho, fragment, mode) - holevo(rho, fragment, mode);
}

bool InfoReport::has_negative_mi() const {
  return std::any_of(rows.begin(), rows.end(), [](const InfoRow& r) { return r.mi < -1e-9; });
}

std::vector<std::size_t> default_ordering(std::size_t n_env) {
  std::vector<std::size_t> out(n_env);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

InfoReport fragment_sweep(const DensityMatrix& rho, std::span<const std::size_t> ordering, EntropyMode mode) {
  const std::size_t n_env = rho.n_qubits() - 1;
  std::vector<std::size_t> sorted(ordering.begin(), ordering.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != default_ordering(n_env)) {
    throw InvalidArgument("fragment_sweep: ordering must be a permutation of 1.." + std::to_string(n_env));
  }
  InfoReport report;
  report.mode = mode == EntropyMode::Physical ? "physical" : "raw";
  report.ordering.assign(ordering.begin(), ordering.end());
  for (std::size_t f = 1; f <= n_env; ++f) {
    const FragmentSpec fragment{std::vector<std::size_t>(ordering.begin(), ordering.begin() + static_cast<std::ptrdiff_t>(f))};
    InfoRow row;
    row.fragment_size = f;
    row.fragment_fraction = static_cast<double>(f) / static_cast<double>(n_env);
    row.mi = mutual_information(rho, fragment, mode);
    row.holevo = holevo(rho, fragment, mode);
    row.discord = row.mi - row.holevo;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qdarwin
