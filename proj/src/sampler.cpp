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

#include "qdarwin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qdarwin/error.hpp"
#include "qdarwin/simd/kernels.hpp"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string MeasurementSetting::label() const {
  std::string out;
  out.reserve(bases.size());
  for (Basis b : bases) out.push_back(b == Basis::X ? 'X' : b == Basis::Y ? 'Y' : 'Z');
  return out;
}

MeasurementSetting MeasurementSetting::from_label(std::string_view label) {
  MeasurementSetting s;
  for (char c : label) {
    switch (c) {
      case 'X': s.bases.push_back(Basis::X); break;
      case 'Y': s.bases.push_back(Basis::Y); break;
      case 'Z': s.bases.push_back(Basis::Z); break;
      default: throw InvalidArgument("MeasurementSetting: invalid basis character '" + std::string(1, c) + "'");
    }
  }
  if (s.bases.empty()) throw InvalidArgument("MeasurementSetting: empty label");
  return s;
}

NoiseModel NoiseModel::none(std::size_t n_qubits) { return symmetric(n_qubits, 0.0); }

NoiseModel NoiseModel::symmetric(std::size_t n_qubits, double p) {
  NoiseModel m{std::vector<double>(n_qubits, p), std::vector<double>(n_qubits, p), 0.0};
  m.validate(n_qubits);
  return m;
}

bool NoiseModel::is_noiseless() const {
  auto zero = [](double p) { return p == 0.0; };
  return std::all_of(p1_given_0.begin(), p1_given_0.end(), zero) &&
         std::all_of(p0_given_1.begin(), p0_given_1.end(), zero) && depolarizing_per_cu == 0.0;
}

void NoiseModel::validate(std::size_t n_qubits) const {
  if (p1_given_0.size() != n_qubits || p0_given_1.size() != n_qubits) {
    throw InvalidArgument("NoiseModel: expected one flip probability pair per qubit");
  }
  auto ok = [](double p) { return p >= 0.0 && p < 0.5; };
  if (!std::all_of(p1_given_0.begin(), p1_given_0.end(), ok) || !std::all_of(p0_given_1.begin(), p0_given_1.end(), ok)) {
    throw InvalidArgument("NoiseModel: readout flip probabilities must lie in [0, 0.5)");
  }
  if (!(depolarizing_per_cu >= 0.0 && depolarizing_per_cu <= 1.0)) {
    throw InvalidArgument("NoiseModel: depolarizing strength must lie in [0, 1]");
  }
}

double CountsTable::total() const {
  double s = 0.0;
  for (double c : counts) s += c;
  return s;
}

std::vector<MeasurementSetting> enumerate_settings(std::size_t n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("enumerate_settings: need at least one qubit");
  std::size_t count = 1;
  for (std::size_t q = 0; q < n_qubits; ++q) count *= 3;
  std::vector<MeasurementSetting> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    MeasurementSetting s{std::vector<Basis>(n_qubits)};
    std::size_t rest = idx;
    for (std::size_t q = n_qubits; q-- > 0;) {
      s.bases[q] = static_cast<Basis>(rest % 3);
      rest /= 3;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Circuit basis_rotation(const MeasurementSetting& setting) {
  Circuit suffix(setting.n_qubits());
  for (std::size_t q = 0; q < setting.n_qubits(); ++q) {
    switch (setting.bases[q]) {
      case Basis::X: suffix.append(GateSpec::u(kPi / 2.0, 0.0, kPi, q)); break;          // H
      case Basis::Y: suffix.append(GateSpec::u(kPi / 2.0, 0.0, kPi / 2.0, q)); break;     // H S^dagger
      case Basis::Z: break;
    }
  }
  return suffix;
}

Distribution exact_probabilities(const StateVector& psi, const MeasurementSetting& setting) {
  if (psi.n_qubits() != setting.n_qubits()) throw InvalidArgument("exact_probabilities: width mismatch");
  const StateVector rotated = simulate_statevector(basis_rotation(setting), psi);
  Distribution out(rotated.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(rotated[i]);
  return out;
}

Distribution apply_readout_noise(Distribution dist, const NoiseModel& noise) {
  const std::size_t n = noise.n_qubits();
  if (dist.size() != (std::size_t{1} << n)) throw InvalidArgument("apply_readout_noise: width mismatch");
  const auto& kernels = simd::active_kernels();
  for (std::size_t q = 0; q < n; ++q) {
    const double e0 = noise.p1_given_0[q];
    const double e1 = noise.p0_given_1[q];
    if (e0 == 0.0 && e1 == 0.0) continue;
    const double confusion[4] = {1.0 - e0, e1, e0, 1.0 - e1};
    kernels.apply_real_2x2(dist.data(), dist.size(), std::size_t{1} << (n - 1 - q), confusion);
  }
  return dist;
}

Distribution apply_depolarizing(Distribution dist, double p, std::size_t controlled_gates) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("apply_depolarizing: p must lie in [0, 1]");
  if (p == 0.0 || controlled_gates == 0) return dist;
  const double keep = std::pow(1.0 - p, static_cast<double>(controlled_gates));
  const double uniform = (1.0 - keep) / static_cast<double>(dist.size());
  for (double& v : dist) v = keep * v + uniform;
  return dist;
}

CountsTable sample_counts(const Distribution& dist, const MeasurementSetting& setting, std::uint64_t shots,
                          std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("sample_counts: shots must be >= 1");
  if (dist.size() != (std::size_t{1} << setting.n_qubits())) throw InvalidArgument("sample_counts: width mismatch");
  double mass = 0.0;
  for (double v : dist) mass += std::max(v, 0.0);
  if (!(mass > 0.0)) throw InvalidArgument("sample_counts: distribution has no mass");

  // Multinomial as a chain of conditional binomials: O(outcomes), not O(shots).
  std::mt19937_64 engine(seed);
  std::vector<std::uint64_t> tally(dist.size(), 0);
  std::size_t last = dist.size() - 1;
  while (last > 0 && dist[last] <= 0.0) --last;
  std::uint64_t remaining = shots;
  double remaining_mass = mass;
  for (std::size_t i = 0; i < last && remaining > 0; ++i) {
    const double p = std::max(dist[i], 0.0);
    if (p <= 0.0) continue;
    const double q = std::clamp(p / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    tally[i] = draw(engine);
    remaining -= tally[i];
    remaining_mass -= p;
  }
  tally[last] += remaining;
  CountsTable table{setting, shots, std::vector<double>(dist.size())};
  for (std::size_t i = 0; i < tally.size(); ++i) table.counts[i] = static_cast<double>(tally[i]);
  return table;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream * 0x100000001b3ULL + index + 1));
}

std::string outcome_bits(std::size_t outcome, std::size_t n_qubits) {
  std::string out(n_qubits, '0');
  for (std::size_t q = 0; q < n_qubits; ++q) {
    if ((outcome >> (n_qubits - 1 - q)) & 1U) out[q] = '1';
  }
  return out;
}

std::size_t outcome_index(std::string_view bits) {
  std::size_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("outcome_index: invalid bit character");
    idx = (idx << 1) | static_cast<std::size_t>(c == '1');
  }
  return idx;
}

}  // namespace qdarwin
