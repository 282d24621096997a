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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/circuit.hpp"
#include "qdarwin/complex_matrix.hpp"

namespace qdarwin {

enum class Basis { X, Y, Z };

/// One measurement basis per qubit; qubit 0 first.
struct MeasurementSetting {
  std::vector<Basis> bases;

  std::size_t n_qubits() const { return bases.size(); }
  std::string label() const;  // e.g. "XZY"
  static MeasurementSetting from_label(std::string_view label);

  bool operator==(const MeasurementSetting&) const = default;
};

/// Probabilities indexed by outcome; qubit 0 is the most significant bit.
using Distribution = std::vector<double>;

/// Independent per-qubit readout flips, plus an optional global depolarizing
/// channel of strength `depolarizing_per_cu` per controlled gate applied to the
/// pre-measurement state.
struct NoiseModel {
  std::vector<double> p1_given_0;  // read 1 when the qubit is 0
  std::vector<double> p0_given_1;  // read 0 when the qubit is 1
  double depolarizing_per_cu = 0.0;

  static NoiseModel none(std::size_t n_qubits);
  static NoiseModel symmetric(std::size_t n_qubits, double p);

  std::size_t n_qubits() const { return p1_given_0.size(); }
  bool is_noiseless() const;
  /// Throws InvalidArgument unless every probability lies in [0, 0.5).
  void validate(std::size_t n_qubits) const;
};

/// Outcome counts for one setting. Raw tables hold integers summing to
/// `shots`; mitigated tables hold reals summing to `shots` within 1e-6.
struct CountsTable {
  MeasurementSetting setting;
  std::uint64_t shots = 0;
  std::vector<double> counts;  // dense, 2^n entries

  double total() const;
  std::size_t n_qubits() const { return setting.n_qubits(); }
};

inline constexpr std::uint64_t kDefaultShots = 8192;
inline constexpr double kDefaultReadoutFlip = 0.02;

/// 3^n settings in lexicographic X < Y < Z order, qubit 0 most significant.
std::vector<MeasurementSetting> enumerate_settings(std::size_t n_qubits);

/// Gates that rotate each qubit's measured basis onto Z: H for X, S^dagger
/// followed by H for Y (matrix (1/sqrt2)[[1, -i], [1, i]]), nothing for Z.
Circuit basis_rotation(const MeasurementSetting& setting);

/// Infinite-shot outcome distribution of `psi` measured in `setting`.
Distribution exact_probabilities(const StateVector& psi, const MeasurementSetting& setting);

/// (x)_q A_q applied to dist, with A_q the column-stochastic confusion matrix
/// [[1 - p(1|0), p(0|1)], [p(1|0), 1 - p(0|1)]].
Distribution apply_readout_noise(Distribution dist, const NoiseModel& noise);

/// Mixes dist with the uniform distribution: weight 1 - (1 - p)^gates stays on
/// the maximally mixed state.
Distribution apply_depolarizing(Distribution dist, double p, std::size_t controlled_gates);

/// Multinomial draw of `shots` outcomes (conditional binomials on a
/// std::mt19937_64 seeded with `seed`). Deterministic per seed.
CountsTable sample_counts(const Distribution& dist, const MeasurementSetting& setting, std::uint64_t shots,
                          std::uint64_t seed);

/// Independent stream seed for (master, stream, index) via SplitMix64 mixing.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Bitstring for an outcome index, qubit 0 first.
std::string outcome_bits(std::size_t outcome, std::size_t n_qubits);
std::size_t outcome_index(std::string_view bits);

}  // namespace qdarwin
