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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdarwin/complex_matrix.hpp"
#include "qdarwin/linalg.hpp"

namespace qdarwin {

/// Environment qubits forming one fragment. Indices are register positions
/// 1..N; the system qubit 0 is never part of a fragment.
struct FragmentSpec {
  std::vector<std::size_t> indices;
};

/// System measured in Z; p[s] is the branch probability and rho[s] the
/// fragment state conditioned on outcome s (absent when p[s] <= 1e-12).
struct ConditionalStates {
  std::array<double, 2> p{0.0, 0.0};
  std::array<std::optional<DensityMatrix>, 2> rho;
};

/// I(S:F) = H(S) + H(F) - H(SF), in bits.
double mutual_information(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode);

ConditionalStates conditional_env_states(const DensityMatrix& rho, const FragmentSpec& fragment);

/// chi = H(sum_s p_s rho_{F|s}) - sum_s p_s H(rho_{F|s})
double holevo(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode);

/// Z-basis discord I - chi; not optimized over system measurements.
double discord(const DensityMatrix& rho, const FragmentSpec& fragment, EntropyMode mode);

struct InfoRow {
  std::size_t fragment_size = 0;
  double fragment_fraction = 0.0;
  double mi = 0.0;
  double holevo = 0.0;
  double discord = 0.0;
};

struct InfoReport {
  std::string source;  // "theoretical", "unmitigated", "mitigated"
  std::string mode;    // "physical" or "raw"
  std::string config;  // e.g. "4B"
  std::uint64_t seed = 0;
  std::vector<std::size_t> ordering;
  std::vector<InfoRow> rows;

  /// True when any row has MI below -1e-9 (possible only in raw mode).
  bool has_negative_mi() const;
};

/// Cumulative-prefix sweep: row f uses the first f environment indices of
/// `ordering` (a permutation of 1..N).
InfoReport fragment_sweep(const DensityMatrix& rho, std::span<const std::size_t> ordering, EntropyMode mode);

/// 1..N in ascending order.
std::vector<std::size_t> default_ordering(std::size_t n_env);

}  // namespace qdarwin
