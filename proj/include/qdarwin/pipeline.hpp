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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdarwin/circuit.hpp"
#include "qdarwin/infotheory.hpp"
#include "qdarwin/sampler.hpp"
#include "qdarwin/serialize.hpp"
#include "qdarwin/tomography.hpp"

namespace qdarwin {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class ReportFormat { Json, Csv };

struct RunConfig {
  std::size_t qubits = 2;  // total, system + environment
  StrengthVariant variant = StrengthVariant::A;
  std::optional<double> theta_system;  // defaults to pi/2
  std::uint64_t shots = kDefaultShots;
  std::optional<double> readout_flip = kDefaultReadoutFlip;  // nullopt: noiseless readout
  double depolarizing = 0.0;
  std::optional<std::uint64_t> seed;
  bool mitigation = true;
  EntropyMode mode = EntropyMode::Physical;
  std::vector<std::size_t> ordering;  // empty: ascending
  ReportFormat format = ReportFormat::Json;
  std::size_t workers = 0;  // 0: hardware concurrency

  /// Throws InvalidArgument. Sampled runs additionally require a seed.
  void validate(bool sampled) const;
  DarwinismConfig darwinism() const;
  NoiseModel noise_model() const;
  std::vector<std::size_t> resolved_ordering() const;
  /// "2A", "6B", ...
  std::string tag() const;
  /// "S-E1 (A)", ...
  std::string case_label() const;
  /// Everything that influences results (not workers, not output location).
  Json echo() const;
};

struct TheoryResult {
  Circuit circuit;
  StateVector state;
  DensityMatrix rho;
  InfoReport info;
};

TheoryResult run_theory(const RunConfig& cfg);

struct ExperimentResult {
  std::vector<CountsTable> counts;
  std::optional<CalibrationData> calibration;
  ReconstructionReport unmitigated;
  std::optional<ReconstructionReport> mitigated;
  std::vector<InfoReport> info;  // theoretical, unmitigated, [mitigated]
  std::size_t settings_processed = 0;
};

/// Full pipeline: simulate, sample every setting (plus calibration when
/// mitigation is on), reconstruct, project, analyze. Results do not depend on
/// cfg.workers.
ExperimentResult run_experiment(const RunConfig& cfg);

struct TableRow {
  std::string case_label;
  std::string tag;
  double fidelity_unmitigated = 0.0;
  double fidelity_mitigated = 0.0;
  double purity_unmitigated = 0.0;
  double purity_mitigated = 0.0;
  double purity_raw_unmitigated = 0.0;
  double purity_raw_mitigated = 0.0;
};

inline constexpr std::string_view kTableCsvHeader =
    "case,config,fidelity_unmitigated,fidelity_mitigated,purity_unmitigated,purity_mitigated,"
    "purity_raw_unmitigated,purity_raw_mitigated,raw_purity_above_one";

TableRow run_table_row(const RunConfig& cfg);
std::string table_to_csv(std::span<const TableRow> rows);

struct OutputFile {
  std::string name;
  std::string contents;
};

// Each command returns its files fully rendered (manifest.json last) so that
// nothing is written when any stage fails.
std::vector<OutputFile> cmd_theory(const RunConfig& cfg);
std::vector<OutputFile> cmd_experiment(const RunConfig& cfg);
std::vector<OutputFile> cmd_table(std::span<const RunConfig> batch);

void write_outputs(const std::filesystem::path& dir, std::span<const OutputFile> files);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Rethrows the
/// first exception after all threads have joined.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace qdarwin
