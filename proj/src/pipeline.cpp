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

#include "qdarwin/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "qdarwin/error.hpp"
#include "qdarwin/linalg.hpp"

namespace qdarwin {
namespace {

// Seed streams; settings and calibration circuits never share one.
constexpr std::uint64_t kSettingStream = 0;
constexpr std::uint64_t kCalibrationStream = 1;

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

InfoReport analyze(const DensityMatrix& rho, const RunConfig& cfg, std::string source, EntropyMode mode) {
  const auto ordering = cfg.resolved_ordering();
  InfoReport report = fragment_sweep(rho, ordering, mode);
  report.source = std::move(source);
  report.config = cfg.tag();
  report.seed = cfg.seed.value_or(0);
  return report;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

OutputFile manifest(const std::string& command, const Json& config, std::span<const OutputFile> files) {
  Json checksums = Json::object();
  for (const auto& f : files) checksums[f.name] = sha256_hex(f.contents);
  Json m{{"tool", "qdarwin"}, {"version", kToolVersion}, {"command", command}, {"config", config}, {"files", checksums}};
  return {"manifest.json", render(m)};
}

std::vector<CountsTable> sample_all_settings(const StateVector& psi, const RunConfig& cfg, const NoiseModel& noise,
                                             std::size_t controlled_gates) {
  const auto settings = enumerate_settings(psi.n_qubits());
  std::vector<CountsTable> counts(settings.size());
  const std::uint64_t seed = *cfg.seed;
  parallel_for(settings.size(), cfg.workers, [&](std::size_t idx) {
    Distribution dist = exact_probabilities(psi, settings[idx]);
    dist = apply_depolarizing(std::move(dist), noise.depolarizing_per_cu, controlled_gates);
    dist = apply_readout_noise(std::move(dist), noise);
    counts[idx] = sample_counts(dist, settings[idx], cfg.shots, derive_seed(seed, kSettingStream, idx));
  });
  return counts;
}

CalibrationData run_calibration(std::size_t n, const RunConfig& cfg, const NoiseModel& noise) {
  const MeasurementSetting z_all{std::vector<Basis>(n, Basis::Z)};
  const std::size_t d = std::size_t{1} << n;
  Distribution zeros(d, 0.0), ones(d, 0.0);
  zeros.front() = 1.0;
  ones.back() = 1.0;
  const CountsTable c0 =
      sample_counts(apply_readout_noise(zeros, noise), z_all, cfg.shots, derive_seed(*cfg.seed, kCalibrationStream, 0));
  const CountsTable c1 =
      sample_counts(apply_readout_noise(ones, noise), z_all, cfg.shots, derive_seed(*cfg.seed, kCalibrationStream, 1));
  return calibrate_readout(c0, c1);
}

}  // namespace

void RunConfig::validate(bool sampled) const {
  if (qubits < 2 || qubits > 6) throw InvalidArgument("qubits must be between 2 and 6, got " + std::to_string(qubits));
  if (sampled) {
    if (!seed) throw InvalidArgument("a seed is required for sampled runs");
    if (shots < 1) throw InvalidArgument("shots must be >= 1");
    if (readout_flip && !(*readout_flip >= 0.0 && *readout_flip < 0.5)) {
      throw InvalidArgument("readout flip probability must lie in [0, 0.5)");
    }
    if (!(depolarizing >= 0.0 && depolarizing <= 1.0)) throw InvalidArgument("depolarizing strength must lie in [0, 1]");
  }
  if (!ordering.empty()) {
    std::vector<std::size_t> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != default_ordering(qubits - 1)) {
      throw InvalidArgument("ordering must be a permutation of 1.." + std::to_string(qubits - 1));
    }
  }
}

DarwinismConfig RunConfig::darwinism() const {
  DarwinismConfig cfg = standard_config(qubits, variant);
  if (theta_system) cfg.theta_system = *theta_system;
  return cfg;
}

NoiseModel RunConfig::noise_model() const {
  NoiseModel m = NoiseModel::symmetric(qubits, readout_flip.value_or(0.0));
  m.depolarizing_per_cu = depolarizing;
  return m;
}

std::vector<std::size_t> RunConfig::resolved_ordering() const {
  return ordering.empty() ? default_ordering(qubits - 1) : ordering;
}

std::string RunConfig::tag() const { return std::to_string(qubits) + (variant == StrengthVariant::A ? "A" : "B"); }

std::string RunConfig::case_label() const {
  return "S-E" + std::to_string(qubits - 1) + (variant == StrengthVariant::A ? " (A)" : " (B)");
}

Json RunConfig::echo() const {
  Json j{{"qubits", qubits},
         {"variant", variant == StrengthVariant::A ? "A" : "B"},
         {"theta_system", theta_system.value_or(std::numbers::pi / 2.0)},
         {"interaction_strengths", interaction_strengths(qubits, variant)},
         {"shots", shots},
         {"seed", seed ? Json(*seed) : Json(nullptr)},
         {"noise", readout_flip ? Json(*readout_flip) : Json("none")},
         {"depolarizing", depolarizing},
         {"mitigation", mitigation ? "on" : "off"},
         {"mode", mode == EntropyMode::Physical ? "physical" : "raw"},
         {"ordering", resolved_ordering()},
         {"format", format == ReportFormat::Json ? "json" : "csv"}};
  return j;
}

TheoryResult run_theory(const RunConfig& cfg) {
  cfg.validate(false);
  const DarwinismConfig dcfg = cfg.darwinism();
  Circuit circuit = build_darwinism_circuit(dcfg);
  StateVector state = theoretical_state(dcfg);
  DensityMatrix rho = DensityMatrix::pure(state);
  InfoReport info = analyze(rho, cfg, "theoretical", EntropyMode::Physical);
  return {std::move(circuit), std::move(state), std::move(rho), std::move(info)};
}

ExperimentResult run_experiment(const RunConfig& cfg) {
  cfg.validate(true);
  const DarwinismConfig dcfg = cfg.darwinism();
  const std::size_t n = dcfg.n_qubits();
  const Circuit circuit = build_darwinism_circuit(dcfg);
  const StateVector psi = simulate_statevector(circuit);
  const DensityMatrix rho_theory = DensityMatrix::pure(theoretical_state(dcfg));
  const NoiseModel noise = cfg.noise_model();

  std::vector<CountsTable> counts = sample_all_settings(psi, cfg, noise, dcfg.n_env);
  ReconstructionReport unmitigated = make_reconstruction_report(reconstruct_from_counts(counts, n), rho_theory, false);
  ExperimentResult result{std::move(counts), std::nullopt, std::move(unmitigated), std::nullopt, {}, 0};
  result.settings_processed = result.counts.size();

  if (cfg.mitigation) {
    result.calibration = run_calibration(n, cfg, noise);
    std::vector<CountsTable> mitigated(result.counts.size());
    std::vector<double> clipped(result.counts.size());
    parallel_for(result.counts.size(), cfg.workers, [&](std::size_t idx) {
      MitigationResult m = mitigate_counts(result.counts[idx], *result.calibration);
      mitigated[idx] = std::move(m.counts);
      clipped[idx] = m.clipped_mass;
    });
    double mean_clipped = 0.0;
    for (double c : clipped) mean_clipped += c;
    mean_clipped /= static_cast<double>(clipped.size());
    result.mitigated = make_reconstruction_report(reconstruct_from_counts(mitigated, n), rho_theory, true, mean_clipped);
  }

  auto pick = [&](const ReconstructionReport& r) -> const DensityMatrix& {
    return cfg.mode == EntropyMode::Physical ? r.rho_projected : r.rho_raw;
  };
  result.info.push_back(analyze(rho_theory, cfg, "theoretical", EntropyMode::Physical));
  result.info.push_back(analyze(pick(result.unmitigated), cfg, "unmitigated", cfg.mode));
  if (result.mitigated) result.info.push_back(analyze(pick(*result.mitigated), cfg, "mitigated", cfg.mode));
  return result;
}

TableRow run_table_row(const RunConfig& cfg) {
  RunConfig with_mitigation = cfg;
  with_mitigation.mitigation = true;
  const ExperimentResult r = run_experiment(with_mitigation);
  return TableRow{cfg.case_label(),
                  cfg.tag(),
                  r.unmitigated.fidelity_vs_theory,
                  r.mitigated->fidelity_vs_theory,
                  r.unmitigated.purity_projected,
                  r.mitigated->purity_projected,
                  r.unmitigated.purity_raw,
                  r.mitigated->purity_raw};
}

std::string table_to_csv(std::span<const TableRow> rows) {
  std::ostringstream out;
  out << kTableCsvHeader << '\n';
  for (const auto& r : rows) {
    const bool above_one = r.purity_raw_unmitigated > 1.0 || r.purity_raw_mitigated > 1.0;
    out << r.case_label << ',' << r.tag << ',' << format_double(r.fidelity_unmitigated) << ','
        << format_double(r.fidelity_mitigated) << ',' << format_double(r.purity_unmitigated) << ','
        << format_double(r.purity_mitigated) << ',' << format_double(r.purity_raw_unmitigated) << ','
        << format_double(r.purity_raw_mitigated) << ',' << (above_one ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<OutputFile> cmd_theory(const RunConfig& cfg) {
  const TheoryResult t = run_theory(cfg);
  const Json echo = cfg.echo();
  std::vector<OutputFile> files;
  files.push_back({"rho_theory.json", render({{"config", echo},
                                              {"circuit", circuit_to_json(t.circuit)},
                                              {"state", state_to_json(t.state)},
                                              {"purity", purity(t.rho)},
                                              {"rho", matrix_to_json(t.rho.mat())}})});
  const std::vector<InfoReport> reports{t.info};
  if (cfg.format == ReportFormat::Json) {
    files.push_back({"info_report.json", render({{"config", echo}, {"reports", Json::array({info_report_to_json(t.info)})}})});
  } else {
    files.push_back({"info_report.csv", info_reports_to_csv(reports)});
  }
  files.push_back(manifest("theory", echo, files));
  return files;
}

std::vector<OutputFile> cmd_experiment(const RunConfig& cfg) {
  const ExperimentResult r = run_experiment(cfg);
  const TheoryResult t = run_theory(cfg);
  const Json echo = cfg.echo();
  std::vector<OutputFile> files;
  files.push_back({"rho_theory.json", render({{"config", echo},
                                              {"circuit", circuit_to_json(t.circuit)},
                                              {"state", state_to_json(t.state)},
                                              {"purity", purity(t.rho)},
                                              {"rho", matrix_to_json(t.rho.mat())}})});
  files.push_back({"rho_experiment.json",
                   render({{"config", echo},
                           {"settings_processed", r.settings_processed},
                           {"calibration", r.calibration ? calibration_to_json(*r.calibration) : Json(nullptr)},
                           {"unmitigated", reconstruction_to_json(r.unmitigated)},
                           {"mitigated", r.mitigated ? reconstruction_to_json(*r.mitigated) : Json(nullptr)}})});
  if (cfg.format == ReportFormat::Json) {
    Json reports = Json::array();
    for (const auto& info : r.info) reports.push_back(info_report_to_json(info));
    files.push_back({"info_report.json", render({{"config", echo}, {"reports", std::move(reports)}})});
  } else {
    files.push_back({"info_report.csv", info_reports_to_csv(r.info)});
  }
  files.push_back(manifest("experiment", echo, files));
  return files;
}

std::vector<OutputFile> cmd_table(std::span<const RunConfig> batch) {
  std::vector<TableRow> rows;
  Json configs = Json::array();
  for (const auto& cfg : batch) {
    rows.push_back(run_table_row(cfg));
    configs.push_back(cfg.echo());
  }
  std::vector<OutputFile> files{{"table.csv", table_to_csv(rows)}};
  files.push_back(manifest("table", configs, files));
  return files;
}

void write_outputs(const std::filesystem::path& dir, std::span<const OutputFile> files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary | std::ios::trunc);
    out << f.contents;
    if (!out) throw std::runtime_error("failed to write " + (dir / f.name).string());
  }
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min(resolve_workers(workers), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qdarwin
