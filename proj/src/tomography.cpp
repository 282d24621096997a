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

#include "qdarwin/tomography.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "qdarwin/error.hpp"
#include "qdarwin/linalg.hpp"
#include "qdarwin/simd/kernels.hpp"

namespace qdarwin {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t pow_of(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t qubit_bit(std::size_t q, std::size_t n) { return std::uint64_t{1} << (n - 1 - q); }

}  // namespace

StokesTable::StokesTable(std::size_t n_qubits) : n_qubits_(n_qubits), values_(pow_of(4, n_qubits), kNaN) {
  if (n_qubits < 1) throw InvalidArgument("StokesTable: need at least one qubit");
  values_[0] = 1.0;
}

double StokesTable::at(std::string_view label) const {
  if (label.size() != n_qubits_) throw InvalidArgument("StokesTable: label width mismatch");
  return values_[index_of(label)];
}

void StokesTable::set(std::string_view label, double value) {
  if (label.size() != n_qubits_) throw InvalidArgument("StokesTable: label width mismatch");
  values_[index_of(label)] = value;
}

bool StokesTable::complete() const {
  return std::none_of(values_.begin(), values_.end(), [](double v) { return std::isnan(v); });
}

std::string StokesTable::label_of(std::size_t index, std::size_t n_qubits) {
  static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  std::string out(n_qubits, 'I');
  for (std::size_t q = n_qubits; q-- > 0;) {
    out[q] = kChars[index % 4];
    index /= 4;
  }
  return out;
}

std::size_t StokesTable::index_of(std::string_view label) {
  std::size_t idx = 0;
  for (char c : label) {
    std::size_t digit = 0;
    switch (c) {
      case 'I': digit = 0; break;
      case 'X': digit = 1; break;
      case 'Y': digit = 2; break;
      case 'Z': digit = 3; break;
      default: throw InvalidArgument("StokesTable: invalid Pauli character '" + std::string(1, c) + "'");
    }
    idx = idx * 4 + digit;
  }
  return idx;
}

double stokes_value(const CountsTable& counts, std::uint64_t measured_mask) {
  const double total = counts.total();
  if (!(total > 0.0)) throw InvalidArgument("stokes_value: counts table is empty");
  const double signed_sum =
      simd::active_kernels().parity_signed_sum(counts.counts.data(), counts.counts.size(), measured_mask);
  return signed_sum / total;
}

StokesTable stokes_from_counts(std::span<const CountsTable> all_counts, std::size_t n_qubits) {
  const auto settings = enumerate_settings(n_qubits);
  std::map<std::string, const CountsTable*> by_label;
  std::uint64_t shots = 0;
  for (const auto& table : all_counts) {
    if (table.n_qubits() != n_qubits || table.counts.size() != (std::size_t{1} << n_qubits)) {
      throw InvalidArgument("stokes_from_counts: counts table width mismatch");
    }
    if (shots == 0) shots = table.shots;
    if (table.shots != shots) throw InvalidArgument("stokes_from_counts: inconsistent shot counts across settings");
    if (!by_label.emplace(table.setting.label(), &table).second) {
      throw InvalidArgument("stokes_from_counts: duplicate setting " + table.setting.label());
    }
  }

  const std::size_t n_labels = pow_of(4, n_qubits);
  const std::size_t n_masks = std::size_t{1} << n_qubits;
  std::vector<double> sum(n_labels, 0.0);
  std::vector<std::size_t> covered(n_labels, 0);
  for (const auto& setting : settings) {
    const auto it = by_label.find(setting.label());
    if (it == by_label.end()) throw InvalidArgument("stokes_from_counts: missing setting " + setting.label());
    const CountsTable& table = *it->second;
    for (std::size_t mask = 0; mask < n_masks; ++mask) {
      std::size_t label = 0;
      for (std::size_t q = 0; q < n_qubits; ++q) {
        const std::size_t digit = (mask & qubit_bit(q, n_qubits)) ? static_cast<std::size_t>(setting.bases[q]) + 1 : 0;
        label = label * 4 + digit;
      }
      sum[label] += stokes_value(table, mask);
      ++covered[label];
    }
  }

  StokesTable out(n_qubits);
  for (std::size_t label = 1; label < n_labels; ++label) out[label] = sum[label] / static_cast<double>(covered[label]);
  return out;
}

ComplexMatrix reconstruct_linear_inversion(const StokesTable& stokes) {
  if (!stokes.complete()) throw InvalidArgument("reconstruct_linear_inversion: Stokes table is incomplete");
  const std::size_t n = stokes.n_qubits();
  const std::size_t d = std::size_t{1} << n;
  const double norm = 1.0 / static_cast<double>(d);
  static const Complex kMinusIPowers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};

  ComplexMatrix rho(d);
  for (std::size_t label = 0; label < stokes.size(); ++label) {
    const double s = stokes[label];
    if (s == 0.0) continue;
    // A Pauli string has one nonzero per row: column i ^ flip, value
    // (-i)^{#Y} (-1)^{parity(i & phase_mask)}.
    std::size_t flip = 0, phase_mask = 0, n_y = 0;
    std::size_t rest = label;
    for (std::size_t q = n; q-- > 0;) {
      const std::size_t digit = rest % 4;
      rest /= 4;
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (digit == 1 || digit == 2) flip |= bit;
      if (digit == 2 || digit == 3) phase_mask |= bit;
      if (digit == 2) ++n_y;
    }
    const Complex coef = kMinusIPowers[n_y % 4] * (s * norm);
    for (std::size_t i = 0; i < d; ++i) {
      const bool negate = std::popcount(i & phase_mask) & 1;
      rho(i, i ^ flip) += negate ? -coef : coef;
    }
  }
  return rho;
}

DensityMatrix project_to_physical(const ComplexMatrix& raw) {
  if (raw.hermiticity_defect() > DensityMatrix::kHermitianTol) {
    throw InvalidArgument("project_to_physical: input is not Hermitian");
  }
  if (std::abs(raw.trace() - 1.0) > DensityMatrix::kTraceTol) {
    throw InvalidArgument("project_to_physical: input trace is not 1");
  }
  auto eig = hermitian_eig(raw);
  auto& values = eig.values;  // ascending
  const std::size_t d = values.size();
  double removed = 0.0;
  std::size_t first_kept = 0;
  while (first_kept < d && values[first_kept] + removed / static_cast<double>(d - first_kept) < 0.0) {
    removed += values[first_kept];
    values[first_kept] = 0.0;
    ++first_kept;
  }
  const double shift = first_kept < d ? removed / static_cast<double>(d - first_kept) : 0.0;
  double total = 0.0;
  for (std::size_t k = first_kept; k < d; ++k) {
    values[k] += shift;
    total += values[k];
  }
  for (auto& v : values) v /= total;

  ComplexMatrix rho = from_spectrum(eig.vectors, values);
  for (std::size_t i = 0; i < d; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = avg;
      rho(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix::trusted(std::move(rho), true);
}

double negativity_mass(const ComplexMatrix& raw) {
  double mass = 0.0;
  for (double v : hermitian_eigenvalues(raw)) {
    if (v < 0.0) mass -= v;
  }
  return mass;
}

CalibrationData CalibrationData::identity(std::size_t n_qubits) {
  return CalibrationData{std::vector<std::array<double, 4>>(n_qubits, {1.0, 0.0, 0.0, 1.0}), false, {}};
}

CalibrationData calibrate_readout(const CountsTable& all_zero, const CountsTable& all_one) {
  const std::size_t n = all_zero.n_qubits();
  if (all_one.n_qubits() != n) throw InvalidArgument("calibrate_readout: calibration tables differ in width");
  const std::string z_label(n, 'Z');
  if (all_zero.setting.label() != z_label || all_one.setting.label() != z_label) {
    throw InvalidArgument("calibrate_readout: calibration tables must be measured in the Z basis");
  }
  const double total0 = all_zero.total();
  const double total1 = all_one.total();
  if (!(total0 > 0.0) || !(total1 > 0.0)) throw InvalidArgument("calibrate_readout: empty calibration table");

  CalibrationData calib;
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = qubit_bit(q, n);
    double flips0 = 0.0, flips1 = 0.0;
    for (std::size_t b = 0; b < all_zero.counts.size(); ++b) {
      if (b & bit) flips0 += all_zero.counts[b];
      else flips1 += all_one.counts[b];
    }
    const double e0 = flips0 / total0;
    const double e1 = flips1 / total1;
    const double det = 1.0 - e0 - e1;
    if (std::abs(det) < 1e-9) {
      throw NumericalError("calibrate_readout: confusion matrix of qubit " + std::to_string(q) + " is singular");
    }
    if (1.0 - e0 <= 0.5 || 1.0 - e1 <= 0.5) {
      calib.ill_conditioned = true;
      calib.warnings.push_back("qubit " + std::to_string(q) +
                               ": readout assignment fidelity <= 0.5, mitigation is ill-conditioned");
    }
    calib.confusion.push_back({1.0 - e0, e1, e0, 1.0 - e1});
  }
  return calib;
}

MitigationResult mitigate_counts(const CountsTable& counts, const CalibrationData& calib) {
  const std::size_t n = counts.n_qubits();
  if (calib.n_qubits() != n) throw InvalidArgument("mitigate_counts: calibration width mismatch");
  MitigationResult out{counts, 0.0};
  auto& values = out.counts.counts;
  const auto& kernels = simd::active_kernels();
  for (std::size_t q = 0; q < n; ++q) {
    const auto& a = calib.confusion[q];
    if (a[1] == 0.0 && a[2] == 0.0) continue;
    const double det = a[0] * a[3] - a[1] * a[2];
    if (std::abs(det) < 1e-9) throw NumericalError("mitigate_counts: singular calibration");
    const double inverse[4] = {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
    kernels.apply_real_2x2(values.data(), values.size(), std::size_t{1} << (n - 1 - q), inverse);
  }
  double kept = 0.0, clipped = 0.0;
  for (double& v : values) {
    if (v < 0.0) {
      clipped -= v;
      v = 0.0;
    }
    kept += v;
  }
  if (!(kept > 0.0)) throw NumericalError("mitigate_counts: no positive quasi-counts remain");
  const double shots = static_cast<double>(counts.shots);
  if (kept != shots) {
    const double scale = shots / kept;
    for (double& v : values) v *= scale;
  }
  out.clipped_mass = clipped / shots;
  return out;
}

ComplexMatrix reconstruct_from_counts(std::span<const CountsTable> all_counts, std::size_t n_qubits) {
  return reconstruct_linear_inversion(stokes_from_counts(all_counts, n_qubits));
}

ReconstructionReport make_reconstruction_report(const ComplexMatrix& raw, const DensityMatrix& rho_theory,
                                                bool mitigated, double clipped_mass) {
  DensityMatrix rho_raw = DensityMatrix::raw(raw);
  DensityMatrix rho_projected = project_to_physical(raw);
  ReconstructionReport report{rho_raw, rho_projected, 0.0, 0.0, 0.0, 0.0, clipped_mass, mitigated};
  report.fidelity_vs_theory = fidelity(rho_theory, rho_projected);
  report.purity_raw = purity(rho_raw);
  report.purity_projected = purity(rho_projected);
  report.negativity = negativity_mass(raw);
  return report;
}

}  // namespace qdarwin
