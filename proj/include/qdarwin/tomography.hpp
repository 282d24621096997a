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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdarwin/complex_matrix.hpp"
#include "qdarwin/sampler.hpp"

namespace qdarwin {

/// Pauli expectation values ("Stokes parameters") for every label in
/// {I,X,Y,Z}^n. Labels are indexed base 4 with qubit 0 most significant and
/// I=0, X=1, Y=2, Z=3. Unset entries are NaN.
class StokesTable {
 public:
  explicit StokesTable(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t index) const { return values_[index]; }
  double& operator[](std::size_t index) { return values_[index]; }
  double at(std::string_view label) const;
  void set(std::string_view label, double value);
  bool complete() const;

  static std::string label_of(std::size_t index, std::size_t n_qubits);
  static std::size_t index_of(std::string_view label);

 private:
  std::size_t n_qubits_;
  std::vector<double> values_;
};

/// Signed expectation sum_b (-1)^{parity(b & measured_mask)} P(b) with P the
/// normalized counts. Bits outside the mask enter with a + sign, which is the
/// identity-position marginalization.
double stokes_value(const CountsTable& counts, std::uint64_t measured_mask);

/// Every label averaged over all settings that cover it.
StokesTable stokes_from_counts(std::span<const CountsTable> all_counts, std::size_t n_qubits);

/// rho = 2^-n sum_labels S_label * (sigma_t1 (x) ... (x) sigma_tn)
ComplexMatrix reconstruct_linear_inversion(const StokesTable& stokes);

/// Frobenius-nearest density matrix: eigenvalues clipped at zero with the
/// removed mass subtracted evenly from the survivors, smallest first.
DensityMatrix project_to_physical(const ComplexMatrix& raw);

/// Sum of |negative eigenvalues| of a Hermitian matrix.
double negativity_mass(const ComplexMatrix& raw);

/// Per-qubit column-stochastic confusion matrices, row-major
/// [[p(0|0), p(0|1)], [p(1|0), p(1|1)]].
struct CalibrationData {
  std::vector<std::array<double, 4>> confusion;
  bool ill_conditioned = false;
  std::vector<std::string> warnings;

  static CalibrationData identity(std::size_t n_qubits);
  std::size_t n_qubits() const { return confusion.size(); }
};

/// Estimates flip rates from the marginals of an all-0 and an all-1
/// preparation, both measured in Z. Throws NumericalError for a singular
/// estimate.
CalibrationData calibrate_readout(const CountsTable& all_zero, const CountsTable& all_one);

struct MitigationResult {
  CountsTable counts;
  double clipped_mass = 0.0;  // negative quasi-count mass removed, as a fraction of shots
};

/// Applies the tensored inverse confusion matrix, clips negative quasi-counts
/// and rescales to the original shot total.
MitigationResult mitigate_counts(const CountsTable& counts, const CalibrationData& calib);

struct ReconstructionReport {
  DensityMatrix rho_raw;
  DensityMatrix rho_projected;
  double fidelity_vs_theory = 0.0;
  double purity_raw = 0.0;
  double purity_projected = 0.0;
  double negativity = 0.0;
  double clipped_mass = 0.0;
  bool mitigated = false;
};

/// Stokes extraction plus linear inversion.
ComplexMatrix reconstruct_from_counts(std::span<const CountsTable> all_counts, std::size_t n_qubits);

ReconstructionReport make_reconstruction_report(const ComplexMatrix& raw, const DensityMatrix& rho_theory,
                                                bool mitigated, double clipped_mass = 0.0);

}  // namespace qdarwin
