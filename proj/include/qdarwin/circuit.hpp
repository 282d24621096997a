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
#include <optional>
#include <vector>

#include "qdarwin/complex_matrix.hpp"

namespace qdarwin {

enum class GateKind { U1Q, CU2Q };

/// U(theta, phi, lambda) on `target`, or its controlled form with an extra
/// global phase gamma on the controlled block.
struct GateSpec {
  GateKind kind = GateKind::U1Q;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;  // CU2Q only
  std::size_t target = 0;
  std::optional<std::size_t> control;  // CU2Q only

  static GateSpec u(double theta, double phi, double lambda, std::size_t target);
  static GateSpec cu(double theta, double phi, double lambda, double gamma, std::size_t control, std::size_t target);

  bool operator==(const GateSpec&) const = default;
};

class Circuit {
 public:
  /// Throws InvalidArgument for out-of-range indices or control == target.
  Circuit(std::size_t n_qubits, std::vector<GateSpec> gates = {});

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<GateSpec>& gates() const { return gates_; }
  void append(const GateSpec& gate);
  void append(const Circuit& suffix);

  bool operator==(const Circuit&) const = default;

 private:
  std::size_t n_qubits_;
  std::vector<GateSpec> gates_;
};

inline constexpr std::size_t kDefaultQubitCap = 7;

struct DarwinismConfig {
  std::size_t n_env = 1;
  double theta_system = 0.0;
  std::vector<double> interaction_strengths;
  std::size_t qubit_cap = kDefaultQubitCap;

  std::size_t n_qubits() const { return n_env + 1; }
  /// Throws InvalidArgument on inconsistent length or exceeded qubit cap.
  void validate() const;
};

enum class StrengthVariant { A, B };

/// 2x2 matrix [[cos, -e^{i lambda} sin], [e^{i phi} sin, e^{i(phi+lambda)} cos]]
/// of half-angle theta/2.
ComplexMatrix u_gate_matrix(double theta, double phi, double lambda);

/// 4x4 controlled-U with the control as the first tensor factor: identity on
/// the |0> block, e^{i gamma} U(theta, phi, lambda) on the |1> block.
ComplexMatrix cu_gate_matrix(double theta, double phi, double lambda, double gamma);

/// U(theta_S) on qubit 0, then cU(theta_i) controlled by 0 onto i = 1..N.
Circuit build_darwinism_circuit(const DarwinismConfig& cfg);

/// Evolves |0...0> (or `initial`) through every gate.
StateVector simulate_statevector(const Circuit& circuit);
StateVector simulate_statevector(const Circuit& circuit, StateVector initial);

/// Closed-form amplitudes: alpha |0>|0...0> + beta |1> (x)_i (cos(t_i/2)|0> + sin(t_i/2)|1>)
/// with alpha = cos(theta_S/2), beta = sin(theta_S/2).
StateVector theoretical_state(const DarwinismConfig& cfg);

/// Tabulated interaction strengths for total qubit count 2..6.
std::vector<double> interaction_strengths(std::size_t total_qubits, StrengthVariant variant);

/// Standard configuration: theta_S = pi/2 and the tabulated strengths.
DarwinismConfig standard_config(std::size_t total_qubits, StrengthVariant variant);

}  // namespace qdarwin
