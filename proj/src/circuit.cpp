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

#include "qdarwin/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdarwin/error.hpp"
#include "qdarwin/simd/kernels.hpp"

namespace qdarwin {
namespace {

constexpr double kPi = std::numbers::pi;

void check_gate(const GateSpec& g, std::size_t n_qubits) {
  if (g.target >= n_qubits) throw InvalidArgument("Circuit: target qubit " + std::to_string(g.target) + " out of range");
  if (g.kind == GateKind::CU2Q) {
    if (!g.control) throw InvalidArgument("Circuit: controlled gate without control qubit");
    if (*g.control >= n_qubits) throw InvalidArgument("Circuit: control qubit out of range");
    if (*g.control == g.target) throw InvalidArgument("Circuit: control equals target");
  } else if (g.control) {
    throw InvalidArgument("Circuit: single-qubit gate carries a control index");
  }
}

std::size_t stride_of(std::size_t qubit, std::size_t n_qubits) { return std::size_t{1} << (n_qubits - 1 - qubit); }

}  // namespace

GateSpec GateSpec::u(double theta, double phi, double lambda, std::size_t target) {
  return GateSpec{GateKind::U1Q, theta, phi, lambda, 0.0, target, std::nullopt};
}

GateSpec GateSpec::cu(double theta, double phi, double lambda, double gamma, std::size_t control, std::size_t target) {
  return GateSpec{GateKind::CU2Q, theta, phi, lambda, gamma, target, control};
}

Circuit::Circuit(std::size_t n_qubits, std::vector<GateSpec> gates) : n_qubits_(n_qubits), gates_(std::move(gates)) {
  if (n_qubits == 0 || n_qubits > 30) throw InvalidArgument("Circuit: width must be in 1..30");
  for (const auto& g : gates_) check_gate(g, n_qubits_);
}

void Circuit::append(const GateSpec& gate) {
  check_gate(gate, n_qubits_);
  gates_.push_back(gate);
}

void Circuit::append(const Circuit& suffix) {
  if (suffix.n_qubits() != n_qubits_) throw InvalidArgument("Circuit: width mismatch when appending");
  gates_.insert(gates_.end(), suffix.gates().begin(), suffix.gates().end());
}

void DarwinismConfig::validate() const {
  if (n_env < 1) throw InvalidArgument("DarwinismConfig: need at least one environment qubit");
  if (interaction_strengths.size() != n_env) {
    throw InvalidArgument("DarwinismConfig: expected " + std::to_string(n_env) + " interaction strengths, got " +
                          std::to_string(interaction_strengths.size()));
  }
  if (n_qubits() > qubit_cap) {
    throw InvalidArgument("DarwinismConfig: " + std::to_string(n_qubits()) + " qubits exceeds the cap of " +
                          std::to_string(qubit_cap));
  }
}

ComplexMatrix u_gate_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex i{0.0, 1.0};
  return ComplexMatrix{
      {c, -std::exp(i * lambda) * s},
      {std::exp(i * phi) * s, std::exp(i * (phi + lambda)) * c},
  };
}

ComplexMatrix cu_gate_matrix(double theta, double phi, double lambda, double gamma) {
  const ComplexMatrix u = u_gate_matrix(theta, phi, lambda);
  const Complex g = std::exp(Complex{0.0, gamma});
  ComplexMatrix out = ComplexMatrix::identity(4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) out(2 + r, 2 + c) = g * u(r, c);
  return out;
}

Circuit build_darwinism_circuit(const DarwinismConfig& cfg) {
  cfg.validate();
  Circuit circuit(cfg.n_qubits());
  circuit.append(GateSpec::u(cfg.theta_system, 0.0, 0.0, 0));
  for (std::size_t i = 1; i <= cfg.n_env; ++i) {
    circuit.append(GateSpec::cu(cfg.interaction_strengths[i - 1], 0.0, 0.0, 0.0, 0, i));
  }
  return circuit;
}

StateVector simulate_statevector(const Circuit& circuit) {
  return simulate_statevector(circuit, StateVector(circuit.n_qubits()));
}

StateVector simulate_statevector(const Circuit& circuit, StateVector state) {
  if (state.n_qubits() != circuit.n_qubits()) throw InvalidArgument("simulate_statevector: width mismatch");
  const std::size_t n = circuit.n_qubits();
  const auto& kernels = simd::active_kernels();
  auto amps = state.mutable_amplitudes();
  for (const auto& g : circuit.gates()) {
    ComplexMatrix u = u_gate_matrix(g.theta, g.phi, g.lambda);
    if (g.kind == GateKind::U1Q) {
      kernels.apply_1q(amps.data(), amps.size(), stride_of(g.target, n), u.entries().data());
    } else {
      u *= std::exp(Complex{0.0, g.gamma});
      kernels.apply_controlled_1q(amps.data(), amps.size(), stride_of(*g.control, n), stride_of(g.target, n),
                                  u.entries().data());
    }
  }
  return state;
}

StateVector theoretical_state(const DarwinismConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n_qubits();
  const std::size_t half = std::size_t{1} << cfg.n_env;
  const double alpha = std::cos(cfg.theta_system / 2.0);
  const double beta = std::sin(cfg.theta_system / 2.0);
  std::vector<Complex> amps(std::size_t{1} << n);
  amps[0] = alpha;
  for (std::size_t env = 0; env < half; ++env) {
    double a = beta;
    for (std::size_t i = 1; i <= cfg.n_env; ++i) {
      const bool one = (env >> (cfg.n_env - i)) & 1U;
      const double t = cfg.interaction_strengths[i - 1] / 2.0;
      a *= one ? std::sin(t) : std::cos(t);
    }
    amps[half | env] = a;
  }
  // Renormalize away rounding so the StateVector invariant holds exactly.
  double norm = 0.0;
  for (const auto& z : amps) norm += std::norm(z);
  for (auto& z : amps) z /= std::sqrt(norm);
  return StateVector(n, std::move(amps));
}

std::vector<double> interaction_strengths(std::size_t total_qubits, StrengthVariant variant) {
  if (total_qubits < 2 || total_qubits > 6) {
    throw InvalidArgument("interaction_strengths: no tabulated case for " + std::to_string(total_qubits) + " qubits");
  }
  const std::size_t n_env = total_qubits - 1;
  if (variant == StrengthVariant::A) return std::vector<double>(n_env, kPi);
  // B: the last two environment qubits (only one for the 2-qubit case) get
  // weaker couplings 2pi/5 and 5pi/9; the rest are fully coupled.
  if (n_env == 1) return {2.0 * kPi / 5.0};
  std::vector<double> out(n_env - 2, kPi);
  out.push_back(2.0 * kPi / 5.0);
  out.push_back(5.0 * kPi / 9.0);
  return out;
}

DarwinismConfig standard_config(std::size_t total_qubits, StrengthVariant variant) {
  DarwinismConfig cfg;
  cfg.n_env = total_qubits - 1;
  cfg.theta_system = kPi / 2.0;
  cfg.interaction_strengths = interaction_strengths(total_qubits, variant);
  return cfg;
}

}  // namespace qdarwin
