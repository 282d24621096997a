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

#include "qdarwin/serialize.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <sstream>

#include "qdarwin/error.hpp"

namespace qdarwin {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("matrix_from_json: expected a non-empty array of rows");
  const std::size_t d = j.size();
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!j[r].is_array() || j[r].size() != d) throw InvalidArgument("matrix_from_json: matrix is not square");
    for (std::size_t c = 0; c < d; ++c) {
      const Json& z = j[r][c];
      if (!z.is_array() || z.size() != 2) throw InvalidArgument("matrix_from_json: entries must be [re, im] pairs");
      m(r, c) = Complex{z[0].get<double>(), z[1].get<double>()};
    }
  }
  return m;
}

Json state_to_json(const StateVector& psi) {
  Json amps = Json::array();
  for (const auto& a : psi.amplitudes()) amps.push_back(complex_to_json(a));
  return {{"n_qubits", psi.n_qubits()}, {"amplitudes", std::move(amps)}};
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const auto& g : c.gates()) {
    Json jg{{"kind", g.kind == GateKind::U1Q ? "U" : "CU"},
            {"theta", g.theta},
            {"phi", g.phi},
            {"lambda", g.lambda},
            {"target", g.target}};
    if (g.kind == GateKind::CU2Q) {
      jg["gamma"] = g.gamma;
      jg["control"] = *g.control;
    }
    gates.push_back(std::move(jg));
  }
  return {{"n_qubits", c.n_qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    Circuit c(j.at("n_qubits").get<std::size_t>());
    for (const auto& jg : j.at("gates")) {
      const auto kind = jg.at("kind").get<std::string>();
      const double theta = jg.at("theta").get<double>();
      const double phi = jg.at("phi").get<double>();
      const double lambda = jg.at("lambda").get<double>();
      const auto target = jg.at("target").get<std::size_t>();
      if (kind == "U") {
        c.append(GateSpec::u(theta, phi, lambda, target));
      } else if (kind == "CU") {
        c.append(GateSpec::cu(theta, phi, lambda, jg.at("gamma").get<double>(), jg.at("control").get<std::size_t>(), target));
      } else {
        throw InvalidArgument("circuit_from_json: unknown gate kind '" + kind + "'");
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("circuit_from_json: ") + e.what());
  }
}

Json counts_to_json(const CountsTable& t) {
  Json counts = Json::object();
  for (std::size_t b = 0; b < t.counts.size(); ++b) {
    if (t.counts[b] != 0.0) counts[outcome_bits(b, t.n_qubits())] = t.counts[b];
  }
  return {{"setting", t.setting.label()}, {"shots", t.shots}, {"counts", std::move(counts)}};
}

CountsTable counts_from_json(const Json& j) {
  try {
    CountsTable t;
    t.setting = MeasurementSetting::from_label(j.at("setting").get<std::string>());
    t.shots = j.at("shots").get<std::uint64_t>();
    const std::size_t n = t.n_qubits();
    t.counts.assign(std::size_t{1} << n, 0.0);
    for (const auto& [bits, value] : j.at("counts").items()) {
      if (bits.size() != n) throw InvalidArgument("counts_from_json: bitstring width does not match setting");
      const double v = value.get<double>();
      if (v < 0.0) throw InvalidArgument("counts_from_json: negative count");
      t.counts[outcome_index(bits)] = v;
    }
    return t;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("counts_from_json: ") + e.what());
  }
}

Json calibration_to_json(const CalibrationData& c) {
  Json matrices = Json::array();
  for (const auto& a : c.confusion) matrices.push_back(Json::array({Json::array({a[0], a[1]}), Json::array({a[2], a[3]})}));
  return {{"confusion", std::move(matrices)}, {"ill_conditioned", c.ill_conditioned}, {"warnings", c.warnings}};
}

Json reconstruction_to_json(const ReconstructionReport& r) {
  return {{"mitigated", r.mitigated},
          {"fidelity_vs_theory", r.fidelity_vs_theory},
          {"purity_raw", r.purity_raw},
          {"purity_projected", r.purity_projected},
          {"purity_raw_exceeds_one", r.purity_raw > 1.0},
          {"negativity", r.negativity},
          {"clipped_mass", r.clipped_mass},
          {"rho_raw", matrix_to_json(r.rho_raw.mat())},
          {"rho_projected", matrix_to_json(r.rho_projected.mat())}};
}

Json info_report_to_json(const InfoReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"fragment_size", row.fragment_size},
                    {"fragment_fraction", row.fragment_fraction},
                    {"mi", row.mi},
                    {"holevo", row.holevo},
                    {"discord", row.discord}});
  }
  return {{"source", r.source},     {"mode", r.mode},
          {"config", r.config},     {"seed", r.seed},
          {"ordering", r.ordering}, {"negative_mi", r.has_negative_mi()},
          {"rows", std::move(rows)}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string info_reports_to_csv(std::span<const InfoReport> reports) {
  std::ostringstream out;
  out << kInfoCsvHeader << '\n';
  for (const auto& r : reports) {
    const std::string source = r.mode == "raw" ? r.source + "-raw" : r.source;
    for (const auto& row : r.rows) {
      out << format_double(row.fragment_fraction) << ',' << format_double(row.mi) << ',' << format_double(row.holevo)
          << ',' << format_double(row.discord) << ',' << source << ',' << r.config << ',' << r.seed << '\n';
    }
  }
  return out.str();
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("sha256_hex: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace qdarwin
