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

#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qdarwin/circuit.hpp"
#include "qdarwin/infotheory.hpp"
#include "qdarwin/sampler.hpp"
#include "qdarwin/tomography.hpp"

namespace qdarwin {

using Json = nlohmann::json;

// Complex values are [re, im] pairs; matrices are arrays of rows.
Json complex_to_json(Complex z);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json state_to_json(const StateVector& psi);

// {"n_qubits": n, "gates": [{"kind": "U"|"CU", "theta", "phi", "lambda",
// "gamma", "target", "control"}]}
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

// {"setting": "XYZ", "shots": int, "counts": {"010": number}}; zero entries
// are omitted.
Json counts_to_json(const CountsTable& t);
CountsTable counts_from_json(const Json& j);

Json calibration_to_json(const CalibrationData& c);
Json reconstruction_to_json(const ReconstructionReport& r);
Json info_report_to_json(const InfoReport& r);

inline constexpr std::string_view kInfoCsvHeader = "fragment_fraction,mi,holevo,discord,source,config,seed";
/// One row per (report, fragment size). Raw-mode reports carry a "-raw"
/// suffix on the source column.
std::string info_reports_to_csv(std::span<const InfoReport> reports);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string sha256_hex(std::string_view data);

}  // namespace qdarwin
