// Copyright 2026 The qmab Authors
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

// JSON encodings of instances, noise models and run results. Doubles are
// written in shortest round-trip form, so reloading reproduces every bit.

#pragma once

#include <string>

#include <json.hpp>

#include "qmab/sweeps.hpp"
#include "qmab/tomography.hpp"
#include "qmab/workflow.hpp"

namespace qmab {

using Json = nlohmann::ordered_json;

/// Library version string.
std::string version();

Json matrix_to_json(const ComplexMatrix &m);
Matrix4c matrix4_from_json(const Json &j);

Json to_json(const StateSpec &spec);
StateSpec state_spec_from_json(const Json &j);

/// {"schema", "K", "m", "states": [{"spec", "rho", "entangled", "exact_S"}]}.
Json to_json(const ProblemInstance &instance);

/// The stored density matrices are authoritative; truth flags and criterion
/// values are recomputed on load.
ProblemInstance instance_from_json(const Json &j);

Json to_json(const NoiseModel &noise);
NoiseModel noise_from_json(const Json &j);

Json to_json(const PolicyConfig &config);
Json to_json(const RunRecord &record);
Json to_json(const WorkflowResult &result);
Json to_json(const TomographyResult &result);
Json to_json(const CorrectnessRow &row);

/// {"version", "seed", "config"} block embedded in every artifact.
Json artifact_metadata(std::uint64_t seed, const Json &config);

/// Two-space indentation plus a trailing newline.
std::string dump(const Json &j);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

}  // namespace qmab
