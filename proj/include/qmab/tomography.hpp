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

// Three-setting tomography baseline for Bell-diagonal states.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qmab/sampler.hpp"
#include "qmab/states.hpp"

namespace qmab {

enum class Correlator { XX, YY, ZZ };

using Correlators = std::array<double, 3>;

/// Tr(rho sigma x sigma).
double exact_correlator(const DensityMatrix &rho, Correlator which);
Correlators exact_correlators(const DensityMatrix &rho);

/// Mean of `shots` draws of +-1 with P(+1) = (1 + <sigma x sigma>)/2. With an
/// enabled noise model the ZZ setting reads both Z bits through the assignment
/// matrices; XX and YY stay ideal.
double measure_correlator(const DensityMatrix &rho, Correlator which, std::uint64_t shots,
                          Rng &rng, const NoiseModel &noise = NoiseModel::identity());

/// Rows of the sign matrix mapping (<XX>, <YY>, <ZZ>) to Bell weights.
inline constexpr std::array<std::array<int, 3>, 4> kBellSigns = {{
    {1, -1, 1},
    {1, 1, -1},
    {-1, -1, -1},
    {-1, 1, 1},
}};

/// p = (1 + A c)/4. Components may be negative for noisy input.
Probabilities4 reconstruct_bds(const Correlators &c);

struct ShotRequirement {
    std::uint64_t per_setting = 0;  // t
    std::uint64_t per_state = 0;    // N = 3t
};

/// t = ceil(9/(2 eps^2) ln(6/delta)), N = 3t.
ShotRequirement required_shots(double epsilon, double delta);

struct TomographyStateResult {
    Correlators c_hat{};
    Correlators c_true{};
    Probabilities4 p_hat{};
    bool entangled = false;
    bool truth = false;
    /// eps < |max p - 1/2| for the true weights.
    bool status_preserved = false;
    double max_correlator_error = 0.0;
    double trace_distance = 0.0;
};

struct TomographyResult {
    double epsilon = 0.0;
    double delta = 0.0;
    ShotRequirement shots;
    std::uint64_t total_copies = 0;
    std::uint64_t seed = 0;
    bool noise_enabled = false;
    std::vector<TomographyStateResult> states;
    /// Fraction of states whose flag equals the PPT truth.
    double accuracy = 0.0;
};

/// Measures every state with required_shots(epsilon, delta) copies and flags it
/// entangled iff max p_hat > 1/2. State i, setting s draws from the substream
/// derive_seed(seed, {i, s}).
TomographyResult classify_batch(const ProblemInstance &instance, double epsilon, double delta,
                                std::uint64_t seed,
                                const NoiseModel &noise = NoiseModel::identity());

}  // namespace qmab
