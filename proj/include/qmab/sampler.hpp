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

// Shot-level measurement simulation, readout noise and count mitigation.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "qmab/qmath.hpp"
#include "qmab/rng.hpp"
#include "qmab/witness.hpp"

namespace qmab {

using Counts4 = std::array<std::uint64_t, 4>;

class MitigationUnavailable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Local readout noise. assignment(i, j) = P(observe i | true j) for one qubit;
/// qubit 0 is the left bit of the outcome bitstring.
struct NoiseModel {
    Eigen::Matrix2d assignment_q0 = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d assignment_q1 = Eigen::Matrix2d::Identity();
    bool enabled = false;

    static NoiseModel identity() { return {}; }

    /// Both qubits flip with probability p. `enabled` is set even for p = 0.
    static NoiseModel symmetric_flip(double p);

    /// Throws DomainError unless both matrices are column-stochastic.
    void validate() const;

    /// A_q0 x A_q1 acting on the four-outcome distribution.
    Eigen::Matrix4d joint() const;
};

/// Per-arm tallies under one measurement. Each time mitigation fires, the raw
/// shots in `block` are mitigated once and moved into `settled`; `working` is
/// always settled + block and feeds the estimators.
struct CountStore {
    Counts4 raw{};
    Counts4 working{};
    Counts4 settled{};
    Counts4 block{};
    std::uint64_t pulls = 0;
    std::uint64_t since_mitigation = 0;
    std::uint64_t mitigations = 0;
};

/// Inverse-CDF sampler over four outcome probabilities.
class OutcomeSampler {
  public:
    OutcomeSampler() = default;
    explicit OutcomeSampler(const OutcomeProbabilities &f);
    OutcomeSampler(const DensityMatrix &rho, const Wbm &measurement);

    /// Outcome in 1..4.
    int sample(Rng &rng) const;
    const OutcomeProbabilities &probabilities() const { return probs_; }

  private:
    OutcomeProbabilities probs_{0.25, 0.25, 0.25, 0.25};
    std::array<double, 3> cdf_{0.25, 0.5, 0.75};
};

int sample_outcome(const DensityMatrix &rho, const Wbm &measurement, Rng &rng);

/// Flips the two bits of `outcome` independently through the assignment
/// matrices. Returns `outcome` unchanged when the model is disabled.
int apply_readout_noise(int outcome, const NoiseModel &noise, Rng &rng);

/// (A_q0^-1 x A_q1^-1) applied to the empirical distribution, negatives clipped,
/// renormalised and rounded back to integers summing to the input total with
/// largest-remainder rounding. Throws MitigationUnavailable for a singular
/// assignment matrix.
Counts4 mitigate_counts(const Counts4 &counts, const NoiseModel &noise);

/// Mitigates store.block into store.settled and empties the block.
void mitigate_store(CountStore &store, const NoiseModel &noise);

/// Expected observed distribution (A_q0 x A_q1) f.
OutcomeProbabilities noisy_probabilities(const OutcomeProbabilities &f, const NoiseModel &noise);

/// <IZ>, <ZI>, <ZZ> parities of a four-outcome distribution.
struct PauliParities {
    double iz = 0.0;
    double zi = 0.0;
    double zz = 0.0;
};

PauliParities frequencies_to_parities(const OutcomeProbabilities &f);
OutcomeProbabilities parities_to_frequencies(const PauliParities &c);
PauliParities counts_to_parities(const Counts4 &counts);

/// Readout noise and nested mitigation for every arm. cadence = 0 disables
/// mitigation; otherwise it runs once every `cadence` shots per arm.
struct SamplingConfig {
    NoiseModel noise;
    std::uint64_t mitigation_cadence = 0;

    bool mitigation_enabled() const { return mitigation_cadence > 0; }
};

/// One shot: sample, apply noise, tally, and mitigate when the cadence is due.
int pull(const OutcomeSampler &sampler, const SamplingConfig &config, CountStore &store,
         Rng &rng);

/// Shot source for a single arm under a single measurement.
class ArmStream {
  public:
    ArmStream(const DensityMatrix &rho, const Wbm &measurement, SamplingConfig config, Rng rng);

    int pull() { return qmab::pull(sampler_, config_, store_, rng_); }

    const CountStore &store() const { return store_; }
    std::uint64_t pulls() const { return store_.pulls; }
    const OutcomeSampler &sampler() const { return sampler_; }

  private:
    OutcomeSampler sampler_;
    SamplingConfig config_;
    CountStore store_;
    Rng rng_;
};

}  // namespace qmab
