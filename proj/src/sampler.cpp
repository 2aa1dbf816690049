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

#include "qmab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmab {

NoiseModel NoiseModel::symmetric_flip(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("flip probability must lie in [0, 1]");
    NoiseModel n;
    n.assignment_q0 << 1.0 - p, p, p, 1.0 - p;
    n.assignment_q1 = n.assignment_q0;
    n.enabled = true;
    return n;
}

void NoiseModel::validate() const {
    for (const Eigen::Matrix2d *a : {&assignment_q0, &assignment_q1}) {
        for (int j = 0; j < 2; ++j) {
            if ((*a)(0, j) < 0.0 || (*a)(1, j) < 0.0 || (*a)(0, j) > 1.0 || (*a)(1, j) > 1.0) {
                throw DomainError("assignment matrix entries must lie in [0, 1]");
            }
            if (std::abs((*a)(0, j) + (*a)(1, j) - 1.0) > Tolerance::kArithmetic) {
                throw DomainError("assignment matrix columns must sum to 1");
            }
        }
    }
}

Eigen::Matrix4d NoiseModel::joint() const {
    Eigen::Matrix4d out;
    for (int i0 = 0; i0 < 2; ++i0)
        for (int i1 = 0; i1 < 2; ++i1)
            for (int j0 = 0; j0 < 2; ++j0)
                for (int j1 = 0; j1 < 2; ++j1)
                    out(2 * i0 + i1, 2 * j0 + j1) = assignment_q0(i0, j0) * assignment_q1(i1, j1);
    return out;
}

OutcomeSampler::OutcomeSampler(const OutcomeProbabilities &f) : probs_(f) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        acc += f[j];
        cdf_[j] = acc;
    }
}

OutcomeSampler::OutcomeSampler(const DensityMatrix &rho, const Wbm &measurement)
    : OutcomeSampler(outcome_probs(rho, measurement)) {}

int OutcomeSampler::sample(Rng &rng) const {
    const double u = rng.uniform();
    if (u < cdf_[0]) return 1;
    if (u < cdf_[1]) return 2;
    if (u < cdf_[2]) return 3;
    return 4;
}

int sample_outcome(const DensityMatrix &rho, const Wbm &measurement, Rng &rng) {
    return OutcomeSampler(rho, measurement).sample(rng);
}

int apply_readout_noise(int outcome, const NoiseModel &noise, Rng &rng) {
    if (!noise.enabled) return outcome;
    const int b0 = (outcome - 1) >> 1;
    const int b1 = (outcome - 1) & 1;
    const int o0 = rng.uniform() < noise.assignment_q0(1, b0) ? 1 : 0;
    const int o1 = rng.uniform() < noise.assignment_q1(1, b1) ? 1 : 0;
    return outcome_from_bits(o0, o1);
}

Counts4 mitigate_counts(const Counts4 &counts, const NoiseModel &noise) {
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) return counts;
    const double d0 = noise.assignment_q0.determinant();
    const double d1 = noise.assignment_q1.determinant();
    if (std::abs(d0) < Tolerance::kArithmetic || std::abs(d1) < Tolerance::kArithmetic) {
        throw MitigationUnavailable("assignment matrix is singular");
    }
    Eigen::Vector4d f;
    for (int j = 0; j < 4; ++j) f(j) = static_cast<double>(counts[j]) / static_cast<double>(total);
    Eigen::Matrix4d inv;
    const Eigen::Matrix2d i0 = noise.assignment_q0.inverse();
    const Eigen::Matrix2d i1 = noise.assignment_q1.inverse();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) inv(a, b) = i0(a >> 1, b >> 1) * i1(a & 1, b & 1);
    Eigen::Vector4d g = inv * f;
    g = g.cwiseMax(0.0);
    g /= g.sum();

    Counts4 out{};
    std::array<double, 4> remainder{};
    std::uint64_t assigned = 0;
    for (int j = 0; j < 4; ++j) {
        const double exact = g(j) * static_cast<double>(total);
        out[j] = static_cast<std::uint64_t>(std::floor(exact));
        remainder[j] = exact - static_cast<double>(out[j]);
        assigned += out[j];
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[order[k % 4]];
    while (assigned > total) {
        // Floating-point overshoot; take from the largest bucket.
        auto it = std::max_element(out.begin(), out.end());
        --*it;
        --assigned;
    }
    return out;
}

void mitigate_store(CountStore &store, const NoiseModel &noise) {
    const Counts4 fixed = mitigate_counts(store.block, noise);
    for (std::size_t j = 0; j < 4; ++j) store.settled[j] += fixed[j];
    store.block = Counts4{};
    store.working = store.settled;
    store.since_mitigation = 0;
    ++store.mitigations;
}

OutcomeProbabilities noisy_probabilities(const OutcomeProbabilities &f, const NoiseModel &noise) {
    if (!noise.enabled) return f;
    const Eigen::Vector4d g = noise.joint() * Eigen::Vector4d(f[0], f[1], f[2], f[3]);
    return {g(0), g(1), g(2), g(3)};
}

PauliParities frequencies_to_parities(const OutcomeProbabilities &f) {
    return {f[0] - f[1] + f[2] - f[3], f[0] + f[1] - f[2] - f[3], f[0] - f[1] - f[2] + f[3]};
}

OutcomeProbabilities parities_to_frequencies(const PauliParities &c) {
    return {0.25 * (1.0 + c.iz + c.zi + c.zz), 0.25 * (1.0 - c.iz + c.zi - c.zz),
            0.25 * (1.0 + c.iz - c.zi - c.zz), 0.25 * (1.0 - c.iz - c.zi + c.zz)};
}

PauliParities counts_to_parities(const Counts4 &counts) {
    const double n = static_cast<double>(counts[0] + counts[1] + counts[2] + counts[3]);
    OutcomeProbabilities f{};
    for (int j = 0; j < 4; ++j) f[j] = static_cast<double>(counts[j]) / n;
    return frequencies_to_parities(f);
}

int pull(const OutcomeSampler &sampler, const SamplingConfig &config, CountStore &store,
         Rng &rng) {
    const int outcome = apply_readout_noise(sampler.sample(rng), config.noise, rng);
    ++store.raw[outcome - 1];
    ++store.working[outcome - 1];
    ++store.block[outcome - 1];
    ++store.pulls;
    if (config.mitigation_enabled()) {
        if (++store.since_mitigation >= config.mitigation_cadence) {
            mitigate_store(store, config.noise);
        }
    }
    return outcome;
}

ArmStream::ArmStream(const DensityMatrix &rho, const Wbm &measurement, SamplingConfig config,
                     Rng rng)
    : sampler_(rho, measurement), config_(std::move(config)), rng_(std::move(rng)) {
    config_.noise.validate();
}

}  // namespace qmab
