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

#include "qmab/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace qmab {

namespace {

Matrix2c single(Correlator which) {
    switch (which) {
    case Correlator::XX: return pauli::x();
    case Correlator::YY: return pauli::y();
    case Correlator::ZZ: return pauli::z();
    }
    throw DomainError("unknown correlator");
}

}  // namespace

double exact_correlator(const DensityMatrix &rho, Correlator which) {
    const Matrix2c s = single(which);
    return expectation(rho, tensor(s, s));
}

Correlators exact_correlators(const DensityMatrix &rho) {
    return {exact_correlator(rho, Correlator::XX), exact_correlator(rho, Correlator::YY),
            exact_correlator(rho, Correlator::ZZ)};
}

double measure_correlator(const DensityMatrix &rho, Correlator which, std::uint64_t shots,
                          Rng &rng, const NoiseModel &noise) {
    if (shots == 0) throw DomainError("measure_correlator: shots must be >= 1");
    double p_plus = 0.0;
    if (which == Correlator::ZZ && noise.enabled) {
        const Matrix4c &m = rho.matrix();
        const OutcomeProbabilities diag{m(0, 0).real(), m(1, 1).real(), m(2, 2).real(),
                                        m(3, 3).real()};
        const OutcomeProbabilities g = noisy_probabilities(diag, noise);
        p_plus = g[0] + g[3];
    } else {
        p_plus = 0.5 * (1.0 + exact_correlator(rho, which));
    }
    p_plus = std::clamp(p_plus, 0.0, 1.0);
    const std::uint64_t k = rng.binomial(shots, p_plus);
    return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

Probabilities4 reconstruct_bds(const Correlators &c) {
    Probabilities4 p{};
    for (std::size_t i = 0; i < 4; ++i) {
        double acc = 1.0;
        for (std::size_t j = 0; j < 3; ++j) acc += kBellSigns[i][j] * c[j];
        p[i] = 0.25 * acc;
    }
    return p;
}

ShotRequirement required_shots(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    ShotRequirement r;
    r.per_setting = static_cast<std::uint64_t>(
        std::ceil(9.0 / (2.0 * epsilon * epsilon) * std::log(6.0 / delta)));
    r.per_state = 3 * r.per_setting;
    return r;
}

TomographyResult classify_batch(const ProblemInstance &instance, double epsilon, double delta,
                                std::uint64_t seed, const NoiseModel &noise) {
    noise.validate();
    TomographyResult out;
    out.epsilon = epsilon;
    out.delta = delta;
    out.shots = required_shots(epsilon, delta);
    out.seed = seed;
    out.noise_enabled = noise.enabled;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < instance.K(); ++i) {
        const DensityMatrix &rho = instance.states[i];
        TomographyStateResult s;
        s.c_true = exact_correlators(rho);
        for (std::size_t k = 0; k < 3; ++k) {
            Rng rng = Rng::substream(seed, {i, k});
            s.c_hat[k] = measure_correlator(rho, static_cast<Correlator>(k),
                                            out.shots.per_setting, rng, noise);
            s.max_correlator_error =
                std::max(s.max_correlator_error, std::abs(s.c_hat[k] - s.c_true[k]));
        }
        s.p_hat = reconstruct_bds(s.c_hat);
        const Probabilities4 p_true = reconstruct_bds(s.c_true);
        for (std::size_t k = 0; k < 4; ++k) s.trace_distance += 0.5 * std::abs(s.p_hat[k] - p_true[k]);
        s.entangled = *std::max_element(s.p_hat.begin(), s.p_hat.end()) > 0.5;
        s.truth = instance.truth[i];
        s.status_preserved =
            epsilon < std::abs(*std::max_element(p_true.begin(), p_true.end()) - 0.5);
        if (s.entangled == s.truth) ++correct;
        out.states.push_back(s);
        out.total_copies += out.shots.per_state;
    }
    out.accuracy = instance.K() == 0 ? 1.0
                                     : static_cast<double>(correct) /
                                           static_cast<double>(instance.K());
    return out;
}

}  // namespace qmab
