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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qmab {

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives a substream seed from a master seed and a path of indices
/// (e.g. {trial, phase, arm}) by chaining SplitMix64. Distinct paths give
/// statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seeded random source: a 64-bit Mersenne Twister plus the few draws the
/// simulators need. Outputs are a deterministic function of the seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    static Rng substream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        return Rng(derive_seed(master, path));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() { return normal_(engine_); }

    /// Exponential(1), used for Dirichlet-uniform weights.
    double exponential() { return exponential_(engine_); }

    std::uint64_t binomial(std::uint64_t trials, double p);

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace qmab
