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

// Detection pipelines built from the bandit policies, and the correctness harness.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmab/bandit.hpp"

namespace qmab {

inline constexpr double kArbitraryZeta = -1e-3;

using WbmOrder = std::array<int, kNumWbms>;
inline constexpr WbmOrder kDefaultOrder = {1, 2, 3, 4, 5, 6};

/// Throws DomainError unless `order` is a permutation of 1..6.
void validate_order(const WbmOrder &order);

struct WorkflowResult {
    std::string workflow;
    std::vector<std::size_t> flagged_arms;
    std::vector<RunRecord> phases;
    std::uint64_t pulls = 0;
    std::uint64_t copies = 0;
    int wbms_used = 0;
    bool success = false;
    bool inconclusive = false;
    bool cutoff_hit = false;
};

/// Phase 1 runs lil'HDoC under `first_wbm` (1 or 2) on every arm; phase 2 runs
/// the other measurement on the arms phase 1 left unflagged. With
/// `split_delta` each phase gets delta/2. Phase p draws from
/// derive_seed(base.seed, {p}).
WorkflowResult workflow_bds(const ProblemInstance &instance, const PolicyConfig &base,
                            int first_wbm = 1, bool split_delta = false);

/// Runs lil'HDoC on all arms under order[0], order[1], ... until a phase flags
/// exactly one arm. Six phases without a singleton give an inconclusive result.
/// The caller chooses zeta (kArbitraryZeta in the experiments).
WorkflowResult workflow_arbitrary(const ProblemInstance &instance, const PolicyConfig &base,
                                  const WbmOrder &order = kDefaultOrder);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// 95% Wilson score interval for `failures` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials,
                               double z = 1.959963984540054);

enum class HarnessPolicy { SuccessiveElimination, LilHdoc, WorkflowBds, WorkflowArbitrary };

struct HarnessConfig {
    HarnessPolicy policy = HarnessPolicy::LilHdoc;
    PolicyConfig base;
    std::vector<double> deltas;
    std::uint64_t trials = 200;
    std::uint64_t master_seed = 0;
    int wbm_id = 1;
    int first_wbm = 1;
    bool split_delta = false;
    WbmOrder order = kDefaultOrder;
    unsigned parallel = 1;
};

struct CorrectnessRow {
    double delta = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t cutoffs = 0;
    double error_rate = 0.0;
    WilsonInterval wilson;
    double mean_copies = 0.0;
    /// wilson.lo <= delta.
    bool pass = false;
};

/// Target flag set for a harness run: the arm with the smallest criterion value
/// (successive elimination), arms with criterion value below zeta (lil'HDoC),
/// or the PPT truth (workflows).
std::vector<std::size_t> harness_target(const ProblemInstance &instance, const HarnessConfig &config);

/// Trial r of every delta uses the seed derive_seed(master_seed, {r}).
std::vector<CorrectnessRow> delta_correctness_harness(const ProblemInstance &instance,
                                                      const HarnessConfig &config);

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Callers write results
/// into slot i, which keeps the output independent of scheduling.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn);

}  // namespace qmab
