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

#include "qmab/workflow.hpp"

#include <atomic>
#include <cmath>

#include <gtest/gtest.h>

namespace qmab {
namespace {

PolicyConfig config_with(double delta, std::uint64_t seed, double zeta = 0.0) {
    PolicyConfig c;
    c.lil.delta = delta;
    c.seed = seed;
    c.zeta = zeta;
    return c;
}

// Roots of (phat - p)^2 = z^2 p (1 - p)/n.
WilsonInterval wilson_quadratic(double failures, double n, double z) {
    const double phat = failures / n;
    const double a = n + z * z;
    const double b = 2 * n * phat + z * z;
    const double disc = z * std::sqrt(z * z + 4 * n * phat * (1 - phat));
    return {(b - disc) / (2 * a), (b + disc) / (2 * a)};
}

TEST(Order, Validation) {
    EXPECT_NO_THROW(validate_order(kDefaultOrder));
    EXPECT_NO_THROW(validate_order({6, 5, 4, 3, 2, 1}));
    EXPECT_THROW(validate_order({1, 1, 3, 4, 5, 6}), DomainError);
    EXPECT_THROW(validate_order({0, 2, 3, 4, 5, 6}), DomainError);
    EXPECT_THROW(validate_order({1, 2, 3, 4, 5, 7}), DomainError);
}

TEST(WorkflowBds, ReferenceInstance) {
    const ProblemInstance inst = reference_bds_instance();
    ASSERT_EQ(inst.entangled_arms(), (std::vector<std::size_t>{0, 1, 2}));
    for (std::uint64_t seed : {1, 2, 3}) {
        const WorkflowResult res = workflow_bds(inst, config_with(0.05, seed));
        EXPECT_TRUE(res.success);
        EXPECT_FALSE(res.cutoff_hit);
        ASSERT_EQ(res.phases.size(), 2u);
        EXPECT_EQ(res.wbms_used, 2);
        EXPECT_EQ(res.phases[0].wbm_id, 1);
        EXPECT_EQ(res.phases[1].wbm_id, 2);
        EXPECT_EQ(res.phases[0].flagged_arms, std::vector<std::size_t>{1});
        EXPECT_EQ(res.phases[1].arms, (std::vector<std::size_t>{0, 2, 3, 4}));
        EXPECT_EQ(res.phases[1].flagged_arms, (std::vector<std::size_t>{0, 2}));
        EXPECT_EQ(res.copies, res.phases[0].copies + res.phases[1].copies);
        EXPECT_EQ(res.pulls, res.phases[0].pulls + res.phases[1].pulls);
    }
}

TEST(WorkflowBds, FirstMeasurementSwapAndSplitDelta) {
    const ProblemInstance inst = reference_bds_instance();
    const WorkflowResult res = workflow_bds(inst, config_with(0.1, 4), 2, true);
    EXPECT_TRUE(res.success);
    EXPECT_EQ(res.phases[0].wbm_id, 2);
    EXPECT_EQ(res.phases[0].delta, 0.05);
    EXPECT_EQ(res.phases[1].delta, 0.05);
    EXPECT_EQ(res.phases[1].arms, (std::vector<std::size_t>{1, 3, 4}));
    EXPECT_THROW(workflow_bds(inst, config_with(0.1, 4), 3), DomainError);
}

TEST(WorkflowBds, PhaseSeedsAreDerived) {
    const ProblemInstance inst = reference_bds_instance();
    const WorkflowResult res = workflow_bds(inst, config_with(0.1, 5));
    EXPECT_EQ(res.phases[0].seed, derive_seed(5, {1}));
    EXPECT_EQ(res.phases[1].seed, derive_seed(5, {2}));
}

TEST(WorkflowArbitrary, StopsAtFirstSingleton) {
    const ProblemInstance inst = reference_bds_instance();
    const WorkflowResult res = workflow_arbitrary(inst, config_with(0.1, 6, kArbitraryZeta));
    EXPECT_EQ(res.wbms_used, 1);
    EXPECT_EQ(res.flagged_arms, std::vector<std::size_t>{1});
    EXPECT_FALSE(res.inconclusive);
    // Three arms are entangled, so a singleton is never a full success here.
    EXPECT_FALSE(res.success);
}

TEST(WorkflowArbitrary, RespectsOrder) {
    const ProblemInstance inst = reference_bds_instance();
    const WbmOrder order{3, 1, 4, 2, 6, 5};
    const WorkflowResult res = workflow_arbitrary(inst, config_with(0.1, 7, kArbitraryZeta), order);
    ASSERT_GE(res.phases.size(), 1u);
    for (std::size_t p = 0; p < res.phases.size(); ++p) {
        EXPECT_EQ(res.phases[p].wbm_id, order[p]);
        EXPECT_EQ(res.phases[p].seed, derive_seed(7, {p + 1}));
        if (p + 1 < res.phases.size()) EXPECT_NE(res.phases[p].flagged_arms.size(), 1u);
    }
    EXPECT_EQ(res.phases.back().flagged_arms.size(), 1u);
    EXPECT_THROW(workflow_arbitrary(inst, config_with(0.1, 7), {1, 1, 2, 3, 4, 5}), DomainError);
}

TEST(WorkflowArbitrary, UndetectableArmIsInconclusive) {
    const ProblemInstance inst = outlier_instance(5, 11);
    ASSERT_EQ(inst.entangled_arms(), std::vector<std::size_t>{0});
    for (double s : inst.exact_S[0]) ASSERT_GT(s, 0.0);
    const WorkflowResult res = workflow_arbitrary(inst, config_with(0.05, 8, kArbitraryZeta));
    EXPECT_TRUE(res.inconclusive);
    EXPECT_FALSE(res.success);
    EXPECT_EQ(res.wbms_used, 6);
    EXPECT_FALSE(res.cutoff_hit);
}

TEST(Wilson, MatchesQuadraticRoots) {
    for (std::uint64_t n : {1, 10, 200, 5000})
        for (std::uint64_t k : {std::uint64_t{0}, n / 10, n / 2, n}) {
            const WilsonInterval w = wilson_interval(k, n);
            const WilsonInterval q = wilson_quadratic(double(k), double(n), 1.959963984540054);
            EXPECT_NEAR(w.lo, std::max(0.0, q.lo), 1e-12) << k << "/" << n;
            EXPECT_NEAR(w.hi, std::min(1.0, q.hi), 1e-12) << k << "/" << n;
        }
    const WilsonInterval none = wilson_interval(0, 0);
    EXPECT_EQ(none.lo, 0.0);
    EXPECT_EQ(none.hi, 1.0);
    const WilsonInterval w = wilson_interval(0, 200);
    EXPECT_EQ(w.lo, 0.0);
    EXPECT_NEAR(w.hi, 0.0188, 1e-4);
}

TEST(Harness, TargetsPerPolicy) {
    const ProblemInstance inst = reference_bds_instance();
    HarnessConfig c;
    c.policy = HarnessPolicy::SuccessiveElimination;
    c.wbm_id = 2;
    EXPECT_EQ(harness_target(inst, c), std::vector<std::size_t>{2});
    c.policy = HarnessPolicy::LilHdoc;
    EXPECT_EQ(harness_target(inst, c), (std::vector<std::size_t>{0, 2}));
    c.base.zeta = 0.3;
    EXPECT_EQ(harness_target(inst, c), (std::vector<std::size_t>{0, 2, 3}));
    c.policy = HarnessPolicy::WorkflowBds;
    EXPECT_EQ(harness_target(inst, c), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Harness, DeltaCorrectnessAndThreadIndependence) {
    const ProblemInstance inst = reference_bds_instance();
    HarnessConfig c;
    c.policy = HarnessPolicy::LilHdoc;
    c.deltas = {0.2};
    c.trials = 16;
    c.master_seed = 9;
    const auto serial = delta_correctness_harness(inst, c);
    c.parallel = 3;
    const auto threaded = delta_correctness_harness(inst, c);
    ASSERT_EQ(serial.size(), 1u);
    EXPECT_TRUE(serial[0].pass);
    EXPECT_EQ(serial[0].trials, 16u);
    EXPECT_EQ(serial[0].errors, threaded[0].errors);
    EXPECT_EQ(serial[0].mean_copies, threaded[0].mean_copies);
    EXPECT_NEAR(serial[0].error_rate, double(serial[0].errors) / 16, 1e-15);
    c.trials = 0;
    EXPECT_THROW(delta_correctness_harness(inst, c), DomainError);
}

TEST(ParallelFor, CoversEveryIndexOnce) {
    for (unsigned workers : {1u, 2u, 4u}) {
        std::vector<std::atomic<int>> hits(100);
        parallel_for(100, workers, [&](std::size_t i) { ++hits[i]; });
        for (auto &h : hits) EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) {
                     if (i == 5) throw DomainError("boom");
                 }),
                 DomainError);
}

}  // namespace
}  // namespace qmab
