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

#include "qmab/verify.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qmab/witness.hpp"

namespace qmab {
namespace {

const std::array<BellState, 4> kBells{BellState::PhiPlus, BellState::PsiPlus, BellState::PsiMinus,
                                      BellState::PhiMinus};

TEST(Verify, AllChecksPass) {
    const auto checks = run_verify();
    EXPECT_EQ(checks.size(), 11u);
    for (const VerifyCheck &c : checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(Verify, PerturbationFailsOnlyClosure) {
    for (const VerifyCheck &c : run_verify({1e-3})) {
        if (c.name == "povm_closure") {
            EXPECT_FALSE(c.pass);
            EXPECT_NEAR(c.max_deviation, 1e-3, 1e-6);
        } else {
            EXPECT_TRUE(c.pass) << c.name;
        }
    }
}

TEST(ClosedForms, DepolarizedAndDetectingMeasurement) {
    EXPECT_NEAR(depolarized_bell_S(1.0 / 3.0), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(depolarized_bell_S(1.0), -1.0);
    EXPECT_EQ(detecting_wbm(BellState::PhiPlus), 2);
    EXPECT_EQ(detecting_wbm(BellState::PsiMinus), 1);
    EXPECT_EQ(detecting_wbm(Probabilities4{0.6, 0.2, 0.1, 0.1}), 2);
    EXPECT_EQ(detecting_wbm(Probabilities4{0.1, 0.1, 0.7, 0.1}), 1);
    EXPECT_EQ(detecting_wbm(Probabilities4{0.4, 0.3, 0.3, 0.0}), 0);
}

TEST(ClosedForms, FactorFourVariantMisclassifies) {
    const Probabilities4 p{0.4, 0.3, 0.3, 0.0};
    EXPECT_NEAR(bds_criterion_closed_form(p)[1], 0.2, 1e-15);
    EXPECT_NEAR(bds_factor4_variant(p), -0.28, 1e-15);
    EXPECT_NEAR(exact_S(bell_diagonal(p), wbm(2)), 0.2, 1e-12);
    EXPECT_FALSE(ppt_entangled(bell_diagonal(p)));
}

TEST(ClosedForms, DampedSpectrumMatchesNumerics) {
    for (BellState b : kBells)
        for (double w : {0.2, 0.5, 0.9})
            for (double r : {0.0, 0.3, 0.8}) {
                const DensityMatrix rho = amplitude_damp(depolarized_bell(b, w), r);
                Eigen::Vector4d numeric = hermitian_eigs(partial_transpose_b(rho.matrix())).values;
                auto closed = damped_ppt_eigenvalues(b, w, r);
                std::sort(closed.begin(), closed.end());
                for (int k = 0; k < 4; ++k) EXPECT_NEAR(closed[k], numeric(k), 1e-12);
            }
}

TEST(ClosedForms, PrintedPhiVariantIsOffSpectrum) {
    EXPECT_NEAR(damped_phi_printed_variant(0.5, 0.2), -0.095, 1e-15);
    EXPECT_NEAR(min_ppt_eigenvalue(amplitude_damp(depolarized_bell(BellState::PhiPlus, 0.5), 0.2)),
                -0.04, 1e-12);
}

TEST(DampingThreshold, PhiBoundary) {
    for (double w : {0.4, 0.5, 0.7, 0.95})
        for (BellState b : {BellState::PhiPlus, BellState::PhiMinus})
            EXPECT_NEAR(damping_threshold(b, w), (3 * w - 1) / (1 + w), 1e-9);
    EXPECT_THROW(damping_threshold(BellState::PhiPlus, 0.3), DomainError);
    EXPECT_THROW(damping_threshold(BellState::PhiPlus, 1.0), DomainError);
}

TEST(DampingThreshold, PsiBoundarySeparatesSigns) {
    const double golden = (std::sqrt(5.0) - 1) / 2;
    for (double w : {0.4, 0.5, 0.6}) {
        const double r = damping_threshold(BellState::PsiPlus, w);
        ASSERT_LT(r, 1.0 - 1e-6);
        const DensityMatrix base = depolarized_bell(BellState::PsiPlus, w);
        EXPECT_LT(min_ppt_eigenvalue(amplitude_damp(base, r - 1e-4)), 0.0);
        EXPECT_GT(min_ppt_eigenvalue(amplitude_damp(base, r + 1e-4)), 0.0);
    }
    for (double w : {golden + 1e-3, 0.8, 0.99}) {
        EXPECT_NEAR(damping_threshold(BellState::PsiMinus, w), 1.0, 1e-9);
        EXPECT_LT(min_ppt_eigenvalue(amplitude_damp(depolarized_bell(BellState::PsiMinus, w), 0.999)),
                  0.0);
    }
}

}  // namespace
}  // namespace qmab
