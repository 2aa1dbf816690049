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

#include "qmab/states.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qmab/witness.hpp"

namespace qmab {
namespace {

std::array<double, 4> sorted_ppt_spectrum(const DensityMatrix &rho) {
    const auto ev = hermitian_eigs(partial_transpose_b(rho)).values;
    return {ev(0), ev(1), ev(2), ev(3)};
}

TEST(BellStates, OrthonormalBasis) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Complex ip = bell_vector(BellState(i)).dot(bell_vector(BellState(j)));
            EXPECT_NEAR(std::abs(ip), i == j ? 1.0 : 0.0, 1e-15);
        }
}

TEST(BellStates, ComputationalAmplitudes) {
    const double h = 1.0 / std::sqrt(2.0);
    const Vector4c phi_minus = bell_vector(BellState::PhiMinus);
    EXPECT_NEAR(phi_minus(0).real(), h, 1e-15);
    EXPECT_NEAR(phi_minus(3).real(), -h, 1e-15);
    const Vector4c psi_minus = bell_vector(BellState::PsiMinus);
    EXPECT_NEAR(psi_minus(1).real(), h, 1e-15);
    EXPECT_NEAR(psi_minus(2).real(), -h, 1e-15);
}

TEST(DepolarizedBell, DomainAndMixing) {
    EXPECT_THROW(depolarized_bell(BellState::PhiPlus, -0.4), DomainError);
    EXPECT_THROW(depolarized_bell(BellState::PhiPlus, 1.1), DomainError);
    const DensityMatrix rho = depolarized_bell(BellState::PhiPlus, 0.0);
    EXPECT_LT(max_abs_entry(rho.matrix() - Matrix4c::Identity() / 4.0), 1e-16);
}

TEST(DepolarizedBell, SeparabilityThreshold) {
    for (BellState b : {BellState::PhiPlus, BellState::PsiPlus, BellState::PsiMinus,
                        BellState::PhiMinus}) {
        EXPECT_FALSE(ppt_entangled(depolarized_bell(b, 1.0 / 3.0)));
        EXPECT_FALSE(ppt_entangled(depolarized_bell(b, -1.0 / 3.0)));
        EXPECT_TRUE(ppt_entangled(depolarized_bell(b, 0.34)));
        // (1 - 3w)/4 is the smallest partial-transpose eigenvalue.
        EXPECT_NEAR(min_ppt_eigenvalue(depolarized_bell(b, 0.8)), (1.0 - 2.4) / 4.0, 1e-14);
    }
}

TEST(BellDiagonal, PptSpectrumIsHalfMinusWeights) {
    // 0.7 -> -0.2 and 0.1 -> 0.4.
    const auto ev = sorted_ppt_spectrum(bell_diagonal({0.7, 0.1, 0.1, 0.1}));
    EXPECT_NEAR(ev[0], -0.2, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev[i], 0.4, 1e-12);
    EXPECT_TRUE(ppt_entangled(bell_diagonal({0.7, 0.1, 0.1, 0.1})));
    EXPECT_FALSE(ppt_entangled(bell_diagonal({0.5, 0.5, 0.0, 0.0})));
}

TEST(BellDiagonal, PauliCoefficients) {
    const Probabilities4 p{0.1, 0.2, 0.3, 0.4};
    const DensityMatrix rho = bell_diagonal(p);
    const double a = p[0] + p[1] - p[2] - p[3];
    const double b = -p[0] + p[1] - p[2] + p[3];
    const double c = p[0] - p[1] - p[2] + p[3];
    EXPECT_NEAR(expectation(rho, tensor(pauli::x(), pauli::x())), a, 1e-14);
    EXPECT_NEAR(expectation(rho, tensor(pauli::y(), pauli::y())), b, 1e-14);
    EXPECT_NEAR(expectation(rho, tensor(pauli::z(), pauli::z())), c, 1e-14);
}

TEST(BellDiagonal, RejectsOffSimplex) {
    EXPECT_THROW(bell_diagonal({0.5, 0.5, 0.1, -0.1}), DomainError);
    EXPECT_THROW(bell_diagonal({0.5, 0.5, 0.1, 0.0}), DomainError);
}

TEST(CanonicalAngles, RoundTrip) {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Probabilities4 p{};
        double total = 0.0;
        for (double &x : p) total += (x = rng.exponential());
        for (double &x : p) x /= total;
        const CanonicalAngles a = probabilities_to_canonical_angles(p);
        const Probabilities4 q = canonical_angles_to_probabilities(a.psi, a.theta, a.phi);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(q[i], p[i], 1e-12);
    }
}

TEST(CanonicalAngles, DegenerateVertices) {
    const auto p = canonical_angles_to_probabilities(0.0, 0.0, 0.0);
    EXPECT_NEAR(p[0], 1.0, 1e-15);
    const auto a = probabilities_to_canonical_angles({0.0, 0.0, 0.0, 1.0});
    const auto q = canonical_angles_to_probabilities(a.psi, a.theta, a.phi);
    EXPECT_NEAR(q[3], 1.0, 1e-12);
}

TEST(BdsPreparation, ReducedStateIsBellDiagonal) {
    const Probabilities4 p{0.55, 0.2, 0.15, 0.1};
    const CanonicalAngles a = probabilities_to_canonical_angles(p);
    const ComplexMatrix full = bds_preparation_state(a.psi, a.theta, a.phi);
    ASSERT_EQ(full.rows(), 16);
    EXPECT_NEAR(full.trace().real(), 1.0, 1e-12);
    const ComplexMatrix cd = partial_trace(full, {2, 3});
    EXPECT_LT(max_abs_entry(cd - bell_diagonal(p).matrix()), 1e-12);
}

TEST(AmplitudeDamp, TracePreservingAndFixedPoint) {
    const DensityMatrix rho = depolarized_bell(BellState::PsiPlus, 0.6);
    for (double r : {0.0, 0.3, 0.9}) {
        EXPECT_NEAR(amplitude_damp(rho, r).matrix().trace().real(), 1.0, 1e-14);
    }
    const DensityMatrix full = amplitude_damp(rho, 1.0);
    EXPECT_NEAR(full(0, 0).real(), 1.0, 1e-14);
    EXPECT_LT(max_abs_entry(amplitude_damp(rho, 0.0).matrix() - rho.matrix()), 1e-15);
    EXPECT_THROW(amplitude_damp(rho, 1.5), DomainError);
}

TEST(AmplitudeDamp, PhiTypeSmallestEigenvalue) {
    // Derived by propagating populations and the |00><11| coherence through the
    // channel: the smallest partial-transpose eigenvalue is (1-r)(1+r-3w+wr)/4.
    const double w = 0.5, r = 0.2;
    const double v = min_ppt_eigenvalue(amplitude_damp(depolarized_bell(BellState::PhiPlus, w), r));
    EXPECT_NEAR(v, (1 - r) * (1 + r - 3 * w + w * r) / 4.0, 1e-12);
    EXPECT_NEAR(v, -0.04, 1e-12);
    // The printed variant (-r^2(w-1) + wr + 1 - 3w)/4 gives -0.095 here.
    EXPECT_NEAR((-r * r * (w - 1) + w * r + (1 - 3 * w)) / 4.0, -0.095, 1e-12);
}

TEST(AmplitudeDamp, SingleQubitDampingOption) {
    const DensityMatrix rho = depolarized_bell(BellState::PhiPlus, 0.9);
    const DensityMatrix only_a = amplitude_damp(rho, 0.5, 0.0);
    // Qubit b keeps its populations when q = 0; qubit a decays.
    const double p_a1 = only_a(2, 2).real() + only_a(3, 3).real();
    EXPECT_NEAR(p_a1, 0.25, 1e-14);
    const double p_b1 = only_a(1, 1).real() + only_a(3, 3).real();
    EXPECT_NEAR(p_b1, 0.5, 1e-14);
}

TEST(Ppt, ReferenceStates) {
    EXPECT_TRUE(ppt_entangled(bell_state(BellState::PhiPlus)));
    EXPECT_NEAR(min_ppt_eigenvalue(bell_state(BellState::PhiPlus)), -0.5, 1e-14);
    EXPECT_FALSE(ppt_entangled(DensityMatrix()));
}

TEST(Ppt, RandomSeparableNeverEntangled) {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        EXPECT_FALSE(ppt_entangled(random_separable(rng, 1 + trial % 5)));
    }
}

TEST(Ginibre, ValidStatesAndEntangledFraction) {
    Rng rng(23);
    int entangled = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) entangled += ppt_entangled(random_ginibre(rng)) ? 1 : 0;
    // Monte Carlo estimate of the induced-measure fraction, about 0.757.
    EXPECT_NEAR(static_cast<double>(entangled) / n, 0.757, 0.03);
}

TEST(StateSpec, BuildsEachFamily) {
    EXPECT_EQ(build_state(StateSpec::depolarized(BellState::PsiMinus, 0.5)),
              depolarized_bell(BellState::PsiMinus, 0.5));
    EXPECT_EQ(build_state(StateSpec::bds({0.1, 0.2, 0.3, 0.4})), bell_diagonal({0.1, 0.2, 0.3, 0.4}));
    EXPECT_EQ(build_state(StateSpec::ginibre(5)), build_state(StateSpec::ginibre(5)));
    EXPECT_FALSE(build_state(StateSpec::ginibre(5)) == build_state(StateSpec::ginibre(6)));
    const DensityMatrix sep = build_state(StateSpec::separable(9, 3));
    EXPECT_FALSE(ppt_entangled(sep));
    EXPECT_EQ(build_state(StateSpec::explicit_state(sep)), sep);
}

TEST(StateSpec, NameRoundTrip) {
    for (auto f : {StateFamily::DepolarizedBell, StateFamily::BellDiagonal,
                   StateFamily::AmpDampedDepolarizedBell, StateFamily::Ginibre,
                   StateFamily::SeparableMixture, StateFamily::Explicit}) {
        EXPECT_EQ(family_from_name(family_name(f)), f);
    }
    for (int b = 0; b < 4; ++b) EXPECT_EQ(bell_from_name(bell_name(BellState(b))), BellState(b));
    EXPECT_THROW(family_from_name("nope"), DomainError);
}

TEST(Instances, MakeInstanceLabels) {
    const ProblemInstance inst = make_instance(
        {StateSpec::bds({0.7, 0.1, 0.1, 0.1}), StateSpec::bds({0.25, 0.25, 0.25, 0.25})});
    EXPECT_EQ(inst.K(), 2u);
    EXPECT_EQ(inst.m(), 1u);
    EXPECT_EQ(inst.entangled_arms(), std::vector<std::size_t>{0});
    EXPECT_NEAR(inst.exact_S[0][1], (1 - 1.4) * (1 - 0.2), 1e-12);
    EXPECT_THROW(make_instance({StateSpec::bds({1, 0, 0, 0})}), DomainError);
}

class BdsGenerator : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BdsGenerator, ExactCountAndGaps) {
    const ProblemInstance inst = generate_bds_instance(6, 2, GetParam(), 0.05);
    EXPECT_EQ(inst.K(), 6u);
    EXPECT_EQ(inst.m(), 2u);
    for (std::size_t i = 0; i < inst.K(); ++i) {
        const Probabilities4 &p = inst.specs[i].p;
        EXPECT_GT(std::abs(*std::max_element(p.begin(), p.end()) - 0.5), 0.05);
        EXPECT_GT(std::abs(inst.exact_S[i][0]), 0.05);
        EXPECT_GT(std::abs(inst.exact_S[i][1]), 0.05);
        EXPECT_EQ(inst.truth[i], std::min(inst.exact_S[i][0], inst.exact_S[i][1]) < 0.0);
    }
    const ProblemInstance again = generate_bds_instance(6, 2, GetParam(), 0.05);
    for (std::size_t i = 0; i < inst.K(); ++i) EXPECT_EQ(inst.states[i], again.states[i]);
}

INSTANTIATE_TEST_SUITE_P(Seeds, BdsGenerator, ::testing::Values(0u, 1u, 42u, 1234u));

TEST(Instances, GinibrePromise) {
    for (std::uint64_t seed : {0u, 7u, 99u}) {
        const ProblemInstance inst = generate_ginibre_instance(5, seed, true);
        EXPECT_EQ(inst.m(), 1u);
        EXPECT_EQ(inst.K(), 5u);
    }
}

TEST(Instances, ReferenceCriterionValues) {
    const ProblemInstance inst = reference_bds_instance();
    const std::array<double, 5> e1{0.6306, -0.2688, 0.5232, 0.1796, 0.0695};
    const std::array<double, 5> e2{-0.0749, 0.5963, -0.1735, 0.2801, 0.3768};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(inst.exact_S[i][0], e1[i], 2e-5);
        EXPECT_NEAR(inst.exact_S[i][1], e2[i], 2e-5);
    }
    EXPECT_EQ(inst.entangled_arms(), (std::vector<std::size_t>{0, 1, 2}));
    const Probabilities4 &p5 = inst.specs[4].p;
    EXPECT_NEAR(*std::max_element(p5.begin(), p5.end()), 0.446, 5e-4);
}

TEST(Instances, UndetectableMixture) {
    const DensityMatrix rho = undetectable_entangled_mixture();
    const std::array<double, 6> paper{0.0732, 0.1727, 0.1257, 0.1139, 0.0736, 0.0296};
    const CriterionValues s = exact_S_all(rho);
    for (int k = 0; k < 6; ++k) {
        EXPECT_NEAR(s[k], paper[k], 5e-4);
        EXPECT_GT(s[k], 0.0);
    }
    EXPECT_NEAR(min_ppt_eigenvalue(rho), -0.029, 5e-4);
    const ProblemInstance inst = outlier_instance(4, 1);
    EXPECT_EQ(inst.entangled_arms(), std::vector<std::size_t>{0});
}

}  // namespace
}  // namespace qmab
