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

#include "qmab/witness.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace qmab {
namespace {

Matrix4c projector(const Vector4c &v) { return v * v.adjoint(); }

Vector4c basis(int i) {
    Vector4c v = Vector4c::Zero();
    v(i) = 1.0;
    return v;
}

TEST(CyclicPauli, PermutesPaulis) {
    const Matrix2c c = cyclic_pauli_unitary();
    EXPECT_LT(max_abs_entry(c * c.adjoint() - Matrix2c::Identity()), 1e-15);
    EXPECT_LT(max_abs_entry(c * pauli::x() * c.adjoint() - pauli::y()), 1e-15);
    EXPECT_LT(max_abs_entry(c * pauli::y() * c.adjoint() - pauli::z()), 1e-15);
    EXPECT_LT(max_abs_entry(c * pauli::z() * c.adjoint() - pauli::x()), 1e-15);
}

TEST(Wbm, BaseMeasurementProjectors) {
    const Wbm &e1 = wbm(1);
    EXPECT_LT(max_abs_entry(e1.projectors[0] - projector(basis(0))), 1e-15);
    EXPECT_LT(max_abs_entry(e1.projectors[1] - projector(basis(3))), 1e-15);
    EXPECT_LT(max_abs_entry(e1.projectors[2] - bell_state(BellState::PsiPlus).matrix()), 1e-15);
    EXPECT_LT(max_abs_entry(e1.projectors[3] - bell_state(BellState::PsiMinus).matrix()), 1e-15);
}

TEST(Wbm, SecondMeasurementProjectors) {
    // {|01>, |10>, Phi+, Phi-}.
    const Wbm &e2 = wbm(2);
    EXPECT_LT(max_abs_entry(e2.projectors[0] - projector(basis(1))), 1e-15);
    EXPECT_LT(max_abs_entry(e2.projectors[1] - projector(basis(2))), 1e-15);
    EXPECT_LT(max_abs_entry(e2.projectors[2] - bell_state(BellState::PhiPlus).matrix()), 1e-15);
    EXPECT_LT(max_abs_entry(e2.projectors[3] - bell_state(BellState::PhiMinus).matrix()), 1e-15);
}

TEST(Wbm, EveryMeasurementIsARankOnePovm) {
    for (int id = 1; id <= kNumWbms; ++id) {
        const Wbm &m = wbm(id);
        EXPECT_EQ(m.id, id);
        EXPECT_LT(povm_closure_error(m), 1e-12) << "measurement " << id;
        for (const Matrix4c &e : m.projectors) EXPECT_NEAR(e.trace().real(), 1.0, 1e-12);
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                EXPECT_LT(max_abs_entry(m.projectors[j] * m.projectors[k]), 1e-12);
    }
}

TEST(Wbm, ConjugationByLocalUnitaries) {
    for (int id = 1; id <= kNumWbms; ++id) {
        const Wbm &m = wbm(id);
        const Matrix4c u = tensor(m.u1, m.u2);
        for (int j = 0; j < 4; ++j) {
            const Matrix4c want = u.adjoint() * wbm(1).projectors[j] * u;
            EXPECT_LT(max_abs_entry(m.projectors[j] - want), 1e-14);
        }
    }
}

TEST(Wbm, AllSixAreDistinct) {
    for (int a = 1; a <= kNumWbms; ++a)
        for (int b = a + 1; b <= kNumWbms; ++b)
            EXPECT_GT(max_abs_entry(wbm(a).projectors[0] - wbm(b).projectors[0]) +
                          max_abs_entry(wbm(a).projectors[2] - wbm(b).projectors[2]),
                      1e-3);
    EXPECT_THROW(build_wbm(0), DomainError);
    EXPECT_THROW(build_wbm(7), DomainError);
}

TEST(Outcomes, BitstringMapping) {
    EXPECT_EQ(outcome_bitstring(1), "00");
    EXPECT_EQ(outcome_bitstring(2), "01");
    EXPECT_EQ(outcome_bitstring(3), "10");
    EXPECT_EQ(outcome_bitstring(4), "11");
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1) {
            const int j = outcome_from_bits(b0, b1);
            EXPECT_EQ(outcome_bitstring(j)[0], b0 ? '1' : '0');
            EXPECT_EQ(outcome_bitstring(j)[1], b1 ? '1' : '0');
        }
}

TEST(Criterion, QuadraticForm) {
    EXPECT_DOUBLE_EQ(criterion_S({0.25, 0.25, 0.25, 0.25}), 0.25);
    EXPECT_DOUBLE_EQ(criterion_S({0.0, 0.0, 1.0, 0.0}), -1.0);
    EXPECT_DOUBLE_EQ(criterion_S({0.5, 0.5, 0.0, 0.0}), 1.0);
}

TEST(Criterion, ExactSMatchesTraceFormula) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_ginibre(rng);
        for (int id = 1; id <= kNumWbms; ++id) {
            std::array<double, 4> f{};
            for (int j = 0; j < 4; ++j) f[j] = (wbm(id).projectors[j] * rho.matrix()).trace().real();
            const double s = 4 * f[0] * f[1] - (f[2] - f[3]) * (f[2] - f[3]);
            EXPECT_NEAR(exact_S(rho, wbm(id)), s, 1e-13);
        }
    }
}

TEST(Criterion, DepolarizedBellClosedForm) {
    const std::array<BellState, 4> bells{BellState::PhiPlus, BellState::PsiPlus,
                                         BellState::PsiMinus, BellState::PhiMinus};
    const std::array<int, 4> detecting{2, 1, 1, 2};
    for (int b = 0; b < 4; ++b) {
        for (double w : {-0.3, -0.1, 0.0, 0.1, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
            const double s = exact_S(depolarized_bell(bells[b], w), wbm(detecting[b]));
            EXPECT_NEAR(s, (w - 1) * (w - 1) / 4 - w * w, 1e-12);
        }
    }
}

TEST(Criterion, NonNegativeOnSeparableStates) {
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const DensityMatrix rho = random_separable(rng, 1 + trial % 4);
        for (double s : exact_S_all(rho)) EXPECT_GE(s, -1e-12);
    }
}

TEST(Criterion, NegativeImpliesEntangled) {
    Rng rng(9);
    int negatives = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const DensityMatrix rho = random_ginibre(rng);
        for (double s : exact_S_all(rho)) {
            if (s < -1e-12) {
                ++negatives;
                EXPECT_TRUE(ppt_entangled(rho));
            }
        }
    }
    EXPECT_GT(negatives, 0);
}

TEST(WitnessOperator, NonNegativeOnSeparableStates) {
    Rng rng(10);
    for (int a = 0; a < 32; ++a) {
        const ComplexMatrix w = witness_operator(a * (M_PI / 4) / 31);
        for (int trial = 0; trial < 1000 / 32 + 1; ++trial) {
            EXPECT_GE(expectation(random_separable(rng, 1 + trial % 3), w), -1e-10);
        }
    }
    EXPECT_THROW(witness_operator(1.0), DomainError);
}

TEST(WitnessOperator, ProductBoundary) {
    ComplexMatrix want = ComplexMatrix::Identity(4, 4);
    want(0, 0) = 0.0;
    EXPECT_LT(max_abs_entry(witness_operator(0.0) - want), 1e-15);
}

TEST(WitnessOperator, PartialTransposeSpectrumExpansion) {
    for (double alpha : {0.1, 0.4, M_PI / 4}) {
        Vector4c psi = Vector4c::Zero();
        psi(0) = std::cos(alpha);
        psi(3) = std::sin(alpha);
        const ComplexMatrix pt = partial_transpose_b(ComplexMatrix(psi * psi.adjoint()));
        const double c2 = std::cos(2 * alpha), s2 = std::sin(2 * alpha);
        const Matrix4c expansion = (1 + c2) / 2 * projector(basis(0)) +
                                   (1 - c2) / 2 * projector(basis(3)) +
                                   s2 / 2 * (bell_state(BellState::PsiPlus).matrix() -
                                             bell_state(BellState::PsiMinus).matrix());
        EXPECT_LT(max_abs_entry(pt - expansion), 1e-14);
        // Eigenvalues 0, cos 2a and cos^2 a -+ sin(2a)/2, none negative on [0, pi/4].
        EXPECT_GE(hermitian_eigs(witness_operator(alpha)).values(0), -1e-12);
    }
}

TEST(OutcomeProbs, SumToOne) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = outcome_probs(random_ginibre(rng), wbm(1 + trial % 6));
        double total = 0.0;
        for (double x : f) {
            EXPECT_GE(x, 0.0);
            total += x;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace qmab
