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

#include "qmab/qmath.hpp"

#include <gtest/gtest.h>

#include "qmab/rng.hpp"

namespace qmab {
namespace {

ComplexMatrix random_matrix(int n, Rng &rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    return m;
}

// Index-loop oracles.
ComplexMatrix kron_loops(const ComplexMatrix &a, const ComplexMatrix &b) {
    const int n = static_cast<int>(a.rows()), m = static_cast<int>(b.rows());
    ComplexMatrix out(n * m, n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) out(i * m + k, j * m + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix pt_loops(const ComplexMatrix &m) {
    ComplexMatrix out(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) out(2 * a + b, 2 * a2 + b2) = m(2 * a + b2, 2 * a2 + b);
    return out;
}

TEST(Tensor, MatchesIndexLoops) {
    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_matrix(2, rng), b = random_matrix(2, rng);
        EXPECT_LT(max_abs_entry(tensor(a, b) - kron_loops(a, b)), 1e-15);
        const ComplexMatrix c = random_matrix(4, rng);
        EXPECT_LT(max_abs_entry(tensor(c, a) - kron_loops(c, a)), 1e-15);
    }
}

TEST(Tensor, RejectsNonSquare) {
    EXPECT_THROW(tensor(ComplexMatrix::Zero(2, 3), ComplexMatrix::Identity(2, 2)), DimensionError);
}

TEST(PartialTranspose, MatchesIndexLoops) {
    Rng rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = random_matrix(4, rng);
        EXPECT_LT(max_abs_entry(partial_transpose_b(m) - pt_loops(m)), 1e-15);
    }
}

TEST(PartialTranspose, IsAnInvolutionAndActsOnSecondFactor) {
    Rng rng(3);
    const ComplexMatrix a = random_matrix(2, rng), b = random_matrix(2, rng);
    EXPECT_LT(max_abs_entry(partial_transpose_b(tensor(a, b)) - tensor(a, b.transpose())), 1e-14);
    const ComplexMatrix m = random_matrix(4, rng);
    EXPECT_LT(max_abs_entry(partial_transpose_b(partial_transpose_b(m)) - m), 1e-15);
}

TEST(PartialTranspose, RejectsWrongSize) {
    EXPECT_THROW(partial_transpose_b(ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST(PartialTrace, ProductOperatorKeepsFactors) {
    Rng rng(4);
    std::array<ComplexMatrix, 4> f;
    for (auto &x : f) x = random_matrix(2, rng);
    const ComplexMatrix m = tensor(tensor(f[0], f[1]), tensor(f[2], f[3]));
    const Complex t01 = f[0].trace() * f[1].trace();
    const Complex t23 = f[2].trace() * f[3].trace();
    EXPECT_LT(max_abs_entry(partial_trace(m, {2, 3}) - t01 * tensor(f[2], f[3])), 1e-12);
    EXPECT_LT(max_abs_entry(partial_trace(m, {0, 1}) - t23 * tensor(f[0], f[1])), 1e-12);
    const Complex t12 = f[1].trace() * f[2].trace();
    EXPECT_LT(max_abs_entry(partial_trace(m, {0, 3}) - t12 * tensor(f[0], f[3])), 1e-12);
}

TEST(HermitianEigs, ReconstructsAndOrders) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = random_matrix(4, rng);
        const ComplexMatrix h = a + a.adjoint();
        const HermitianEigen e = hermitian_eigs(h);
        const ComplexMatrix back =
            e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LT(max_abs_entry(back - h), Tolerance::kStructural);
        for (int i = 1; i < 4; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
        EXPECT_LT(max_abs_entry(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(4, 4)),
                  1e-12);
    }
}

TEST(HermitianEigs, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(0, 1) = 1e-6;
    EXPECT_THROW(hermitian_eigs(m), ContractViolation);
}

TEST(DensityMatrix, DefaultIsMaximallyMixed) {
    const DensityMatrix rho;
    EXPECT_LT(max_abs_entry(rho.matrix() - Matrix4c::Identity() / 4.0), 1e-16);
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::Identity(2, 2)), DimensionError);
    EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::Identity(4, 4)), ContractViolation);
    Matrix4c neg = Matrix4c::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(neg), ContractViolation);
    Matrix4c nh = Matrix4c::Identity() / 4.0;
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix::from_matrix(nh), ContractViolation);
}

TEST(DensityMatrix, FromPureNormalises) {
    const DensityMatrix rho = DensityMatrix::from_pure(Vector4c(2.0, 0.0, 0.0, 2.0));
    EXPECT_NEAR(rho(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho(0, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_THROW(DensityMatrix::from_pure(Vector4c::Zero()), ContractViolation);
}

TEST(Pauli, AlgebraRelations) {
    const Complex i(0.0, 1.0);
    EXPECT_LT(max_abs_entry(pauli::x() * pauli::y() - i * pauli::z()), 1e-15);
    EXPECT_LT(max_abs_entry(pauli::y() * pauli::z() - i * pauli::x()), 1e-15);
    EXPECT_LT(max_abs_entry(pauli::z() * pauli::z() - pauli::identity()), 1e-15);
}

TEST(Expectation, ZZOnComputationalStates) {
    const ComplexMatrix zz = tensor(pauli::z(), pauli::z());
    EXPECT_DOUBLE_EQ(expectation(DensityMatrix::from_pure(Vector4c(1, 0, 0, 0)), zz), 1.0);
    EXPECT_DOUBLE_EQ(expectation(DensityMatrix::from_pure(Vector4c(0, 1, 0, 0)), zz), -1.0);
    EXPECT_NEAR(expectation(DensityMatrix(), zz), 0.0, 1e-16);
}

}  // namespace
}  // namespace qmab
