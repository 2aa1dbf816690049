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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Numeric tolerances shared by every operation and test in the library.
struct Tolerance {
    /// Structural checks: Hermiticity of eigensolver input, PSD, reconstruction.
    static constexpr double kStructural = 1e-10;
    /// Arithmetic identities: trace, POVM closure, simplex sums.
    static constexpr double kArithmetic = 1e-12;
};

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition did not hold (e.g. non-Hermitian eigensolver input).
class ContractViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A scalar parameter was outside its documented domain.
class DomainError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Kronecker product. Both operands must be square.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Transpose on the second qubit of a 4x4 two-qubit operator.
ComplexMatrix partial_transpose_b(const ComplexMatrix &m);

/// Two of the four qubits of a 16x16 operator. Qubit 0 is the most significant
/// index bit (qubits a, b, c, d = 0, 1, 2, 3).
struct QubitPair {
    int first;
    int second;
};

/// Traces out the two qubits not named in `keep`; the kept qubits retain their order.
ComplexMatrix partial_trace(const ComplexMatrix &m, QubitPair keep);

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // columns are orthonormal eigenvectors
};

/// Eigendecomposition of a Hermitian matrix. Throws ContractViolation when
/// max |M - M^dagger| exceeds the structural tolerance.
HermitianEigen hermitian_eigs(const ComplexMatrix &m);

double max_abs_entry(const ComplexMatrix &m);
double hermiticity_error(const ComplexMatrix &m);

/// 4x4 Hermitian, unit-trace, positive semidefinite operator.
///
/// Construction validates the invariants; the stored matrix is exactly Hermitian
/// (it is replaced by (M + M^dagger)/2 after validation).
class DensityMatrix {
  public:
    /// Maximally mixed state I/4.
    DensityMatrix();

    /// Throws DimensionError for a non-4x4 input and ContractViolation when
    /// the Hermitian, trace or PSD invariant fails.
    static DensityMatrix from_matrix(const ComplexMatrix &m);

    /// Projector onto a (not necessarily normalised) nonzero pure state.
    static DensityMatrix from_pure(const Vector4c &psi);

    const Matrix4c &matrix() const { return mat_; }
    Complex operator()(int row, int col) const { return mat_(row, col); }

    bool operator==(const DensityMatrix &other) const { return mat_ == other.mat_; }

  private:
    explicit DensityMatrix(const Matrix4c &m) : mat_(m) {}
    Matrix4c mat_;
};

ComplexMatrix partial_transpose_b(const DensityMatrix &rho);

/// Expectation Tr(O rho), real part.
double expectation(const DensityMatrix &rho, const ComplexMatrix &observable);

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
}  // namespace pauli

}  // namespace qmab
