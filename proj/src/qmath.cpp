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

#include <cmath>

namespace qmab {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_dim(const ComplexMatrix &m, Eigen::Index n, const char *what) {
    if (m.rows() != n || m.cols() != n) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                             std::to_string(n) + ", got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_square(a, "tensor");
    require_square(b, "tensor");
    const Eigen::Index na = a.rows();
    const Eigen::Index nb = b.rows();
    ComplexMatrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix &m) {
    require_dim(m, 4, "partial_transpose_b");
    // Index (i, k) is row 2i + k with i on qubit a and k on qubit b.
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            for (int j = 0; j < 2; ++j) {
                for (int l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = m(2 * i + l, 2 * j + k);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_transpose_b(const DensityMatrix &rho) {
    return partial_transpose_b(ComplexMatrix(rho.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix &m, QubitPair keep) {
    require_dim(m, 16, "partial_trace");
    if (keep.first < 0 || keep.second > 3 || keep.first >= keep.second) {
        throw DimensionError("partial_trace: keep must name two distinct qubits in 0..3 in "
                             "increasing order");
    }
    int traced[2];
    int n = 0;
    for (int q = 0; q < 4; ++q) {
        if (q != keep.first && q != keep.second) {
            traced[n++] = q;
        }
    }
    auto bit = [](int q) { return 1 << (3 - q); };
    auto embed = [&](int kept_index, int traced_index) {
        int full = 0;
        if (kept_index & 2) full |= bit(keep.first);
        if (kept_index & 1) full |= bit(keep.second);
        if (traced_index & 2) full |= bit(traced[0]);
        if (traced_index & 1) full |= bit(traced[1]);
        return full;
    };
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            Complex acc = 0.0;
            for (int t = 0; t < 4; ++t) {
                acc += m(embed(r, t), embed(c, t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

double max_abs_entry(const ComplexMatrix &m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            best = std::max(best, std::abs(m(i, j)));
        }
    }
    return best;
}

double hermiticity_error(const ComplexMatrix &m) {
    return max_abs_entry(m - m.adjoint());
}

HermitianEigen hermitian_eigs(const ComplexMatrix &m) {
    require_square(m, "hermitian_eigs");
    const double err = hermiticity_error(m);
    if (err > Tolerance::kStructural) {
        throw ContractViolation("hermitian_eigs: input is not Hermitian (max |M - M^dagger| = " +
                                std::to_string(err) + ")");
    }
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ContractViolation("hermitian_eigs: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix() : mat_(Matrix4c::Identity() * 0.25) {}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix &m) {
    require_dim(m, 4, "DensityMatrix");
    const double herm = hermiticity_error(m);
    if (herm > Tolerance::kArithmetic) {
        throw ContractViolation("DensityMatrix: not Hermitian (error " + std::to_string(herm) + ")");
    }
    const double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_err > Tolerance::kArithmetic) {
        throw ContractViolation("DensityMatrix: trace differs from 1 by " +
                                std::to_string(trace_err));
    }
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    if (lo < -Tolerance::kStructural) {
        throw ContractViolation("DensityMatrix: negative eigenvalue " + std::to_string(lo));
    }
    return DensityMatrix(h);
}

DensityMatrix DensityMatrix::from_pure(const Vector4c &psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
        throw ContractViolation("DensityMatrix::from_pure: zero vector");
    }
    const Vector4c v = psi / norm;
    return from_matrix(v * v.adjoint());
}

double expectation(const DensityMatrix &rho, const ComplexMatrix &observable) {
    require_dim(observable, 4, "expectation");
    return (observable * rho.matrix()).trace().real();
}

namespace pauli {

Matrix2c identity() { return Matrix2c::Identity(); }

Matrix2c x() {
    Matrix2c m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix2c y() {
    Matrix2c m;
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix2c z() {
    Matrix2c m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace pauli

}  // namespace qmab
