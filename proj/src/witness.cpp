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

#include <algorithm>
#include <cmath>
#include <string>

namespace qmab {

Matrix2c cyclic_pauli_unitary() {
    const Complex minus_i(0.0, -1.0);
    return 0.5 * (pauli::identity() + minus_i * (pauli::x() + pauli::y() + pauli::z()));
}

namespace {

std::array<Matrix4c, 4> base_projectors() {
    Vector4c e00 = Vector4c::Zero();
    e00(0) = 1.0;
    Vector4c e11 = Vector4c::Zero();
    e11(3) = 1.0;
    const Vector4c psi_plus = bell_vector(BellState::PsiPlus);
    const Vector4c psi_minus = bell_vector(BellState::PsiMinus);
    return {e00 * e00.adjoint(), e11 * e11.adjoint(), psi_plus * psi_plus.adjoint(),
            psi_minus * psi_minus.adjoint()};
}

std::pair<Matrix2c, Matrix2c> adaptation_pair(int id) {
    const Matrix2c I = pauli::identity();
    const Matrix2c X = pauli::x();
    const Matrix2c C = cyclic_pauli_unitary();
    const Matrix2c Cd = C.adjoint();
    switch (id) {
    case 1: return {I, I};
    case 2: return {I, X};
    case 3: return {Cd, C};
    case 4: return {Cd, X * C};
    case 5: return {C, Cd};
    case 6: return {C, X * Cd};
    default: break;
    }
    throw DomainError("witness-basis measurement id must be in 1..6, got " + std::to_string(id));
}

}  // namespace

Wbm build_wbm(int id) {
    const auto [u1, u2] = adaptation_pair(id);
    const Matrix4c U = tensor(u1, u2);
    Wbm out;
    out.id = id;
    out.u1 = u1;
    out.u2 = u2;
    const auto base = base_projectors();
    for (std::size_t j = 0; j < 4; ++j) {
        out.projectors[j] = U.adjoint() * base[j] * U;
    }
    return out;
}

const std::array<Wbm, kNumWbms> &all_wbms() {
    static const std::array<Wbm, kNumWbms> table = [] {
        std::array<Wbm, kNumWbms> t;
        for (int id = 1; id <= kNumWbms; ++id) t[id - 1] = build_wbm(id);
        return t;
    }();
    return table;
}

const Wbm &wbm(int id) {
    if (id < 1 || id > kNumWbms) {
        throw DomainError("witness-basis measurement id must be in 1..6, got " +
                          std::to_string(id));
    }
    return all_wbms()[id - 1];
}

std::string_view outcome_bitstring(int outcome) {
    static constexpr std::string_view kBits[4] = {"00", "01", "10", "11"};
    if (outcome < 1 || outcome > 4) {
        throw DomainError("outcome must be in 1..4, got " + std::to_string(outcome));
    }
    return kBits[outcome - 1];
}

int outcome_from_bits(int first_bit, int second_bit) { return 1 + 2 * first_bit + second_bit; }

OutcomeProbabilities outcome_probs(const DensityMatrix &rho, const Wbm &measurement) {
    OutcomeProbabilities f{};
    double total = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        f[j] = std::max(0.0, (measurement.projectors[j] * rho.matrix()).trace().real());
        total += f[j];
    }
    for (double &v : f) v /= total;
    return f;
}

double criterion_S(const OutcomeProbabilities &f) {
    const double d = f[2] - f[3];
    return 4.0 * f[0] * f[1] - d * d;
}

double exact_S(const DensityMatrix &rho, const Wbm &measurement) {
    return criterion_S(outcome_probs(rho, measurement));
}

CriterionValues exact_S_all(const DensityMatrix &rho) {
    CriterionValues out{};
    for (int id = 1; id <= kNumWbms; ++id) out[id - 1] = exact_S(rho, wbm(id));
    return out;
}

ComplexMatrix witness_operator(double alpha) {
    if (!(alpha >= 0.0 && alpha <= M_PI / 4.0)) {
        throw DomainError("witness_operator: alpha must be in [0, pi/4]");
    }
    Vector4c psi = Vector4c::Zero();
    psi(0) = std::cos(alpha);
    psi(3) = std::sin(alpha);
    const ComplexMatrix projector = psi * psi.adjoint();
    const double c = std::cos(alpha);
    return c * c * ComplexMatrix::Identity(4, 4) - partial_transpose_b(projector);
}

double povm_closure_error(const Wbm &measurement) {
    Matrix4c sum = Matrix4c::Zero();
    double worst = 0.0;
    for (const auto &e : measurement.projectors) {
        sum += e;
        worst = std::max(worst, max_abs_entry(e * e - e));
    }
    return std::max(worst, max_abs_entry(sum - Matrix4c::Identity()));
}

}  // namespace qmab
