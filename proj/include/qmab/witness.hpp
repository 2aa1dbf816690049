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

#include <array>
#include <string_view>

#include "qmab/qmath.hpp"
#include "qmab/states.hpp"

namespace qmab {

using OutcomeProbabilities = std::array<double, 4>;

/// Witness-basis measurement: four rank-1 projectors summing to the identity.
///
/// Measurement `id` (1..6) is the base measurement
///   E1 = {|00><00|, |11><11|, |Psi+><Psi+|, |Psi-><Psi-|}
/// conjugated by a local unitary pair, E_j -> (U1 x U2)^dagger E_j (U1 x U2),
/// with pairs in the order
///   (I,I), (I,X), (C^dagger,C), (C^dagger,XC), (C,C^dagger), (C,XC^dagger).
///
/// Outcome j is reported as a two-bit string: 1 -> "00", 2 -> "01",
/// 3 -> "10", 4 -> "11", where the left bit belongs to the first qubit.
struct Wbm {
    int id = 1;
    std::array<Matrix4c, 4> projectors;
    Matrix2c u1;
    Matrix2c u2;
};

/// Cyclic Pauli permutation C = (I - i(X+Y+Z))/2 with C X C^dagger = Y,
/// C Y C^dagger = Z, C Z C^dagger = X.
Matrix2c cyclic_pauli_unitary();

/// Throws DomainError unless 1 <= id <= 6.
Wbm build_wbm(int id);

/// The six measurements, built once.
const std::array<Wbm, kNumWbms> &all_wbms();
const Wbm &wbm(int id);

/// Bits (first qubit, second qubit) of outcome j in 1..4.
std::string_view outcome_bitstring(int outcome);
int outcome_from_bits(int first_bit, int second_bit);

/// f_j = Tr(E_j rho); values below zero (>= -1e-12, from rounding) are
/// clamped and the vector renormalised.
OutcomeProbabilities outcome_probs(const DensityMatrix &rho, const Wbm &measurement);

/// S = 4 f1 f2 - (f3 - f4)^2.
double criterion_S(const OutcomeProbabilities &f);

double exact_S(const DensityMatrix &rho, const Wbm &measurement);
CriterionValues exact_S_all(const DensityMatrix &rho);

/// cos^2(alpha) I - (|psi><psi|)^{T_b} with |psi> = cos(alpha)|00> + sin(alpha)|11>,
/// alpha in [0, pi/4].
ComplexMatrix witness_operator(double alpha);

/// max |sum_j E_j - I| plus the worst idempotency error max |E_j^2 - E_j|.
double povm_closure_error(const Wbm &measurement);

}  // namespace qmab
