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

// Two-qubit state families, the amplitude-damping channel, the PPT oracle
// and labelled batches of states ("problem instances").

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmab/qmath.hpp"
#include "qmab/rng.hpp"

namespace qmab {

/// Bell basis in mixture order: p1 -> Phi+, p2 -> Psi+, p3 -> Psi-, p4 -> Phi-.
enum class BellState { PhiPlus = 0, PsiPlus = 1, PsiMinus = 2, PhiMinus = 3 };

using Probabilities4 = std::array<double, 4>;

Vector4c bell_vector(BellState which);
DensityMatrix bell_state(BellState which);

/// w |B><B| + (1 - w) I/4 for -1/3 <= w <= 1.
DensityMatrix depolarized_bell(BellState which, double w);

/// sum_i p_i |B_i><B_i|. Throws DomainError unless p is on the simplex.
DensityMatrix bell_diagonal(const Probabilities4 &p);

/// Mixture probabilities from the three angles of the canonical hyperspherical
/// encoding: sqrt(p1) = cos psi, sqrt(p2) = sin psi cos theta, ...
/// Angles must lie in [0, pi/2].
Probabilities4 canonical_angles_to_probabilities(double psi, double theta, double phi);

struct CanonicalAngles {
    double psi;
    double theta;
    double phi;
};

/// Inverse of canonical_angles_to_probabilities; degenerate angles resolve to 0.
CanonicalAngles probabilities_to_canonical_angles(const Probabilities4 &p);

std::pair<Probabilities4, DensityMatrix> bds_from_canonical_angles(double psi, double theta,
                                                                   double phi);

/// Four-qubit pure state |psi>_ab|00>_cd -> B -> 16x16 projector. The encoder
/// applies Ry(2 psi) on b, Ry(2 theta) on a controlled by b, and Ry(-2 phi) on b
/// controlled by a; the entangler B is CNOT(a,c), CNOT(b,d), H(c), CNOT(c,d).
ComplexMatrix bds_preparation_state(double psi, double theta, double phi);

/// Two-qubit amplitude damping with probabilities r (qubit a) and q (qubit b),
/// applied as sum_ij (K_i x K_j) rho (K_i x K_j)^dagger.
DensityMatrix amplitude_damp(const DensityMatrix &rho, double r, std::optional<double> q = {});

/// Smallest eigenvalue of the partial transpose.
double min_ppt_eigenvalue(const DensityMatrix &rho);

/// True iff the partial transpose has an eigenvalue below -1e-10. Exact for two
/// qubits; values in [-1e-10, 0] count as separable.
bool ppt_entangled(const DensityMatrix &rho);

/// rho = A A^dagger / Tr(A A^dagger) with i.i.d. standard-normal real and
/// imaginary parts for the 16 entries of A.
DensityMatrix random_ginibre(Rng &rng);

/// Haar-random pure qubit state from a normalised complex Gaussian 2-vector.
Eigen::Vector2cd random_qubit_state(Rng &rng);

/// sum_i p_i |a_i><a_i| x |b_i><b_i| with Dirichlet(1,...,1) weights.
DensityMatrix random_separable(Rng &rng, int terms);

enum class StateFamily {
    DepolarizedBell,
    BellDiagonal,
    AmpDampedDepolarizedBell,
    Ginibre,
    SeparableMixture,
    Explicit,
};

std::string family_name(StateFamily family);
StateFamily family_from_name(const std::string &name);
std::string bell_name(BellState which);
BellState bell_from_name(const std::string &name);

/// Parameters of one state. Only the fields relevant to `family` are used:
/// DepolarizedBell (bell, w), BellDiagonal (p), AmpDampedDepolarizedBell
/// (bell, w, r, q), Ginibre (seed), SeparableMixture (seed, terms), Explicit
/// (matrix).
struct StateSpec {
    StateFamily family = StateFamily::BellDiagonal;
    BellState bell = BellState::PhiPlus;
    double w = 0.0;
    Probabilities4 p{0.25, 0.25, 0.25, 0.25};
    double r = 0.0;
    std::optional<double> q;
    std::uint64_t seed = 0;
    int terms = 1;
    std::optional<Matrix4c> matrix;

    static StateSpec depolarized(BellState which, double w);
    static StateSpec bds(const Probabilities4 &p);
    static StateSpec damped(BellState which, double w, double r);
    static StateSpec ginibre(std::uint64_t seed);
    static StateSpec separable(std::uint64_t seed, int terms);
    static StateSpec explicit_state(const DensityMatrix &rho);
};

DensityMatrix build_state(const StateSpec &spec);

inline constexpr int kNumWbms = 6;
using CriterionValues = std::array<double, kNumWbms>;

/// A labelled batch of K states: ground truth from the PPT oracle and the exact
/// criterion value of every state under all six witness-basis measurements.
struct ProblemInstance {
    std::vector<StateSpec> specs;
    std::vector<DensityMatrix> states;
    std::vector<bool> truth;
    std::vector<CriterionValues> exact_S;

    std::size_t K() const { return states.size(); }
    std::size_t m() const;
    std::vector<std::size_t> entangled_arms() const;
};

/// Builds every state and labels it. Requires K >= 2.
ProblemInstance make_instance(const std::vector<StateSpec> &specs);

/// Instance from already-built states (specs are Explicit).
ProblemInstance make_instance_from_states(const std::vector<DensityMatrix> &states);

/// K Bell-diagonal states, m of them entangled (max p_i > 1/2). Mixtures are
/// drawn uniformly from the simplex and rejected unless |max p - 1/2|, |S_E1|
/// and |S_E2| all exceed `min_gap`.
ProblemInstance generate_bds_instance(std::size_t K, std::size_t m, std::uint64_t seed,
                                      double min_gap = 0.05);

/// K Ginibre states. With `promise_one_entangled`, whole batches are redrawn
/// until exactly one state is entangled (at most 10^6 attempts).
ProblemInstance generate_ginibre_instance(std::size_t K, std::uint64_t seed,
                                          bool promise_one_entangled);

/// Five Bell-diagonal states whose E1/E2 criterion vectors are
/// (0.6306, -0.2688, 0.5232, 0.1796, 0.0695) and
/// (-0.0749, 0.5963, -0.1735, 0.2801, 0.3768) to within 2e-5; states 1-3 are
/// entangled and state 5 has max p = 0.446.
std::vector<Probabilities4> reference_bds_mixtures();
ProblemInstance reference_bds_instance();

/// Entangled mixture of three pure states whose criterion is positive under all
/// six witness-basis measurements (PPT minimum eigenvalue about -0.029).
DensityMatrix undetectable_entangled_mixture();

/// The undetectable mixture as arm 0 followed by K - 1 separable depolarized
/// Bell states (random Bell state, w uniform in [-0.2, 0.2]).
ProblemInstance outlier_instance(std::size_t K, std::uint64_t seed);

}  // namespace qmab
