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
#include <stdexcept>

#include "qmab/witness.hpp"

namespace qmab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_simplex(const Probabilities4 &p) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw DomainError("mixture probabilities must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > Tolerance::kArithmetic) {
        throw DomainError("mixture probabilities must sum to 1");
    }
}

void check_angle(double a) {
    if (!(a >= 0.0 && a <= M_PI / 2.0)) {
        throw DomainError("canonical angles must lie in [0, pi/2]");
    }
}

void check_probability(double r, const char *what) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// 16-dimensional statevector helpers; qubit 0 is the most significant bit.
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

int bit_of(int index, int qubit) { return (index >> (3 - qubit)) & 1; }

void apply_single(Vector16c &psi, int qubit, const Matrix2c &u) {
    const int mask = 1 << (3 - qubit);
    for (int i = 0; i < 16; ++i) {
        if (i & mask) continue;
        const Complex a0 = psi(i);
        const Complex a1 = psi(i | mask);
        psi(i) = u(0, 0) * a0 + u(0, 1) * a1;
        psi(i | mask) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_controlled(Vector16c &psi, int control, int target, const Matrix2c &u) {
    const int mask = 1 << (3 - target);
    for (int i = 0; i < 16; ++i) {
        if ((i & mask) || !bit_of(i, control)) continue;
        const Complex a0 = psi(i);
        const Complex a1 = psi(i | mask);
        psi(i) = u(0, 0) * a0 + u(0, 1) * a1;
        psi(i | mask) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

Matrix2c ry(double angle) {
    Matrix2c m;
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    m << c, -s, s, c;
    return m;
}

Matrix2c hadamard() {
    Matrix2c m;
    m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return m;
}

CriterionValues criterion_values(const DensityMatrix &rho) { return exact_S_all(rho); }

}  // namespace

Vector4c bell_vector(BellState which) {
    Vector4c v = Vector4c::Zero();
    switch (which) {
    case BellState::PhiPlus: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    case BellState::PhiMinus: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case BellState::PsiPlus: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    case BellState::PsiMinus: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
    }
    return v;
}

DensityMatrix bell_state(BellState which) { return DensityMatrix::from_pure(bell_vector(which)); }

DensityMatrix depolarized_bell(BellState which, double w) {
    if (!(w >= -1.0 / 3.0 && w <= 1.0)) {
        throw DomainError("depolarization weight w must lie in [-1/3, 1]");
    }
    const Vector4c v = bell_vector(which);
    const Matrix4c m = w * (v * v.adjoint()) + (1.0 - w) / 4.0 * Matrix4c::Identity();
    return DensityMatrix::from_matrix(m);
}

DensityMatrix bell_diagonal(const Probabilities4 &p) {
    check_simplex(p);
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) {
        const Vector4c v = bell_vector(static_cast<BellState>(i));
        m += p[i] * (v * v.adjoint());
    }
    return DensityMatrix::from_matrix(m);
}

Probabilities4 canonical_angles_to_probabilities(double psi, double theta, double phi) {
    check_angle(psi);
    check_angle(theta);
    check_angle(phi);
    const double a1 = std::cos(psi);
    const double a2 = std::sin(psi) * std::cos(theta);
    const double a3 = std::sin(psi) * std::sin(theta) * std::cos(phi);
    const double a4 = std::sin(psi) * std::sin(theta) * std::sin(phi);
    return {a1 * a1, a2 * a2, a3 * a3, a4 * a4};
}

CanonicalAngles probabilities_to_canonical_angles(const Probabilities4 &p) {
    check_simplex(p);
    CanonicalAngles out{std::acos(std::sqrt(clamp_unit(p[0]))), 0.0, 0.0};
    const double rest = p[1] + p[2] + p[3];
    if (rest > 0.0) {
        out.theta = std::acos(std::sqrt(clamp_unit(p[1] / rest)));
        const double tail = p[2] + p[3];
        if (tail > 0.0) out.phi = std::acos(std::sqrt(clamp_unit(p[2] / tail)));
    }
    return out;
}

std::pair<Probabilities4, DensityMatrix> bds_from_canonical_angles(double psi, double theta,
                                                                   double phi) {
    Probabilities4 p = canonical_angles_to_probabilities(psi, theta, phi);
    const double sum = p[0] + p[1] + p[2] + p[3];
    for (double &v : p) v /= sum;
    return {p, bell_diagonal(p)};
}

ComplexMatrix bds_preparation_state(double psi, double theta, double phi) {
    check_angle(psi);
    check_angle(theta);
    check_angle(phi);
    constexpr int a = 0, b = 1, c = 2, d = 3;
    Vector16c state = Vector16c::Zero();
    state(0) = 1.0;
    apply_single(state, b, ry(2.0 * psi));
    apply_controlled(state, b, a, ry(2.0 * theta));
    apply_controlled(state, a, b, ry(-2.0 * phi));
    const Matrix2c x = pauli::x();
    apply_controlled(state, a, c, x);
    apply_controlled(state, b, d, x);
    apply_single(state, c, hadamard());
    apply_controlled(state, c, d, x);
    return state * state.adjoint();
}

DensityMatrix amplitude_damp(const DensityMatrix &rho, double r, std::optional<double> q) {
    const double rq = q.value_or(r);
    check_probability(r, "damping probability r");
    check_probability(rq, "damping probability q");
    auto kraus = [](double g) {
        Matrix2c k0 = Matrix2c::Zero();
        k0(0, 1) = std::sqrt(g);
        Matrix2c k1 = Matrix2c::Zero();
        k1(0, 0) = 1.0;
        k1(1, 1) = std::sqrt(1.0 - g);
        return std::array<Matrix2c, 2>{k0, k1};
    };
    const auto ka = kraus(r);
    const auto kb = kraus(rq);
    Matrix4c out = Matrix4c::Zero();
    for (const auto &ki : ka) {
        for (const auto &kj : kb) {
            const Matrix4c k = tensor(ki, kj);
            out += k * rho.matrix() * k.adjoint();
        }
    }
    return DensityMatrix::from_matrix(out);
}

double min_ppt_eigenvalue(const DensityMatrix &rho) {
    return hermitian_eigs(partial_transpose_b(rho)).values(0);
}

bool ppt_entangled(const DensityMatrix &rho) {
    return min_ppt_eigenvalue(rho) < -Tolerance::kStructural;
}

DensityMatrix random_ginibre(Rng &rng) {
    Matrix4c a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(i, j) = Complex(re, im);
        }
    }
    Matrix4c m = a * a.adjoint();
    m /= m.trace().real();
    return DensityMatrix::from_matrix(m);
}

Eigen::Vector2cd random_qubit_state(Rng &rng) {
    Eigen::Vector2cd v;
    for (int i = 0; i < 2; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

DensityMatrix random_separable(Rng &rng, int terms) {
    if (terms < 1) throw DomainError("random_separable: terms must be >= 1");
    std::vector<double> weights(static_cast<std::size_t>(terms));
    double total = 0.0;
    for (double &w : weights) {
        w = rng.exponential();
        total += w;
    }
    Matrix4c m = Matrix4c::Zero();
    for (double w : weights) {
        const Eigen::Vector2cd x = random_qubit_state(rng);
        const Eigen::Vector2cd y = random_qubit_state(rng);
        const Matrix2c px = x * x.adjoint();
        const Matrix2c py = y * y.adjoint();
        m += (w / total) * tensor(px, py);
    }
    m /= m.trace().real();
    return DensityMatrix::from_matrix(m);
}

std::string family_name(StateFamily family) {
    switch (family) {
    case StateFamily::DepolarizedBell: return "depolarized_bell";
    case StateFamily::BellDiagonal: return "bell_diagonal";
    case StateFamily::AmpDampedDepolarizedBell: return "amp_damped_depolarized_bell";
    case StateFamily::Ginibre: return "ginibre";
    case StateFamily::SeparableMixture: return "separable_mixture";
    case StateFamily::Explicit: return "explicit";
    }
    throw DomainError("unknown state family");
}

StateFamily family_from_name(const std::string &name) {
    for (StateFamily f :
         {StateFamily::DepolarizedBell, StateFamily::BellDiagonal,
          StateFamily::AmpDampedDepolarizedBell, StateFamily::Ginibre,
          StateFamily::SeparableMixture, StateFamily::Explicit}) {
        if (family_name(f) == name) return f;
    }
    throw DomainError("unknown state family '" + name + "'");
}

std::string bell_name(BellState which) {
    switch (which) {
    case BellState::PhiPlus: return "phi+";
    case BellState::PsiPlus: return "psi+";
    case BellState::PsiMinus: return "psi-";
    case BellState::PhiMinus: return "phi-";
    }
    throw DomainError("unknown Bell state");
}

BellState bell_from_name(const std::string &name) {
    for (BellState b :
         {BellState::PhiPlus, BellState::PsiPlus, BellState::PsiMinus, BellState::PhiMinus}) {
        if (bell_name(b) == name) return b;
    }
    throw DomainError("unknown Bell state '" + name + "'");
}

StateSpec StateSpec::depolarized(BellState which, double w) {
    StateSpec s;
    s.family = StateFamily::DepolarizedBell;
    s.bell = which;
    s.w = w;
    return s;
}

StateSpec StateSpec::bds(const Probabilities4 &p) {
    StateSpec s;
    s.family = StateFamily::BellDiagonal;
    s.p = p;
    return s;
}

StateSpec StateSpec::damped(BellState which, double w, double r) {
    StateSpec s;
    s.family = StateFamily::AmpDampedDepolarizedBell;
    s.bell = which;
    s.w = w;
    s.r = r;
    return s;
}

StateSpec StateSpec::ginibre(std::uint64_t seed) {
    StateSpec s;
    s.family = StateFamily::Ginibre;
    s.seed = seed;
    return s;
}

StateSpec StateSpec::separable(std::uint64_t seed, int terms) {
    StateSpec s;
    s.family = StateFamily::SeparableMixture;
    s.seed = seed;
    s.terms = terms;
    return s;
}

StateSpec StateSpec::explicit_state(const DensityMatrix &rho) {
    StateSpec s;
    s.family = StateFamily::Explicit;
    s.matrix = rho.matrix();
    return s;
}

DensityMatrix build_state(const StateSpec &spec) {
    switch (spec.family) {
    case StateFamily::DepolarizedBell: return depolarized_bell(spec.bell, spec.w);
    case StateFamily::BellDiagonal: return bell_diagonal(spec.p);
    case StateFamily::AmpDampedDepolarizedBell:
        return amplitude_damp(depolarized_bell(spec.bell, spec.w), spec.r, spec.q);
    case StateFamily::Ginibre: {
        Rng rng(spec.seed);
        return random_ginibre(rng);
    }
    case StateFamily::SeparableMixture: {
        Rng rng(spec.seed);
        return random_separable(rng, spec.terms);
    }
    case StateFamily::Explicit:
        if (!spec.matrix) throw ContractViolation("explicit state spec has no matrix");
        return DensityMatrix::from_matrix(*spec.matrix);
    }
    throw DomainError("unknown state family");
}

std::size_t ProblemInstance::m() const {
    return static_cast<std::size_t>(std::count(truth.begin(), truth.end(), true));
}

std::vector<std::size_t> ProblemInstance::entangled_arms() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) out.push_back(i);
    }
    return out;
}

ProblemInstance make_instance(const std::vector<StateSpec> &specs) {
    if (specs.size() < 2) throw DomainError("a problem instance needs K >= 2 states");
    ProblemInstance inst;
    inst.specs = specs;
    for (const auto &spec : specs) {
        DensityMatrix rho = build_state(spec);
        inst.truth.push_back(ppt_entangled(rho));
        inst.exact_S.push_back(criterion_values(rho));
        inst.states.push_back(std::move(rho));
    }
    return inst;
}

ProblemInstance make_instance_from_states(const std::vector<DensityMatrix> &states) {
    std::vector<StateSpec> specs;
    specs.reserve(states.size());
    for (const auto &rho : states) specs.push_back(StateSpec::explicit_state(rho));
    return make_instance(specs);
}

ProblemInstance generate_bds_instance(std::size_t K, std::size_t m, std::uint64_t seed,
                                      double min_gap) {
    if (K < 2) throw DomainError("a problem instance needs K >= 2 states");
    if (m > K) throw DomainError("m must not exceed K");
    if (!(min_gap >= 0.0 && min_gap < 0.2)) throw DomainError("min_gap must lie in [0, 0.2)");
    Rng rng = Rng::substream(seed, {0});

    // Place the m entangled states at uniformly random positions.
    std::vector<bool> entangled(K, false);
    std::fill(entangled.begin(), entangled.begin() + static_cast<std::ptrdiff_t>(m), true);
    for (std::size_t i = K - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
        std::swap(entangled[i], entangled[std::min(j, i)]);
    }

    std::vector<StateSpec> specs;
    for (std::size_t i = 0; i < K; ++i) {
        for (;;) {
            Probabilities4 p{};
            double total = 0.0;
            for (double &v : p) {
                v = rng.exponential();
                total += v;
            }
            for (double &v : p) v /= total;
            p[3] = 1.0 - p[0] - p[1] - p[2];
            if (p[3] < 0.0) continue;
            const double pmax = *std::max_element(p.begin(), p.end());
            if ((pmax > 0.5) != entangled[i] || std::abs(pmax - 0.5) <= min_gap) continue;
            const DensityMatrix rho = bell_diagonal(p);
            if (std::abs(exact_S(rho, wbm(1))) <= min_gap) continue;
            if (std::abs(exact_S(rho, wbm(2))) <= min_gap) continue;
            specs.push_back(StateSpec::bds(p));
            break;
        }
    }
    return make_instance(specs);
}

ProblemInstance generate_ginibre_instance(std::size_t K, std::uint64_t seed,
                                          bool promise_one_entangled) {
    if (K < 2) throw DomainError("a problem instance needs K >= 2 states");
    constexpr std::uint64_t kMaxAttempts = 1000000;
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<StateSpec> specs;
        std::size_t count = 0;
        for (std::size_t i = 0; i < K; ++i) {
            specs.push_back(StateSpec::ginibre(derive_seed(seed, {attempt, i})));
            if (promise_one_entangled && ppt_entangled(build_state(specs.back()))) ++count;
        }
        if (!promise_one_entangled || count == 1) return make_instance(specs);
    }
    throw std::runtime_error("no Ginibre batch with exactly one entangled state found");
}

std::vector<Probabilities4> reference_bds_mixtures() {
    return {
        {0.5694, 0.0534, 0.1470, 0.2302},
        {0.1688, 0.1093, 0.6720, 0.0499},
        {0.6153, 0.0545, 0.2064, 0.1238},
        {0.3252, 0.2746, 0.3008, 0.0994},
        {0.2445, 0.1782, 0.4460, 0.1313},
    };
}

ProblemInstance reference_bds_instance() {
    std::vector<StateSpec> specs;
    for (const auto &p : reference_bds_mixtures()) specs.push_back(StateSpec::bds(p));
    return make_instance(specs);
}

DensityMatrix undetectable_entangled_mixture() {
    const Complex i(0.0, 1.0);
    const std::array<Vector4c, 3> vectors = {
        Vector4c(0.2687 + 0.0375 * i, 0.2406 + 0.4090 * i, 0.0502 + 0.6162 * i,
                 0.2413 + 0.5107 * i),
        Vector4c(0.0565 + 0.3355 * i, 0.0508 + 0.0686 * i, 0.4885 + 0.5191 * i,
                 0.5689 + 0.2125 * i),
        Vector4c(0.1953 + 0.4438 * i, 0.4958 + 0.4009 * i, 0.0069 + 0.3495 * i,
                 0.0322 + 0.4848 * i),
    };
    const std::array<double, 3> weights = {0.2936, 0.0655, 0.6409};
    Matrix4c m = Matrix4c::Zero();
    for (std::size_t k = 0; k < 3; ++k) {
        const Vector4c v = vectors[k] / vectors[k].norm();
        m += weights[k] * (v * v.adjoint());
    }
    m /= m.trace().real();
    return DensityMatrix::from_matrix(m);
}

ProblemInstance outlier_instance(std::size_t K, std::uint64_t seed) {
    if (K < 2) throw DomainError("a problem instance needs K >= 2 states");
    std::vector<StateSpec> specs{StateSpec::explicit_state(undetectable_entangled_mixture())};
    for (std::size_t i = 1; i < K; ++i) {
        Rng rng = Rng::substream(seed, {i});
        const auto bell = static_cast<BellState>(std::min(3, static_cast<int>(rng.uniform() * 4)));
        specs.push_back(StateSpec::depolarized(bell, -0.2 + 0.4 * rng.uniform()));
    }
    return make_instance(specs);
}

}  // namespace qmab
