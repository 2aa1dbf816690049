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
#include <cstdio>
#include <limits>

#include "qmab/sampler.hpp"
#include "qmab/tomography.hpp"
#include "qmab/witness.hpp"

namespace qmab {

namespace {

constexpr std::array<BellState, 4> kBells = {BellState::PhiPlus, BellState::PsiPlus,
                                              BellState::PsiMinus, BellState::PhiMinus};

bool phi_type(BellState b) { return b == BellState::PhiPlus || b == BellState::PhiMinus; }

std::string fmt(const char *format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

/// All p on the simplex with entries that are multiples of 1/n.
std::vector<Probabilities4> simplex_grid(int n) {
    std::vector<Probabilities4> out;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            for (int c = 0; a + b + c <= n; ++c) {
                const int d = n - a - b - c;
                out.push_back({a / double(n), b / double(n), c / double(n), d / double(n)});
            }
    return out;
}

double damped_min_eigenvalue(BellState which, double w, double r) {
    return min_ppt_eigenvalue(amplitude_damp(depolarized_bell(which, w), r));
}

template <typename F>
double bisect_zero(F f, double lo, double hi, double tolerance) {
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

VerifyCheck finish(std::string name, double dev, double tol, std::string detail = {}) {
    return {std::move(name), dev, tol, dev <= tol, std::move(detail)};
}

VerifyCheck check_depolarized_criterion() {
    std::vector<double> ws{-0.3, -0.1, 0.0, 0.1, 1.0 / 3.0, 0.5, 0.8, 1.0};
    for (int i = 0; i <= 100; ++i) ws.push_back(-1.0 / 3.0 + i * (4.0 / 3.0) / 100.0);
    double dev = 0.0;
    for (BellState b : kBells) {
        for (double w : ws) {
            const double s = exact_S(depolarized_bell(b, w), wbm(detecting_wbm(b)));
            dev = std::max(dev, std::abs(s - depolarized_bell_S(w)));
        }
    }
    return finish("depolarized_bell_criterion", dev, 1e-12,
                  "4 Bell states x " + std::to_string(ws.size()) + " weights");
}

VerifyCheck check_bell_pauli_signs() {
    double dev = 0.0;
    for (std::size_t k = 0; k < kBells.size(); ++k) {
        for (int i = 0; i <= 20; ++i) {
            const double w = -1.0 / 3.0 + i * (4.0 / 3.0) / 20.0;
            const Correlators c = exact_correlators(depolarized_bell(kBells[k], w));
            for (int s = 0; s < 3; ++s) dev = std::max(dev, std::abs(c[s] - w * kBellSigns[k][s]));
        }
    }
    return finish("bell_pauli_signs", dev, 1e-12);
}

VerifyCheck check_bds_spectrum(const std::vector<Probabilities4> &grid) {
    double dev = 0.0;
    for (const Probabilities4 &p : grid) {
        const auto ev = hermitian_eigs(partial_transpose_b(bell_diagonal(p))).values;
        std::array<double, 4> want{0.5 - p[0], 0.5 - p[1], 0.5 - p[2], 0.5 - p[3]};
        std::sort(want.begin(), want.end());
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(ev(i) - want[i]));
    }
    return finish("bds_ppt_spectrum", dev, 1e-10,
                  std::to_string(grid.size()) + " simplex points, step 0.02");
}

VerifyCheck check_bds_closed_form(const std::vector<Probabilities4> &grid) {
    double dev = 0.0;
    for (const Probabilities4 &p : grid) {
        const DensityMatrix rho = bell_diagonal(p);
        const auto want = bds_criterion_closed_form(p);
        dev = std::max(dev, std::abs(exact_S(rho, wbm(1)) - want[0]));
        dev = std::max(dev, std::abs(exact_S(rho, wbm(2)) - want[1]));
    }
    return finish("bds_criterion_closed_form", dev, 1e-12);
}

VerifyCheck check_bds_detectability(const std::vector<Probabilities4> &grid) {
    std::size_t mismatches = 0, entangled = 0;
    for (const Probabilities4 &p : grid) {
        const DensityMatrix rho = bell_diagonal(p);
        const double s1 = exact_S(rho, wbm(1));
        const double s2 = exact_S(rho, wbm(2));
        const bool ent = ppt_entangled(rho);
        const bool detected = std::min(s1, s2) < -Tolerance::kStructural;
        if (ent != detected) ++mismatches;
        const int id = detecting_wbm(p);
        if (ent) {
            ++entangled;
            const double on = id == 1 ? s1 : s2;
            const double off = id == 1 ? s2 : s1;
            if (id == 0 || !(on < 0.0) || off < 0.0) ++mismatches;
        } else if (id != 0) {
            ++mismatches;
        }
    }
    return finish("bds_detectability", static_cast<double>(mismatches), 0.0,
                  std::to_string(entangled) + " entangled of " + std::to_string(grid.size()) +
                      " grid points");
}

VerifyCheck check_damped_spectrum() {
    double dev = 0.0;
    for (BellState b : kBells) {
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double w = i / 19.0;
                const double r = j / 20.0;
                const auto ev =
                    hermitian_eigs(partial_transpose_b(amplitude_damp(depolarized_bell(b, w), r)))
                        .values;
                auto want = damped_ppt_eigenvalues(b, w, r);
                std::sort(want.begin(), want.end());
                for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(ev(k) - want[k]));
            }
        }
    }
    return finish("damped_ppt_spectrum", dev, 1e-9, "4 Bell states on a 20x20 (w, r) grid");
}

VerifyCheck check_damped_phi_variant() {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double w = i / 19.0;
            const double r = j / 20.0;
            const auto ev = hermitian_eigs(
                                partial_transpose_b(amplitude_damp(
                                    depolarized_bell(BellState::PhiPlus, w), r)))
                                .values;
            const double v = damped_phi_printed_variant(w, r);
            double nearest = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 4; ++k) nearest = std::min(nearest, std::abs(ev(k) - v));
            worst = std::max(worst, nearest);
        }
    }
    const double printed = damped_phi_printed_variant(0.5, 0.2);
    const double actual = damped_min_eigenvalue(BellState::PhiPlus, 0.5, 0.2);
    VerifyCheck c;
    c.name = "damped_phi_printed_variant_rejected";
    c.max_deviation = worst;
    c.tolerance = 1e-9;
    c.pass = worst > 1e-3;
    c.detail = fmt("(-r^2(w-1)+wr+1-3w)/4 is off the spectrum by up to %.6g; at w=0.5, r=0.2 it "
                   "gives %.6g while the smallest eigenvalue is %.6g",
                   worst, printed, actual);
    return c;
}

VerifyCheck check_phase_boundary() {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double dev = 0.0;
    std::size_t sign_errors = 0, psi_to_one = 0;
    for (BellState b : kBells) {
        for (int i = 0; i <= 12; ++i) {
            const double w = 0.35 + 0.05 * i;
            if (!(damped_min_eigenvalue(b, w, 0.0) < 0.0)) ++sign_errors;
            if (damped_min_eigenvalue(b, w, 1.0) < -Tolerance::kStructural) ++sign_errors;
            const double r_num = damping_threshold(b, w);
            double r_ref = 1.0;
            if (phi_type(b)) {
                r_ref = (3.0 * w - 1.0) / (1.0 + w);
            } else if (w < golden) {
                r_ref = bisect_zero([&](double r) { return damped_ppt_eigenvalues(b, w, r)[3]; },
                                    0.0, 1.0, 1e-14);
            } else {
                ++psi_to_one;
                if (!(damped_min_eigenvalue(b, w, 0.999) < 0.0)) ++sign_errors;
            }
            dev = std::max(dev, std::abs(r_num - r_ref));
        }
    }
    VerifyCheck c = finish("damping_phase_boundary", dev, 1e-6,
                           std::to_string(sign_errors) +
                               " sign errors (entangled at r=0, separable at r=1); " +
                               std::to_string(psi_to_one) +
                               " Psi-type cases with w >= 0.618 stay entangled for all r < 1");
    c.pass = c.pass && sign_errors == 0;
    return c;
}

VerifyCheck check_parity_round_trip() {
    double dev = 0.0;
    const NoiseModel noise = NoiseModel::symmetric_flip(0.02);
    const Eigen::Matrix4d inv = noise.joint().inverse();
    for (const Probabilities4 &p : simplex_grid(10)) {
        const OutcomeProbabilities f{p[0], p[1], p[2], p[3]};
        const OutcomeProbabilities g = parities_to_frequencies(frequencies_to_parities(f));
        const OutcomeProbabilities noisy = noisy_probabilities(f, noise);
        const Eigen::Vector4d back = inv * Eigen::Vector4d(noisy[0], noisy[1], noisy[2], noisy[3]);
        for (int j = 0; j < 4; ++j) {
            dev = std::max(dev, std::abs(g[j] - f[j]));
            dev = std::max(dev, std::abs(back(j) - f[j]));
        }
    }
    return finish("parity_mitigation_round_trip", dev, 1e-12);
}

VerifyCheck check_povm_closure(const VerifyOptions &options) {
    double dev = 0.0;
    for (int id = 1; id <= kNumWbms; ++id) {
        Wbm m = wbm(id);
        if (id == 1) m.projectors[0](0, 0) += options.projector_perturbation;
        dev = std::max(dev, povm_closure_error(m));
    }
    return finish("povm_closure", dev, 1e-12,
                  options.projector_perturbation != 0.0 ? "projector perturbed" : "");
}

VerifyCheck check_factor4_counterexample() {
    const Probabilities4 p{0.4, 0.3, 0.3, 0.0};
    const DensityMatrix rho = bell_diagonal(p);
    const double s = exact_S(rho, wbm(2));
    const double variant = bds_factor4_variant(p);
    VerifyCheck c;
    c.name = "bds_factor4_counterexample";
    c.max_deviation = std::abs(s - bds_criterion_closed_form(p)[1]);
    c.tolerance = 1e-12;
    c.pass = c.max_deviation <= c.tolerance && !ppt_entangled(rho) && s >= 0.0 && variant < 0.0;
    c.detail = fmt("p=(0.4,0.3,0.3,0) is separable: S=%.6g, factor-4 variant=%.6g", s, variant);
    return c;
}

}  // namespace

double depolarized_bell_S(double w) { return (w - 1.0) * (w - 1.0) / 4.0 - w * w; }

int detecting_wbm(BellState which) { return phi_type(which) ? 2 : 1; }

int detecting_wbm(const Probabilities4 &p) {
    if (p[0] > 0.5 || p[3] > 0.5) return 2;
    if (p[1] > 0.5 || p[2] > 0.5) return 1;
    return 0;
}

std::array<double, 2> bds_criterion_closed_form(const Probabilities4 &p) {
    return {(1.0 - 2.0 * p[1]) * (1.0 - 2.0 * p[2]), (1.0 - 2.0 * p[0]) * (1.0 - 2.0 * p[3])};
}

double bds_factor4_variant(const Probabilities4 &p) {
    const double a = 1.0 - p[0] - p[3];
    return a * a - 4.0 * (p[0] - p[3]) * (p[0] - p[3]);
}

std::array<double, 4> damped_ppt_eigenvalues(BellState which, double w, double r) {
    if (phi_type(which)) {
        return {(w + 1.0) * (1.0 - r * r) / 4.0, (w + 1.0) * (1.0 - r) * (1.0 - r) / 4.0,
                (w * (r - 1.0) * (r - 1.0) + (r + 1.0) * (r + 1.0)) / 4.0,
                (1.0 - r) * (1.0 + r - 3.0 * w + w * r) / 4.0};
    }
    const double a = (1.0 - r) * (1.0 + r + w - w * r) / 4.0;
    const double root = std::sqrt(w * w * (1.0 - r) * (1.0 - r) + r * r);
    const double base = r * r + 1.0 - w * (1.0 - r) * (1.0 - r);
    return {a, a, (base + 2.0 * root) / 4.0, (base - 2.0 * root) / 4.0};
}

double damped_phi_printed_variant(double w, double r) {
    return (-r * r * (w - 1.0) + w * r + (1.0 - 3.0 * w)) / 4.0;
}

double damping_threshold(BellState which, double w, double tolerance) {
    if (!(w > 1.0 / 3.0 && w < 1.0)) throw DomainError("damping threshold needs 1/3 < w < 1");
    return bisect_zero([&](double r) { return damped_min_eigenvalue(which, w, r); }, 0.0, 1.0,
                       tolerance);
}

std::vector<VerifyCheck> run_verify(const VerifyOptions &options) {
    const std::vector<Probabilities4> grid = simplex_grid(50);
    return {
        check_depolarized_criterion(),
        check_bell_pauli_signs(),
        check_bds_spectrum(grid),
        check_bds_closed_form(grid),
        check_bds_detectability(grid),
        check_factor4_counterexample(),
        check_damped_spectrum(),
        check_damped_phi_variant(),
        check_phase_boundary(),
        check_parity_round_trip(),
        check_povm_closure(options),
    };
}

}  // namespace qmab
