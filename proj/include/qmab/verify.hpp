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

// Closed-form self checks run by `qmab verify`.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qmab/states.hpp"

namespace qmab {

struct VerifyCheck {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    /// Added to entry (0, 0) of the first projector of measurement 1 before the
    /// closure check. Non-zero values exercise the failure path.
    double projector_perturbation = 0.0;
};

/// (w - 1)^2/4 - w^2.
double depolarized_bell_S(double w);

/// Measurement (1 or 2) that detects the given Bell state mixed with noise.
int detecting_wbm(BellState which);

/// Measurement (1 or 2) that detects an entangled Bell-diagonal state, or 0
/// when no weight exceeds 1/2.
int detecting_wbm(const Probabilities4 &p);

/// (1 - 2 p2)(1 - 2 p3) and (1 - 2 p1)(1 - 2 p4).
std::array<double, 2> bds_criterion_closed_form(const Probabilities4 &p);

/// (1 - p1 - p4)^2 - 4 (p1 - p4)^2, the factor-4 variant that misclassifies.
double bds_factor4_variant(const Probabilities4 &p);

/// Partial-transpose spectrum of a depolarized Bell state after amplitude
/// damping with probability r on both qubits, as four closed-form values.
/// Phi-type states use (1 - r)(1 + r - 3w + wr)/4 for the possibly negative one.
std::array<double, 4> damped_ppt_eigenvalues(BellState which, double w, double r);

/// The printed variant (-r^2 (w - 1) + w r + 1 - 3w)/4 of the Phi-type value.
double damped_phi_printed_variant(double w, double r);

/// Damping probability at which the smallest partial-transpose eigenvalue
/// crosses zero, located by bisection on [0, 1]. Requires 1/3 < w < 1. Returns
/// a value within `tolerance` of 1 when the state stays entangled for every
/// r < 1, which happens for Psi-type states with w >= (sqrt 5 - 1)/2.
double damping_threshold(BellState which, double w, double tolerance = 1e-12);

std::vector<VerifyCheck> run_verify(const VerifyOptions &options = {});

}  // namespace qmab
