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

// Experiment sweeps. Every cell derives its seeds from the master seed and its
// indices, so results do not depend on the number of worker threads.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmab/tomography.hpp"
#include "qmab/workflow.hpp"

namespace qmab {

/// Copy cost of the BDS workflow against delta.
struct Fig6Config {
    std::vector<double> deltas{0.3, 0.1, 0.05, 0.01};
    std::uint64_t trials = 20;
    std::uint64_t master_seed = 0;
    PolicyConfig base;
    bool split_delta = false;
    /// Symmetric flip probability of the "readout" curve; negative skips it.
    double readout_flip = 0.02;
    /// Target accuracy of the "tomography" rows; non-positive skips them.
    double tomography_epsilon = 0.01;
    unsigned parallel = 1;
};

struct Fig6Row {
    double delta = 0.0;
    std::string tag;
    double mean_copies = 0.0;
    double std_copies = 0.0;
    std::uint64_t trials = 0;
    double error_rate = 0.0;
};

std::vector<Fig6Row> sweep_fig6(const ProblemInstance &instance, const Fig6Config &config);

/// Detection ratio and measurement usage on random promise instances.
struct Fig78Config {
    std::uint64_t instances = 200;
    std::size_t K = 5;
    std::vector<double> deltas{0.05, 0.2, 0.5};
    std::uint64_t master_seed = 0;
    /// zeta defaults to kArbitraryZeta through make_fig78_config().
    PolicyConfig base;
    /// Draw a fresh measurement order per instance (seed derive_seed(master, {n, 2}));
    /// otherwise every instance uses `order`.
    bool random_order = true;
    WbmOrder order = kDefaultOrder;
    unsigned parallel = 1;
};

Fig78Config make_fig78_config();

/// Uniformly random permutation of 1..6.
WbmOrder random_wbm_order(Rng &rng);

struct Fig7Row {
    double delta = 0.0;
    double detection_ratio = 0.0;
    std::uint64_t n_instances = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t wrong_singleton = 0;
    std::uint64_t cutoffs = 0;
    double mean_copies = 0.0;
    /// Same ratio restricted to instances whose runs finished under the copy
    /// cutoff at every delta of the sweep.
    std::uint64_t uncensored_instances = 0;
    double detection_ratio_uncensored = 0.0;
};

struct Fig8Row {
    double delta = 0.0;
    int wbms_used = 0;
    /// Successful detections that used at most `wbms_used` measurements.
    std::uint64_t cumulative_count = 0;
};

struct Fig78Result {
    std::vector<Fig7Row> fig7;
    std::vector<Fig8Row> fig8;
};

/// Instance n is generate_ginibre_instance(K, derive_seed(master, {n, 0}), true);
/// its run seed derive_seed(master, {n, 1}) is shared by every delta.
Fig78Result sweep_fig7_fig8(const Fig78Config &config);

/// Mitigation cadence against copy cost under readout noise.
struct Fig9Config {
    std::vector<double> deltas{0.05, 0.2};
    std::vector<std::uint64_t> f_grid;
    std::uint64_t trials = 3;
    std::uint64_t master_seed = 0;
    /// Estimator defaults to the count-based U-statistic via make_fig9_config().
    PolicyConfig base;
    NoiseModel noise = NoiseModel::symmetric_flip(0.02);
    unsigned parallel = 1;
};

Fig9Config make_fig9_config();

/// 50, 100, ..., 10000.
std::vector<std::uint64_t> default_f_grid();

/// "a:b:s" -> a, a+s, ..., <= b.
std::vector<std::uint64_t> parse_f_grid(const std::string &spec);

struct Fig9Row {
    double delta = 0.0;
    std::uint64_t F = 0;
    double pct_reduction = 0.0;
    /// Fraction of mitigated trials whose flags differ from the truth is <= delta.
    bool correct = false;
    double mean_copies_mitigated = 0.0;
    double mean_copies_unmitigated = 0.0;
    double error_rate_mitigated = 0.0;
    double error_rate_unmitigated = 0.0;
    /// Mean over trials and arms of |S_hat - exact S| at termination, phase 1.
    double mean_abs_bias_mitigated = 0.0;
    double mean_abs_bias_unmitigated = 0.0;
};

/// Trial r of every cell uses derive_seed(master, {r}), so mitigated and
/// unmitigated runs see the same raw shot streams.
std::vector<Fig9Row> sweep_fig9(const ProblemInstance &instance, const Fig9Config &config);

/// Tomography cost and accuracy per delta.
struct TomographySweepRow {
    double delta = 0.0;
    double epsilon = 0.0;
    std::uint64_t copies_per_state = 0;
    std::uint64_t total_copies = 0;
    double accuracy = 0.0;
};

std::vector<TomographySweepRow> sweep_tomography(const ProblemInstance &instance, double epsilon,
                                                 const std::vector<double> &deltas,
                                                 std::uint64_t trials, std::uint64_t master_seed);

/// %.17g formatting used by every CSV writer.
std::string format_double(double v);

std::string fig6_csv(const std::vector<Fig6Row> &rows);
std::string fig7_csv(const std::vector<Fig7Row> &rows);
std::string fig8_csv(const std::vector<Fig8Row> &rows);
std::string fig9_csv(const std::vector<Fig9Row> &rows);
std::string tomography_csv(const std::vector<TomographySweepRow> &rows);

}  // namespace qmab
