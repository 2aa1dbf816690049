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

// Thresholding bandit policies over a batch of two-qubit states.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmab/sampler.hpp"
#include "qmab/states.hpp"
#include "qmab/witness.hpp"

namespace qmab {

/// Law-of-iterated-logarithm parameters. K is the number of arms the policy
/// runs on; the per-arm budget is delta / (c_eps K).
struct LilParams {
    double epsilon = 0.5;
    double sigma = 2.5;
    double delta = 0.05;
    std::size_t K = 2;

    /// c_eps = ((2 + eps)/eps) (1/log(1 + eps))^(1 + eps).
    static double c_epsilon(double epsilon);
    double c_eps() const { return c_epsilon(epsilon); }
    double delta_prime() const;

    /// True when delta' lies in (0, log(1 + eps)/e), the range where the
    /// deviation bound is proven.
    bool in_proven_range() const;

    /// Throws DomainError for eps outside (0,1), delta outside (0,1), sigma <= 0 or K = 0.
    void validate() const;
};

/// (1 + sqrt eps) sqrt(2 sigma^2 (1 + eps)/t log(log((1 + eps) t)/delta')).
/// Returns +infinity when t < 1 or log((1 + eps) t)/delta' <= 1.
double lil_width(double t, double delta_prime, const LilParams &params);

/// J = 4 [y = 1][y2 = 2] - ([y = 3] - [y = 4])([y2 = 3] - [y2 = 4]).
double pair_estimate(int y, int y2);

/// How the running estimate of S is formed from an arm's shots.
///  - DisjointPairs: mean of J over shots (1,2), (3,4), ...
///  - UStatistic: (4 F1 F2 - (F3 - F4)^2 + F3 + F4) / (N (N - 1)) over the
///    working (possibly mitigated) counts.
///  - PlugIn: 4 f1 f2 - (f3 - f4)^2 with empirical frequencies of the working counts.
enum class EstimatorMode { DisjointPairs, UStatistic, PlugIn };

/// Arm chosen after the warm start: arg max of S_hat + bonus, or arg min of
/// S_hat - bonus.
enum class SelectionRule { MaxUcb, MinLcb };

enum class ArmStatus { Active, FlaggedEntangled, FlaggedSeparable };

std::string estimator_name(EstimatorMode mode);
EstimatorMode estimator_from_name(const std::string &name);
std::string rule_name(SelectionRule rule);
SelectionRule rule_from_name(const std::string &name);
std::string status_name(ArmStatus status);

/// Running statistics of one arm. A step consumes two shots.
class EstimatorState {
  public:
    EstimatorState(ArmStream stream, EstimatorMode mode);

    void sample_pair();

    /// Pair samples n; for count-based modes n = floor(N/2).
    std::uint64_t pair_samples() const { return pairs_; }
    std::uint64_t pulls() const { return stream_.pulls(); }
    std::uint64_t copies() const { return 2 * pairs_ + pending_; }
    std::uint64_t pending() const { return pending_; }
    double S_hat() const;

    const CountStore &store() const { return stream_.store(); }

    ArmStatus status = ArmStatus::Active;

  private:
    ArmStream stream_;
    EstimatorMode mode_;
    std::uint64_t pairs_ = 0;
    std::uint64_t pending_ = 0;
    double sum_j_ = 0.0;
};

struct PolicyConfig {
    LilParams lil;
    double zeta = 0.0;
    /// Overrides the computed warm start when set.
    std::optional<std::uint64_t> warm_start;
    SelectionRule rule = SelectionRule::MaxUcb;
    EstimatorMode estimator = EstimatorMode::DisjointPairs;
    SamplingConfig sampling;
    /// Total shots across all arms at which a run is abandoned.
    std::uint64_t cutoff_pulls = 10'000'000;
    /// Arm i draws its shots from the substream derive_seed(seed, {i}).
    std::uint64_t seed = 0;
};

struct ArmRecord {
    std::size_t arm = 0;
    std::uint64_t pulls = 0;
    std::uint64_t pair_samples = 0;
    double S_hat = 0.0;
    ArmStatus status = ArmStatus::Active;
    std::uint64_t mitigations = 0;
};

struct RunRecord {
    std::string policy;
    int wbm_id = 1;
    double delta = 0.0;
    double epsilon = 0.0;
    double sigma = 0.0;
    std::uint64_t T = 0;
    double zeta = 0.0;
    std::string rule;
    std::string estimator;
    std::uint64_t mitigation_cadence = 0;
    bool noise_enabled = false;
    std::vector<std::size_t> arms;
    std::vector<std::size_t> flagged_arms;
    std::uint64_t pulls = 0;
    std::uint64_t copies = 0;
    std::uint64_t pair_samples = 0;
    std::vector<ArmRecord> per_arm;
    std::uint64_t seed = 0;
    bool cutoff_hit = false;
    bool outside_proven_range = false;
};

/// Samples every active arm once per round and drops arms whose lower
/// confidence bound exceeds zeta; returns when one arm is left, which is
/// reported as the entangled arm. `arms` selects a subset of the instance
/// (empty = all arms).
RunRecord successive_elimination(const ProblemInstance &instance, const Wbm &measurement,
                                 const PolicyConfig &config,
                                 const std::vector<std::size_t> &arms = {});

/// Warm start of T pair samples per arm, then one pair sample per step on the
/// arm chosen by the selection rule. The chosen arm is dropped as separable
/// when S_hat - U >= zeta and flagged entangled when S_hat + U < zeta.
RunRecord lil_hdoc(const ProblemInstance &instance, const Wbm &measurement,
                   const PolicyConfig &config, const std::vector<std::size_t> &arms = {});

/// ceil(1/4 log(K + 1) log(max(1/delta, 2)) c_eps^(3/2)), at least 1.
std::uint64_t warm_start_T(const LilParams &params);

/// Per-arm pair-sample budget
///   8 s^2 (1+e)(1+sqrt e)^2/D^2 log(2 c K log(8 s^2 c (1+e)^2 (1+sqrt e)^2 K/(delta D^2))/delta),
/// ceiled, where s = sigma, e = epsilon and c = c_eps. sigma = 1 gives the
/// unit-scale form. Throws DomainError when a gap is not positive.
std::vector<double> theoretical_budget_se(const std::vector<double> &gaps, const LilParams &params);

}  // namespace qmab
