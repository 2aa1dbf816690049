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

#include "qmab/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qmab {

double LilParams::c_epsilon(double epsilon) {
    return (2.0 + epsilon) / epsilon * std::pow(1.0 / std::log1p(epsilon), 1.0 + epsilon);
}

double LilParams::delta_prime() const {
    return delta / (c_eps() * static_cast<double>(K));
}

bool LilParams::in_proven_range() const {
    const double dp = delta_prime();
    return dp > 0.0 && dp < std::log1p(epsilon) / std::exp(1.0);
}

void LilParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    if (K == 0) throw DomainError("K must be positive");
}

double lil_width(double t, double delta_prime, const LilParams &params) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (!(t >= 1.0)) return kInf;
    const double eps = params.epsilon;
    const double ratio = std::log((1.0 + eps) * t) / delta_prime;
    if (!(ratio > 1.0)) return kInf;
    return (1.0 + std::sqrt(eps)) *
           std::sqrt(2.0 * params.sigma * params.sigma * (1.0 + eps) / t * std::log(ratio));
}

double pair_estimate(int y, int y2) {
    const double first = (y == 1 && y2 == 2) ? 4.0 : 0.0;
    const int a = (y == 3) - (y == 4);
    const int b = (y2 == 3) - (y2 == 4);
    return first - static_cast<double>(a * b);
}

std::string estimator_name(EstimatorMode mode) {
    switch (mode) {
    case EstimatorMode::DisjointPairs: return "disjoint_pairs";
    case EstimatorMode::UStatistic: return "u_statistic";
    case EstimatorMode::PlugIn: return "plug_in";
    }
    throw DomainError("unknown estimator");
}

EstimatorMode estimator_from_name(const std::string &name) {
    for (auto m : {EstimatorMode::DisjointPairs, EstimatorMode::UStatistic, EstimatorMode::PlugIn}) {
        if (estimator_name(m) == name) return m;
    }
    throw DomainError("unknown estimator '" + name + "'");
}

std::string rule_name(SelectionRule rule) {
    return rule == SelectionRule::MaxUcb ? "max_ucb" : "min_lcb";
}

SelectionRule rule_from_name(const std::string &name) {
    if (name == "max_ucb") return SelectionRule::MaxUcb;
    if (name == "min_lcb") return SelectionRule::MinLcb;
    throw DomainError("unknown selection rule '" + name + "'");
}

std::string status_name(ArmStatus status) {
    switch (status) {
    case ArmStatus::Active: return "active";
    case ArmStatus::FlaggedEntangled: return "entangled";
    case ArmStatus::FlaggedSeparable: return "separable";
    }
    throw DomainError("unknown arm status");
}

EstimatorState::EstimatorState(ArmStream stream, EstimatorMode mode)
    : stream_(std::move(stream)), mode_(mode) {}

void EstimatorState::sample_pair() {
    const int y = stream_.pull();
    const int y2 = stream_.pull();
    ++pairs_;
    if (mode_ == EstimatorMode::DisjointPairs) sum_j_ += pair_estimate(y, y2);
}

double EstimatorState::S_hat() const {
    if (mode_ == EstimatorMode::DisjointPairs) {
        return pairs_ == 0 ? 0.0 : sum_j_ / static_cast<double>(pairs_);
    }
    const Counts4 &c = stream_.store().working;
    const double n = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
    const double f1 = static_cast<double>(c[0]);
    const double f2 = static_cast<double>(c[1]);
    const double f3 = static_cast<double>(c[2]);
    const double f4 = static_cast<double>(c[3]);
    if (mode_ == EstimatorMode::UStatistic) {
        if (n < 2.0) return 0.0;
        return (4.0 * f1 * f2 - (f3 - f4) * (f3 - f4) + f3 + f4) / (n * (n - 1.0));
    }
    if (n < 1.0) return 0.0;
    return (4.0 * f1 * f2 - (f3 - f4) * (f3 - f4)) / (n * n);
}

namespace {

struct Run {
    std::vector<std::size_t> arms;
    std::vector<EstimatorState> est;
    LilParams lil;
    double delta_prime = 0.0;
    std::uint64_t pulls = 0;
};

Run start_run(const ProblemInstance &instance, const Wbm &measurement, const PolicyConfig &config,
              const std::vector<std::size_t> &arms) {
    Run run;
    if (arms.empty()) {
        run.arms.resize(instance.K());
        std::iota(run.arms.begin(), run.arms.end(), std::size_t{0});
    } else {
        run.arms = arms;
    }
    for (std::size_t a : run.arms) {
        if (a >= instance.K()) throw DomainError("arm index out of range");
    }
    run.lil = config.lil;
    run.lil.K = std::max<std::size_t>(run.arms.size(), 1);
    run.lil.validate();
    run.delta_prime = run.lil.delta_prime();
    config.sampling.noise.validate();
    run.est.reserve(run.arms.size());
    for (std::size_t a : run.arms) {
        run.est.emplace_back(ArmStream(instance.states[a], measurement, config.sampling,
                                       Rng::substream(config.seed, {a})),
                             config.estimator);
    }
    return run;
}

void sample(Run &run, std::size_t k) {
    run.est[k].sample_pair();
    run.pulls += 2;
}

RunRecord finish(const Run &run, const std::string &policy, const Wbm &measurement,
                 const PolicyConfig &config, std::uint64_t T, bool cutoff_hit) {
    RunRecord rec;
    rec.policy = policy;
    rec.wbm_id = measurement.id;
    rec.delta = run.lil.delta;
    rec.epsilon = run.lil.epsilon;
    rec.sigma = run.lil.sigma;
    rec.T = T;
    rec.zeta = config.zeta;
    rec.rule = rule_name(config.rule);
    rec.estimator = estimator_name(config.estimator);
    rec.mitigation_cadence = config.sampling.mitigation_cadence;
    rec.noise_enabled = config.sampling.noise.enabled;
    rec.arms = run.arms;
    rec.seed = config.seed;
    rec.cutoff_hit = cutoff_hit;
    rec.outside_proven_range = !run.lil.in_proven_range();
    for (std::size_t k = 0; k < run.arms.size(); ++k) {
        const EstimatorState &e = run.est[k];
        ArmRecord a;
        a.arm = run.arms[k];
        a.pulls = e.pulls();
        a.pair_samples = e.pair_samples();
        a.S_hat = e.S_hat();
        a.status = e.status;
        a.mitigations = e.store().mitigations;
        rec.per_arm.push_back(a);
        rec.pulls += e.pulls();
        rec.copies += e.copies();
        rec.pair_samples += e.pair_samples();
        if (e.status == ArmStatus::FlaggedEntangled) rec.flagged_arms.push_back(run.arms[k]);
    }
    std::sort(rec.flagged_arms.begin(), rec.flagged_arms.end());
    return rec;
}

}  // namespace

RunRecord successive_elimination(const ProblemInstance &instance, const Wbm &measurement,
                                 const PolicyConfig &config,
                                 const std::vector<std::size_t> &arms) {
    Run run = start_run(instance, measurement, config, arms);
    std::vector<std::size_t> active(run.arms.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
    bool cutoff_hit = false;

    while (active.size() > 1) {
        if (run.pulls + 2 * active.size() > config.cutoff_pulls) {
            cutoff_hit = true;
            break;
        }
        for (std::size_t k : active) sample(run, k);
        std::vector<std::size_t> keep;
        for (std::size_t k : active) {
            EstimatorState &e = run.est[k];
            const double lcb = e.S_hat() -
                               lil_width(static_cast<double>(e.pair_samples()), run.delta_prime,
                                         run.lil);
            if (lcb > config.zeta) {
                e.status = ArmStatus::FlaggedSeparable;
            } else {
                keep.push_back(k);
            }
        }
        active = std::move(keep);
    }
    if (!cutoff_hit && active.size() == 1) run.est[active[0]].status = ArmStatus::FlaggedEntangled;
    return finish(run, "successive_elimination", measurement, config, 0, cutoff_hit);
}

std::uint64_t warm_start_T(const LilParams &params) {
    params.validate();
    const double value = 0.25 * std::log(static_cast<double>(params.K) + 1.0) *
                         std::log(std::max(1.0 / params.delta, 2.0)) *
                         std::pow(params.c_eps(), 1.5);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
}

RunRecord lil_hdoc(const ProblemInstance &instance, const Wbm &measurement,
                   const PolicyConfig &config, const std::vector<std::size_t> &arms) {
    Run run = start_run(instance, measurement, config, arms);
    const std::uint64_t T = config.warm_start.value_or(warm_start_T(run.lil));
    if (T < 1) throw DomainError("warm start T must be >= 1");
    bool cutoff_hit = false;

    for (std::size_t k = 0; k < run.est.size() && !cutoff_hit; ++k) {
        for (std::uint64_t s = 0; s < T; ++s) {
            if (run.pulls + 2 > config.cutoff_pulls) {
                cutoff_hit = true;
                break;
            }
            sample(run, k);
        }
    }

    std::vector<std::size_t> active(run.arms.size());
    std::iota(active.begin(), active.end(), std::size_t{0});
    std::uint64_t t = 0;
    for (const auto &e : run.est) t += e.pair_samples();

    while (!cutoff_hit && !active.empty()) {
        if (run.pulls + 2 > config.cutoff_pulls) {
            cutoff_hit = true;
            break;
        }
        const double log_t = std::log(static_cast<double>(std::max<std::uint64_t>(t, 1)));
        std::size_t pick = 0;
        double best = 0.0;
        for (std::size_t idx = 0; idx < active.size(); ++idx) {
            const EstimatorState &e = run.est[active[idx]];
            const double bonus =
                std::sqrt(log_t / (2.0 * static_cast<double>(e.pair_samples())));
            const double score =
                config.rule == SelectionRule::MaxUcb ? e.S_hat() + bonus : -(e.S_hat() - bonus);
            if (idx == 0 || score > best) {
                best = score;
                pick = idx;
            }
        }
        const std::size_t h = active[pick];
        sample(run, h);
        ++t;
        EstimatorState &e = run.est[h];
        const double u =
            lil_width(static_cast<double>(e.pair_samples()), run.delta_prime, run.lil);
        const double s = e.S_hat();
        if (s - u >= config.zeta) {
            e.status = ArmStatus::FlaggedSeparable;
        } else if (s + u < config.zeta) {
            e.status = ArmStatus::FlaggedEntangled;
        }
        if (e.status != ArmStatus::Active) active.erase(active.begin() + static_cast<long>(pick));
    }
    return finish(run, "lil_hdoc", measurement, config, T, cutoff_hit);
}

std::vector<double> theoretical_budget_se(const std::vector<double> &gaps,
                                          const LilParams &params) {
    params.validate();
    const double e = params.epsilon;
    const double s2 = params.sigma * params.sigma;
    const double c = params.c_eps();
    const double k = static_cast<double>(params.K);
    const double d = params.delta;
    const double root = (1.0 + std::sqrt(e)) * (1.0 + std::sqrt(e));
    std::vector<double> out;
    out.reserve(gaps.size());
    for (double gap : gaps) {
        if (!(gap > 0.0)) throw DomainError("gap must be positive for a finite budget");
        const double g2 = gap * gap;
        const double inner = std::log(8.0 * s2 * c * (1.0 + e) * (1.0 + e) * root * k / (d * g2));
        const double n = 8.0 * s2 * (1.0 + e) * root / g2 * std::log(2.0 * c * k * inner / d);
        out.push_back(std::ceil(n));
    }
    return out;
}

}  // namespace qmab
