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

#include "qmab/workflow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace qmab {

void validate_order(const WbmOrder &order) {
    std::array<bool, kNumWbms> seen{};
    for (int id : order) {
        if (id < 1 || id > kNumWbms || seen[id - 1]) {
            throw DomainError("measurement order must be a permutation of 1..6");
        }
        seen[id - 1] = true;
    }
}

namespace {

void add_phase(WorkflowResult &out, RunRecord rec) {
    out.pulls += rec.pulls;
    out.copies += rec.copies;
    out.cutoff_hit = out.cutoff_hit || rec.cutoff_hit;
    ++out.wbms_used;
    out.phases.push_back(std::move(rec));
}

}  // namespace

WorkflowResult workflow_bds(const ProblemInstance &instance, const PolicyConfig &base,
                            int first_wbm, bool split_delta) {
    if (first_wbm != 1 && first_wbm != 2) throw DomainError("first_wbm must be 1 or 2");
    const int second_wbm = 3 - first_wbm;
    PolicyConfig cfg = base;
    if (split_delta) cfg.lil.delta = base.lil.delta / 2.0;

    WorkflowResult out;
    out.workflow = "workflow_bds";
    cfg.seed = derive_seed(base.seed, {1});
    RunRecord first = lil_hdoc(instance, wbm(first_wbm), cfg);
    out.flagged_arms = first.flagged_arms;
    add_phase(out, std::move(first));

    if (out.flagged_arms.size() < instance.K()) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < instance.K(); ++i) {
            if (!std::binary_search(out.flagged_arms.begin(), out.flagged_arms.end(), i)) {
                rest.push_back(i);
            }
        }
        cfg.seed = derive_seed(base.seed, {2});
        RunRecord second = lil_hdoc(instance, wbm(second_wbm), cfg, rest);
        out.flagged_arms.insert(out.flagged_arms.end(), second.flagged_arms.begin(),
                                second.flagged_arms.end());
        std::sort(out.flagged_arms.begin(), out.flagged_arms.end());
        add_phase(out, std::move(second));
    }
    out.success = out.flagged_arms == instance.entangled_arms();
    return out;
}

WorkflowResult workflow_arbitrary(const ProblemInstance &instance, const PolicyConfig &base,
                                  const WbmOrder &order) {
    validate_order(order);
    WorkflowResult out;
    out.workflow = "workflow_arbitrary";
    PolicyConfig cfg = base;
    for (std::size_t phase = 0; phase < order.size(); ++phase) {
        cfg.seed = derive_seed(base.seed, {phase + 1});
        RunRecord rec = lil_hdoc(instance, wbm(order[phase]), cfg);
        const bool singleton = rec.flagged_arms.size() == 1;
        if (singleton) out.flagged_arms = rec.flagged_arms;
        add_phase(out, std::move(rec));
        if (singleton) break;
    }
    out.inconclusive = out.flagged_arms.size() != 1;
    out.success = !out.inconclusive && out.flagged_arms == instance.entangled_arms();
    return out;
}

WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<std::size_t> harness_target(const ProblemInstance &instance,
                                        const HarnessConfig &config) {
    std::vector<std::size_t> target;
    switch (config.policy) {
    case HarnessPolicy::SuccessiveElimination: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < instance.K(); ++i) {
            if (instance.exact_S[i][config.wbm_id - 1] < instance.exact_S[best][config.wbm_id - 1]) {
                best = i;
            }
        }
        target.push_back(best);
        break;
    }
    case HarnessPolicy::LilHdoc:
        for (std::size_t i = 0; i < instance.K(); ++i) {
            if (instance.exact_S[i][config.wbm_id - 1] < config.base.zeta) target.push_back(i);
        }
        break;
    case HarnessPolicy::WorkflowBds:
    case HarnessPolicy::WorkflowArbitrary:
        target = instance.entangled_arms();
        break;
    }
    return target;
}

std::vector<CorrectnessRow> delta_correctness_harness(const ProblemInstance &instance,
                                                      const HarnessConfig &config) {
    if (config.trials == 0) throw DomainError("harness needs at least one trial");
    const std::vector<std::size_t> target = harness_target(instance, config);
    std::vector<CorrectnessRow> rows;
    for (double delta : config.deltas) {
        std::vector<std::uint64_t> copies(config.trials);
        std::vector<char> wrong(config.trials), cut(config.trials);
        parallel_for(config.trials, config.parallel, [&](std::size_t r) {
            PolicyConfig cfg = config.base;
            cfg.lil.delta = delta;
            cfg.seed = derive_seed(config.master_seed, {r});
            std::vector<std::size_t> flagged;
            bool cutoff = false;
            switch (config.policy) {
            case HarnessPolicy::SuccessiveElimination: {
                const RunRecord rec = successive_elimination(instance, wbm(config.wbm_id), cfg);
                flagged = rec.flagged_arms;
                cutoff = rec.cutoff_hit;
                copies[r] = rec.copies;
                break;
            }
            case HarnessPolicy::LilHdoc: {
                const RunRecord rec = lil_hdoc(instance, wbm(config.wbm_id), cfg);
                flagged = rec.flagged_arms;
                cutoff = rec.cutoff_hit;
                copies[r] = rec.copies;
                break;
            }
            case HarnessPolicy::WorkflowBds: {
                const WorkflowResult res =
                    workflow_bds(instance, cfg, config.first_wbm, config.split_delta);
                flagged = res.flagged_arms;
                cutoff = res.cutoff_hit;
                copies[r] = res.copies;
                break;
            }
            case HarnessPolicy::WorkflowArbitrary: {
                const WorkflowResult res = workflow_arbitrary(instance, cfg, config.order);
                flagged = res.inconclusive ? std::vector<std::size_t>{} : res.flagged_arms;
                cutoff = res.cutoff_hit;
                copies[r] = res.copies;
                break;
            }
            }
            wrong[r] = flagged != target;
            cut[r] = cutoff;
        });
        CorrectnessRow row;
        row.delta = delta;
        row.trials = config.trials;
        double total = 0.0;
        for (std::size_t r = 0; r < config.trials; ++r) {
            row.errors += wrong[r] ? 1 : 0;
            row.cutoffs += cut[r] ? 1 : 0;
            total += static_cast<double>(copies[r]);
        }
        row.mean_copies = total / static_cast<double>(config.trials);
        row.error_rate = static_cast<double>(row.errors) / static_cast<double>(row.trials);
        row.wilson = wilson_interval(row.errors, row.trials);
        row.pass = row.wilson.lo <= delta;
        rows.push_back(row);
    }
    return rows;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qmab
