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

#include "qmab/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qmab {

namespace {

struct Moments {
    double mean = 0.0;
    double std = 0.0;
};

Moments moments(const std::vector<double> &xs) {
    Moments m;
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return m;
}

double phase_one_bias(const ProblemInstance &instance, const WorkflowResult &res) {
    if (res.phases.empty()) return 0.0;
    const RunRecord &rec = res.phases.front();
    double total = 0.0;
    for (const ArmRecord &a : rec.per_arm) {
        total += std::abs(a.S_hat - instance.exact_S[a.arm][rec.wbm_id - 1]);
    }
    return rec.per_arm.empty() ? 0.0 : total / static_cast<double>(rec.per_arm.size());
}

}  // namespace

std::vector<Fig6Row> sweep_fig6(const ProblemInstance &instance, const Fig6Config &config) {
    std::vector<Fig6Row> rows;
    struct Curve {
        std::string tag;
        SamplingConfig sampling;
    };
    std::vector<Curve> curves{{"noiseless", config.base.sampling}};
    if (config.readout_flip >= 0.0) {
        SamplingConfig noisy = config.base.sampling;
        noisy.noise = NoiseModel::symmetric_flip(config.readout_flip);
        curves.push_back({"readout", noisy});
    }
    for (double delta : config.deltas) {
        for (const Curve &curve : curves) {
            std::vector<double> copies(config.trials);
            std::vector<char> wrong(config.trials);
            parallel_for(config.trials, config.parallel, [&](std::size_t r) {
                PolicyConfig cfg = config.base;
                cfg.lil.delta = delta;
                cfg.sampling = curve.sampling;
                cfg.seed = derive_seed(config.master_seed, {r});
                const WorkflowResult res = workflow_bds(instance, cfg, 1, config.split_delta);
                copies[r] = static_cast<double>(res.copies);
                wrong[r] = !res.success;
            });
            const Moments m = moments(copies);
            std::uint64_t errors = 0;
            for (char w : wrong) errors += w ? 1 : 0;
            rows.push_back({delta, curve.tag, m.mean, m.std, config.trials,
                            config.trials ? static_cast<double>(errors) /
                                                static_cast<double>(config.trials)
                                          : 0.0});
        }
        if (config.tomography_epsilon > 0.0) {
            const ShotRequirement req = required_shots(config.tomography_epsilon, delta);
            rows.push_back({delta, "tomography",
                            static_cast<double>(req.per_state * instance.K()), 0.0, 0, 0.0});
        }
    }
    return rows;
}

Fig78Config make_fig78_config() {
    Fig78Config c;
    c.base.zeta = kArbitraryZeta;
    return c;
}

WbmOrder random_wbm_order(Rng &rng) {
    WbmOrder order = kDefaultOrder;
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = std::min<std::size_t>(
            i, static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1)));
        std::swap(order[i], order[j]);
    }
    return order;
}

Fig78Result sweep_fig7_fig8(const Fig78Config &config) {
    const std::size_t N = config.instances;
    std::vector<ProblemInstance> instances(N);
    std::vector<WbmOrder> orders(N, config.order);
    parallel_for(N, config.parallel, [&](std::size_t n) {
        instances[n] =
            generate_ginibre_instance(config.K, derive_seed(config.master_seed, {n, 0}), true);
        if (config.random_order) {
            Rng rng = Rng::substream(config.master_seed, {n, 2});
            orders[n] = random_wbm_order(rng);
        }
    });

    const std::size_t D = config.deltas.size();
    std::vector<WorkflowResult> results(D * N);
    for (std::size_t d = 0; d < D; ++d) {
        parallel_for(N, config.parallel, [&](std::size_t n) {
            PolicyConfig cfg = config.base;
            cfg.lil.delta = config.deltas[d];
            cfg.seed = derive_seed(config.master_seed, {n, 1});
            results[d * N + n] = workflow_arbitrary(instances[n], cfg, orders[n]);
        });
    }
    std::vector<char> censored(N, 0);
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t n = 0; n < N; ++n)
            if (results[d * N + n].cutoff_hit) censored[n] = 1;

    Fig78Result out;
    for (std::size_t d = 0; d < D; ++d) {
        Fig7Row row;
        row.delta = config.deltas[d];
        row.n_instances = N;
        std::array<std::uint64_t, kNumWbms + 1> used{};
        std::uint64_t hits = 0, hits_uncensored = 0;
        double copies = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const WorkflowResult &res = results[d * N + n];
            copies += static_cast<double>(res.copies);
            if (res.cutoff_hit) ++row.cutoffs;
            if (!censored[n]) ++row.uncensored_instances;
            if (res.inconclusive) {
                ++row.inconclusive;
            } else if (res.success) {
                ++hits;
                if (!censored[n]) ++hits_uncensored;
                ++used[static_cast<std::size_t>(res.wbms_used)];
            } else {
                ++row.wrong_singleton;
            }
        }
        row.detection_ratio = N ? static_cast<double>(hits) / static_cast<double>(N) : 0.0;
        row.detection_ratio_uncensored =
            row.uncensored_instances ? static_cast<double>(hits_uncensored) /
                                           static_cast<double>(row.uncensored_instances)
                                     : 0.0;
        row.mean_copies = N ? copies / static_cast<double>(N) : 0.0;
        out.fig7.push_back(row);
        std::uint64_t cumulative = 0;
        for (int k = 1; k <= kNumWbms; ++k) {
            cumulative += used[static_cast<std::size_t>(k)];
            out.fig8.push_back({row.delta, k, cumulative});
        }
    }
    return out;
}

Fig9Config make_fig9_config() {
    Fig9Config c;
    c.base.estimator = EstimatorMode::UStatistic;
    c.f_grid = default_f_grid();
    return c;
}

std::vector<std::uint64_t> default_f_grid() { return parse_f_grid("50:10000:50"); }

std::vector<std::uint64_t> parse_f_grid(const std::string &spec) {
    std::uint64_t a = 0, b = 0, s = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || s == 0 || a == 0 || b < a) {
        throw DomainError("F grid must look like start:stop:step with 0 < start <= stop");
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = a; f <= b; f += s) out.push_back(f);
    return out;
}

std::vector<Fig9Row> sweep_fig9(const ProblemInstance &instance, const Fig9Config &config) {
    const std::size_t R = config.trials;
    std::vector<Fig9Row> rows;
    for (double delta : config.deltas) {
        auto run = [&](std::uint64_t cadence, std::size_t r) {
            PolicyConfig cfg = config.base;
            cfg.lil.delta = delta;
            cfg.sampling.noise = config.noise;
            cfg.sampling.mitigation_cadence = cadence;
            cfg.seed = derive_seed(config.master_seed, {r});
            return workflow_bds(instance, cfg);
        };
        std::vector<WorkflowResult> plain(R);
        parallel_for(R, config.parallel, [&](std::size_t r) { plain[r] = run(0, r); });
        double plain_copies = 0.0, plain_bias = 0.0;
        std::uint64_t plain_errors = 0;
        for (const auto &res : plain) {
            plain_copies += static_cast<double>(res.copies);
            plain_bias += phase_one_bias(instance, res);
            plain_errors += res.success ? 0 : 1;
        }
        plain_copies /= static_cast<double>(R);
        plain_bias /= static_cast<double>(R);

        const std::size_t cells = config.f_grid.size() * R;
        std::vector<WorkflowResult> mitigated(cells);
        parallel_for(cells, config.parallel, [&](std::size_t idx) {
            mitigated[idx] = run(config.f_grid[idx / R], idx % R);
        });
        for (std::size_t fi = 0; fi < config.f_grid.size(); ++fi) {
            Fig9Row row;
            row.delta = delta;
            row.F = config.f_grid[fi];
            std::uint64_t errors = 0;
            for (std::size_t r = 0; r < R; ++r) {
                const WorkflowResult &res = mitigated[fi * R + r];
                row.mean_copies_mitigated += static_cast<double>(res.copies);
                row.mean_abs_bias_mitigated += phase_one_bias(instance, res);
                errors += res.success ? 0 : 1;
            }
            row.mean_copies_mitigated /= static_cast<double>(R);
            row.mean_abs_bias_mitigated /= static_cast<double>(R);
            row.mean_copies_unmitigated = plain_copies;
            row.mean_abs_bias_unmitigated = plain_bias;
            row.error_rate_mitigated = static_cast<double>(errors) / static_cast<double>(R);
            row.error_rate_unmitigated = static_cast<double>(plain_errors) / static_cast<double>(R);
            row.pct_reduction =
                plain_copies > 0.0 ? 100.0 * (plain_copies - row.mean_copies_mitigated) / plain_copies
                                   : 0.0;
            row.correct = row.error_rate_mitigated <= delta;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<TomographySweepRow> sweep_tomography(const ProblemInstance &instance, double epsilon,
                                                 const std::vector<double> &deltas,
                                                 std::uint64_t trials, std::uint64_t master_seed) {
    std::vector<TomographySweepRow> rows;
    for (double delta : deltas) {
        TomographySweepRow row;
        row.delta = delta;
        row.epsilon = epsilon;
        const ShotRequirement req = required_shots(epsilon, delta);
        row.copies_per_state = req.per_state;
        row.total_copies = req.per_state * instance.K();
        double acc = 0.0;
        for (std::uint64_t r = 0; r < trials; ++r) {
            acc += classify_batch(instance, epsilon, delta, derive_seed(master_seed, {r})).accuracy;
        }
        row.accuracy = trials ? acc / static_cast<double>(trials) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fig6_csv(const std::vector<Fig6Row> &rows) {
    std::string out = "delta,tag,mean_copies,std_copies,trials\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + r.tag + "," + format_double(r.mean_copies) + "," +
               format_double(r.std_copies) + "," + std::to_string(r.trials) + "\n";
    }
    return out;
}

std::string fig7_csv(const std::vector<Fig7Row> &rows) {
    std::string out = "delta,detection_ratio,n_instances\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + format_double(r.detection_ratio) + "," +
               std::to_string(r.n_instances) + "\n";
    }
    return out;
}

std::string fig8_csv(const std::vector<Fig8Row> &rows) {
    std::string out = "delta,wbms_used,cumulative_count\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + std::to_string(r.wbms_used) + "," +
               std::to_string(r.cumulative_count) + "\n";
    }
    return out;
}

std::string fig9_csv(const std::vector<Fig9Row> &rows) {
    std::string out = "delta,F,pct_reduction,correct\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + std::to_string(r.F) + "," +
               format_double(r.pct_reduction) + "," + (r.correct ? "1" : "0") + "\n";
    }
    return out;
}

std::string tomography_csv(const std::vector<TomographySweepRow> &rows) {
    std::string out = "delta,epsilon,copies_per_state,total_copies,accuracy\n";
    for (const auto &r : rows) {
        out += format_double(r.delta) + "," + format_double(r.epsilon) + "," +
               std::to_string(r.copies_per_state) + "," + std::to_string(r.total_copies) + "," +
               format_double(r.accuracy) + "\n";
    }
    return out;
}

}  // namespace qmab
