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

// qmab command-line front end.
//
//   qmab gen-instance --family bds --k 5 --m 3 --seed 42 --out i.json
//   qmab run workflow-bds --instance i.json --delta 0.05
//   qmab sweep fig9 --f-grid 50:10000:50 --parallel 4
//   qmab verify
//
// Exit codes: 0 ok, 1 error, 2 copy cutoff reached, 3 inconclusive.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmab/serialize.hpp"
#include "qmab/sweeps.hpp"
#include "qmab/verify.hpp"

namespace {

using qmab::Json;

constexpr int kExitCutoff = 2;
constexpr int kExitInconclusive = 3;

std::string output_path(const std::string &explicit_path, const std::string &default_name) {
    if (!explicit_path.empty()) return explicit_path;
    const char *dir = std::getenv("QMAB_OUTPUT_DIR");
    std::filesystem::path base = dir && *dir ? dir : ".";
    std::filesystem::create_directories(base);
    return (base / default_name).string();
}

void write_json(const std::string &path, const Json &j) {
    qmab::write_file(path, qmab::dump(j));
    std::printf("wrote %s\n", path.c_str());
}

void write_text(const std::string &path, const std::string &text) {
    qmab::write_file(path, text);
    std::printf("wrote %s\n", path.c_str());
}

/// "a.csv" -> "a.meta.json".
std::string meta_path(const std::string &csv) {
    std::filesystem::path p(csv);
    p.replace_extension(".meta.json");
    return p.string();
}

qmab::WbmOrder parse_order(const std::string &text) {
    qmab::WbmOrder order{};
    std::stringstream in(text);
    std::string item;
    std::size_t n = 0;
    while (std::getline(in, item, ',')) {
        if (n >= order.size()) throw qmab::DomainError("measurement order needs six entries");
        order[n++] = std::stoi(item);
    }
    if (n != order.size()) throw qmab::DomainError("measurement order needs six entries");
    qmab::validate_order(order);
    return order;
}

std::string order_text(const qmab::WbmOrder &order) {
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(order[i]);
    }
    return s;
}

Json doubles(const std::vector<double> &v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

// ---------------------------------------------------------------------------
// gen-instance

struct GenOptions {
    std::string family = "bds";
    std::size_t k = 5;
    std::size_t m = 3;
    std::uint64_t seed = 0;
    bool promise_one = false;
    double min_gap = 0.05;
    std::string out;
};

void print_instance_summary(const qmab::ProblemInstance &inst) {
    std::printf("K=%zu m=%zu\n", inst.K(), inst.m());
    std::printf("%-4s %-10s", "arm", "entangled");
    for (int id = 1; id <= qmab::kNumWbms; ++id) std::printf(" %10s", ("S_E" + std::to_string(id)).c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < inst.K(); ++i) {
        std::printf("%-4zu %-10s", i, inst.truth[i] ? "yes" : "no");
        for (double s : inst.exact_S[i]) std::printf(" %10.4f", s);
        std::printf("\n");
    }
    std::printf("detected by:");
    for (int id = 1; id <= qmab::kNumWbms; ++id) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < inst.K(); ++i) n += inst.exact_S[i][id - 1] < 0.0 ? 1 : 0;
        std::printf(" E%d=%zu", id, n);
    }
    std::printf("\n");
}

int cmd_gen_instance(const GenOptions &o) {
    qmab::ProblemInstance inst;
    if (o.family == "bds") {
        inst = qmab::generate_bds_instance(o.k, o.m, o.seed, o.min_gap);
    } else if (o.family == "ginibre") {
        inst = qmab::generate_ginibre_instance(o.k, o.seed, o.promise_one);
    } else if (o.family == "reference") {
        inst = qmab::reference_bds_instance();
    } else if (o.family == "outlier") {
        inst = qmab::outlier_instance(o.k, o.seed);
    } else {
        throw CLI::ValidationError("--family", "unknown family '" + o.family + "'");
    }
    Json config;
    config["command"] = "gen-instance";
    config["family"] = o.family;
    config["k"] = o.k;
    config["m"] = o.m;
    config["promise_one_entangled"] = o.promise_one;
    config["min_gap"] = o.min_gap;
    Json j = qmab::to_json(inst);
    j["metadata"] = qmab::artifact_metadata(o.seed, config);
    print_instance_summary(inst);
    write_json(output_path(o.out, "instance.json"), j);
    return 0;
}

// ---------------------------------------------------------------------------
// run

struct PolicyOptions {
    std::string instance;
    double delta = 0.05;
    double epsilon = 0.5;
    double sigma = 2.5;
    std::optional<double> zeta;
    std::optional<std::uint64_t> T;
    int wbm_id = 1;
    std::string wbm_order = "1,2,3,4,5,6";
    std::string noise_file;
    double flip = -1.0;
    std::uint64_t cadence = 0;
    std::uint64_t cutoff = 10'000'000;
    std::uint64_t seed = 0;
    bool split_delta = false;
    std::string rule = "max_ucb";
    std::string estimator = "disjoint_pairs";
    std::string out;
};

void add_policy_flags(CLI::App *app, PolicyOptions &o) {
    app->add_option("--delta", o.delta, "error probability")->capture_default_str();
    app->add_option("--epsilon", o.epsilon, "LIL epsilon")->capture_default_str();
    app->add_option("--sigma", o.sigma, "sub-Gaussian scale")->capture_default_str();
    app->add_option("--zeta", o.zeta, "threshold (0, or -1e-3 for workflow-arbitrary)");
    app->add_option("--T", o.T, "warm-start override (pair samples per arm)");
    app->add_option("--noise", o.noise_file, "noise model JSON file");
    app->add_option("--flip", o.flip, "symmetric readout flip probability");
    app->add_option("--mitigation-cadence", o.cadence, "mitigate every F shots per arm (0 = off)")
        ->capture_default_str();
    app->add_option("--cutoff", o.cutoff, "abandon a run after this many shots")
        ->capture_default_str();
    app->add_option("--seed", o.seed, "master seed")->capture_default_str();
    app->add_option("--rule", o.rule, "max_ucb | min_lcb")->capture_default_str();
    app->add_option("--estimator", o.estimator, "disjoint_pairs | u_statistic | plug_in")
        ->capture_default_str();
    app->add_option("--out", o.out, "output file");
}

qmab::PolicyConfig policy_config(const PolicyOptions &o, double default_zeta) {
    qmab::PolicyConfig c;
    c.lil.delta = o.delta;
    c.lil.epsilon = o.epsilon;
    c.lil.sigma = o.sigma;
    c.zeta = o.zeta.value_or(default_zeta);
    c.warm_start = o.T;
    c.rule = qmab::rule_from_name(o.rule);
    c.estimator = qmab::estimator_from_name(o.estimator);
    if (!o.noise_file.empty()) {
        c.sampling.noise = qmab::noise_from_json(Json::parse(qmab::read_file(o.noise_file)));
    } else if (o.flip >= 0.0) {
        c.sampling.noise = qmab::NoiseModel::symmetric_flip(o.flip);
    }
    c.sampling.mitigation_cadence = o.cadence;
    c.cutoff_pulls = o.cutoff;
    c.seed = o.seed;
    return c;
}

qmab::ProblemInstance load_instance(const std::string &path) {
    if (path.empty()) return qmab::reference_bds_instance();
    return qmab::instance_from_json(Json::parse(qmab::read_file(path)));
}

Json run_config(const std::string &command, const PolicyOptions &o, const qmab::PolicyConfig &c) {
    Json j;
    j["command"] = command;
    j["instance"] = o.instance.empty() ? "reference" : o.instance;
    j["policy"] = qmab::to_json(c);
    return j;
}

int exit_code(bool cutoff, bool inconclusive) {
    if (cutoff) return kExitCutoff;
    if (inconclusive) return kExitInconclusive;
    return 0;
}

std::string flags_text(const std::vector<std::size_t> &flags) {
    std::string s = "{";
    for (std::size_t i = 0; i < flags.size(); ++i) s += (i ? "," : "") + std::to_string(flags[i]);
    return s + "}";
}

int cmd_run_bandit(const std::string &which, const PolicyOptions &o) {
    const qmab::ProblemInstance inst = load_instance(o.instance);
    const qmab::PolicyConfig c = policy_config(o, 0.0);
    Json config = run_config("run " + which, o, c);
    config["wbm"] = o.wbm_id;
    const qmab::RunRecord rec = which == "se"
                                    ? qmab::successive_elimination(inst, qmab::wbm(o.wbm_id), c)
                                    : qmab::lil_hdoc(inst, qmab::wbm(o.wbm_id), c);
    Json j;
    j["metadata"] = qmab::artifact_metadata(o.seed, config);
    j["result"] = qmab::to_json(rec);
    std::printf("%s: flagged %s, copies %llu%s\n", rec.policy.c_str(),
                flags_text(rec.flagged_arms).c_str(), static_cast<unsigned long long>(rec.copies),
                rec.cutoff_hit ? " (cutoff)" : "");
    write_json(output_path(o.out, "run_" + which + ".json"), j);
    return exit_code(rec.cutoff_hit, false);
}

int cmd_run_workflow(const std::string &which, const PolicyOptions &o) {
    const qmab::ProblemInstance inst = load_instance(o.instance);
    const bool arbitrary = which == "workflow-arbitrary";
    const qmab::PolicyConfig c = policy_config(o, arbitrary ? qmab::kArbitraryZeta : 0.0);
    Json config = run_config("run " + which, o, c);
    qmab::WorkflowResult res;
    if (arbitrary) {
        const qmab::WbmOrder order = parse_order(o.wbm_order);
        config["wbm_order"] = order_text(order);
        res = qmab::workflow_arbitrary(inst, c, order);
    } else {
        config["first_wbm"] = o.wbm_id;
        config["split_delta"] = o.split_delta;
        res = qmab::workflow_bds(inst, c, o.wbm_id, o.split_delta);
    }
    Json j;
    j["metadata"] = qmab::artifact_metadata(o.seed, config);
    j["result"] = qmab::to_json(res);
    std::printf("%s: flagged %s, measurements %d, copies %llu%s%s\n", res.workflow.c_str(),
                flags_text(res.flagged_arms).c_str(), res.wbms_used,
                static_cast<unsigned long long>(res.copies), res.cutoff_hit ? " (cutoff)" : "",
                res.inconclusive ? " (inconclusive)" : "");
    write_json(output_path(o.out, "run_" + which + ".json"), j);
    return exit_code(res.cutoff_hit, res.inconclusive);
}

struct TomographyOptions {
    std::string instance;
    double epsilon = 0.01;
    double delta = 0.05;
    double flip = -1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_run_tomography(const TomographyOptions &o) {
    const qmab::ProblemInstance inst = load_instance(o.instance);
    const qmab::NoiseModel noise =
        o.flip >= 0.0 ? qmab::NoiseModel::symmetric_flip(o.flip) : qmab::NoiseModel::identity();
    const qmab::TomographyResult res = qmab::classify_batch(inst, o.epsilon, o.delta, o.seed, noise);
    Json config;
    config["command"] = "run tomography";
    config["instance"] = o.instance.empty() ? "reference" : o.instance;
    config["epsilon"] = o.epsilon;
    config["delta"] = o.delta;
    config["flip"] = o.flip;
    Json j;
    j["metadata"] = qmab::artifact_metadata(o.seed, config);
    j["result"] = qmab::to_json(res);
    std::printf("tomography: %llu shots per setting, %llu copies per state, %llu total, "
                "accuracy %.3f\n",
                static_cast<unsigned long long>(res.shots.per_setting),
                static_cast<unsigned long long>(res.shots.per_state),
                static_cast<unsigned long long>(res.total_copies), res.accuracy);
    write_json(output_path(o.out, "run_tomography.json"), j);
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    PolicyOptions policy;
    std::vector<double> deltas;
    std::uint64_t trials = 0;
    unsigned parallel = 1;
    std::string f_grid = "50:10000:50";
    std::uint64_t instances = 200;
    std::size_t k = 5;
    bool fixed_order = false;
    double readout_flip = 0.02;
    double tomography_epsilon = 0.01;
    std::string harness_policy = "lilhdoc";
};

int cmd_sweep_fig6(SweepOptions &o) {
    qmab::Fig6Config c;
    if (!o.deltas.empty()) c.deltas = o.deltas;
    if (o.trials) c.trials = o.trials;
    c.master_seed = o.policy.seed;
    c.base = policy_config(o.policy, 0.0);
    c.split_delta = o.policy.split_delta;
    c.readout_flip = o.readout_flip;
    c.tomography_epsilon = o.tomography_epsilon;
    c.parallel = o.parallel;
    const auto rows = qmab::sweep_fig6(load_instance(o.policy.instance), c);
    Json config = run_config("sweep fig6", o.policy, c.base);
    config["deltas"] = doubles(c.deltas);
    config["trials"] = c.trials;
    config["split_delta"] = c.split_delta;
    config["readout_flip"] = c.readout_flip;
    config["tomography_epsilon"] = c.tomography_epsilon;
    const std::string path = output_path(o.policy.out, "fig6.csv");
    write_text(path, qmab::fig6_csv(rows));
    Json meta = qmab::artifact_metadata(c.master_seed, config);
    Json err = Json::array();
    for (const auto &r : rows) {
        err.push_back({{"delta", r.delta}, {"tag", r.tag}, {"error_rate", r.error_rate}});
    }
    meta["error_rates"] = std::move(err);
    write_json(meta_path(path), meta);
    return 0;
}

int cmd_sweep_fig7(SweepOptions &o) {
    qmab::Fig78Config c = qmab::make_fig78_config();
    if (!o.deltas.empty()) c.deltas = o.deltas;
    c.instances = o.instances;
    c.K = o.k;
    c.master_seed = o.policy.seed;
    c.base = policy_config(o.policy, qmab::kArbitraryZeta);
    c.random_order = !o.fixed_order;
    c.order = parse_order(o.policy.wbm_order);
    c.parallel = o.parallel;
    const auto result = qmab::sweep_fig7_fig8(c);
    Json config = run_config("sweep fig7", o.policy, c.base);
    config["deltas"] = doubles(c.deltas);
    config["instances"] = c.instances;
    config["k"] = c.K;
    config["random_order"] = c.random_order;
    if (!c.random_order) config["wbm_order"] = order_text(c.order);
    const std::string path7 = output_path(o.policy.out, "fig7.csv");
    const std::string path8 =
        (std::filesystem::path(path7).parent_path() / "fig8.csv").string();
    write_text(path7, qmab::fig7_csv(result.fig7));
    write_text(path8, qmab::fig8_csv(result.fig8));
    Json meta = qmab::artifact_metadata(c.master_seed, config);
    Json rows = Json::array();
    for (const auto &r : result.fig7) {
        Json x;
        x["delta"] = r.delta;
        x["detection_ratio"] = r.detection_ratio;
        x["n_instances"] = r.n_instances;
        x["inconclusive"] = r.inconclusive;
        x["wrong_singleton"] = r.wrong_singleton;
        x["cutoffs"] = r.cutoffs;
        x["mean_copies"] = r.mean_copies;
        x["uncensored_instances"] = r.uncensored_instances;
        x["detection_ratio_uncensored"] = r.detection_ratio_uncensored;
        rows.push_back(std::move(x));
    }
    meta["fig7_detail"] = std::move(rows);
    write_json(meta_path(path7), meta);
    return 0;
}

int cmd_sweep_fig9(SweepOptions &o, bool estimator_given) {
    qmab::Fig9Config c = qmab::make_fig9_config();
    if (!o.deltas.empty()) c.deltas = o.deltas;
    if (o.trials) c.trials = o.trials;
    c.f_grid = qmab::parse_f_grid(o.f_grid);
    c.master_seed = o.policy.seed;
    c.base = policy_config(o.policy, 0.0);
    if (!estimator_given) c.base.estimator = qmab::EstimatorMode::UStatistic;
    if (!o.policy.noise_file.empty() || o.policy.flip >= 0.0) c.noise = c.base.sampling.noise;
    c.parallel = o.parallel;
    const auto rows = qmab::sweep_fig9(load_instance(o.policy.instance), c);
    Json config = run_config("sweep fig9", o.policy, c.base);
    config["deltas"] = doubles(c.deltas);
    config["f_grid"] = o.f_grid;
    config["trials"] = c.trials;
    config["noise"] = qmab::to_json(c.noise);
    const std::string path = output_path(o.policy.out, "fig9.csv");
    write_text(path, qmab::fig9_csv(rows));
    Json meta = qmab::artifact_metadata(c.master_seed, config);
    Json detail = Json::array();
    for (const auto &r : rows) {
        Json x;
        x["delta"] = r.delta;
        x["F"] = r.F;
        x["mean_copies_mitigated"] = r.mean_copies_mitigated;
        x["mean_copies_unmitigated"] = r.mean_copies_unmitigated;
        x["error_rate_mitigated"] = r.error_rate_mitigated;
        x["error_rate_unmitigated"] = r.error_rate_unmitigated;
        x["mean_abs_bias_mitigated"] = r.mean_abs_bias_mitigated;
        x["mean_abs_bias_unmitigated"] = r.mean_abs_bias_unmitigated;
        detail.push_back(std::move(x));
    }
    meta["fig9_detail"] = std::move(detail);
    write_json(meta_path(path), meta);
    return 0;
}

int cmd_sweep_tomography(SweepOptions &o) {
    std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{0.3, 0.1, 0.05, 0.01}
                                                   : o.deltas;
    const std::uint64_t trials = o.trials ? o.trials : 20;
    const auto rows = qmab::sweep_tomography(load_instance(o.policy.instance),
                                             o.tomography_epsilon, deltas, trials, o.policy.seed);
    Json config;
    config["command"] = "sweep tomography";
    config["instance"] = o.policy.instance.empty() ? "reference" : o.policy.instance;
    config["epsilon"] = o.tomography_epsilon;
    config["deltas"] = doubles(deltas);
    config["trials"] = trials;
    const std::string path = output_path(o.policy.out, "tomography.csv");
    write_text(path, qmab::tomography_csv(rows));
    write_json(meta_path(path), qmab::artifact_metadata(o.policy.seed, config));
    return 0;
}

int cmd_sweep_correctness(SweepOptions &o) {
    qmab::HarnessConfig c;
    const std::string &p = o.harness_policy;
    double zeta = 0.0;
    if (p == "se") {
        c.policy = qmab::HarnessPolicy::SuccessiveElimination;
    } else if (p == "lilhdoc") {
        c.policy = qmab::HarnessPolicy::LilHdoc;
    } else if (p == "workflow-bds") {
        c.policy = qmab::HarnessPolicy::WorkflowBds;
    } else if (p == "workflow-arbitrary") {
        c.policy = qmab::HarnessPolicy::WorkflowArbitrary;
        zeta = qmab::kArbitraryZeta;
    } else {
        throw CLI::ValidationError("--policy", "unknown policy '" + p + "'");
    }
    c.base = policy_config(o.policy, zeta);
    c.deltas = o.deltas.empty() ? std::vector<double>{0.05, 0.1} : o.deltas;
    c.trials = o.trials ? o.trials : 200;
    c.master_seed = o.policy.seed;
    c.wbm_id = o.policy.wbm_id;
    c.first_wbm = o.policy.wbm_id;
    c.split_delta = o.policy.split_delta;
    c.order = parse_order(o.policy.wbm_order);
    c.parallel = o.parallel;
    const auto rows = qmab::delta_correctness_harness(load_instance(o.policy.instance), c);
    Json config = run_config("sweep correctness", o.policy, c.base);
    config["harness_policy"] = p;
    config["deltas"] = doubles(c.deltas);
    config["trials"] = c.trials;
    Json j;
    j["metadata"] = qmab::artifact_metadata(c.master_seed, config);
    Json out = Json::array();
    bool all = true;
    for (const auto &r : rows) {
        out.push_back(qmab::to_json(r));
        all = all && r.pass;
        std::printf("delta %.3g: %llu/%llu errors, wilson [%.4f, %.4f] %s\n", r.delta,
                    static_cast<unsigned long long>(r.errors),
                    static_cast<unsigned long long>(r.trials), r.wilson.lo, r.wilson.hi,
                    r.pass ? "PASS" : "FAIL");
    }
    j["rows"] = std::move(out);
    write_json(output_path(o.policy.out, "correctness.json"), j);
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(double perturbation) {
    qmab::VerifyOptions options;
    options.projector_perturbation = perturbation;
    bool all = true;
    for (const qmab::VerifyCheck &c : qmab::run_verify(options)) {
        all = all && c.pass;
        std::printf("%-38s %s  max_dev=%.3e tol=%.1e", c.name.c_str(), c.pass ? "PASS" : "FAIL",
                    c.max_deviation, c.tolerance);
        if (!c.detail.empty()) std::printf("  %s", c.detail.c_str());
        std::printf("\n");
    }
    std::printf("%s\n", all ? "all checks passed" : "some checks FAILED");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Batch entanglement detection with witness measurements and bandit policies"};
    app.set_version_flag("--version", qmab::version());
    app.require_subcommand(1);

    GenOptions gen;
    auto *gen_cmd = app.add_subcommand("gen-instance", "generate a problem instance");
    gen_cmd->add_option("--family", gen.family, "bds | ginibre | reference | outlier")
        ->capture_default_str();
    gen_cmd->add_option("--k", gen.k, "number of states")->capture_default_str();
    gen_cmd->add_option("--m", gen.m, "entangled states (bds)")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "seed")->capture_default_str();
    gen_cmd->add_flag("--promise-one-entangled", gen.promise_one,
                      "redraw ginibre batches until exactly one state is entangled");
    gen_cmd->add_option("--min-gap", gen.min_gap, "bds rejection gap")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output file");

    auto *run_cmd = app.add_subcommand("run", "single run on an instance");
    run_cmd->require_subcommand(1);
    PolicyOptions run_opts;
    TomographyOptions tomo_opts;
    std::vector<std::pair<std::string, CLI::App *>> runs;
    for (const char *name : {"se", "lilhdoc", "workflow-bds", "workflow-arbitrary"}) {
        auto *sub = run_cmd->add_subcommand(name);
        sub->add_option("--instance", run_opts.instance, "instance JSON (default: reference)");
        add_policy_flags(sub, run_opts);
        const std::string n = name;
        if (n == "se" || n == "lilhdoc") {
            sub->add_option("--wbm", run_opts.wbm_id, "measurement 1..6")->capture_default_str();
        } else if (n == "workflow-bds") {
            sub->add_option("--wbm", run_opts.wbm_id, "first measurement (1 or 2)")
                ->capture_default_str();
            sub->add_flag("--split-delta", run_opts.split_delta, "delta/2 per phase");
        } else {
            sub->add_option("--wbm-order", run_opts.wbm_order, "permutation of 1..6")
                ->capture_default_str();
        }
        runs.emplace_back(n, sub);
    }
    auto *run_tomo = run_cmd->add_subcommand("tomography");
    run_tomo->add_option("--instance", tomo_opts.instance, "instance JSON (default: reference)");
    run_tomo->add_option("--epsilon", tomo_opts.epsilon, "target accuracy")->capture_default_str();
    run_tomo->add_option("--delta", tomo_opts.delta, "error probability")->capture_default_str();
    run_tomo->add_option("--flip", tomo_opts.flip, "readout flip on the ZZ setting");
    run_tomo->add_option("--seed", tomo_opts.seed, "seed")->capture_default_str();
    run_tomo->add_option("--out", tomo_opts.out, "output file");

    auto *sweep_cmd = app.add_subcommand("sweep", "experiment sweeps written as CSV");
    sweep_cmd->require_subcommand(1);
    SweepOptions sweep;
    std::vector<std::pair<std::string, CLI::App *>> sweeps;
    for (const char *name : {"fig6", "fig7", "fig9", "tomography", "correctness"}) {
        auto *sub = sweep_cmd->add_subcommand(name);
        sub->add_option("--instance", sweep.policy.instance, "instance JSON (default: reference)");
        add_policy_flags(sub, sweep.policy);
        sub->add_option("--deltas", sweep.deltas, "comma-separated delta grid")->delimiter(',');
        sub->add_option("--trials", sweep.trials, "trials per cell");
        sub->add_option("--parallel", sweep.parallel, "worker threads")->capture_default_str();
        const std::string n = name;
        if (n == "fig6") {
            sub->add_flag("--split-delta", sweep.policy.split_delta, "delta/2 per phase");
            sub->add_option("--readout-flip", sweep.readout_flip,
                            "flip of the readout curve (negative skips it)")
                ->capture_default_str();
            sub->add_option("--tomography-epsilon", sweep.tomography_epsilon,
                            "accuracy of the tomography rows (non-positive skips them)")
                ->capture_default_str();
        } else if (n == "fig7") {
            sub->add_option("--instances", sweep.instances, "number of instances")
                ->capture_default_str();
            sub->add_option("--k", sweep.k, "states per instance")->capture_default_str();
            sub->add_option("--wbm-order", sweep.policy.wbm_order, "order used with --fixed-order")
                ->capture_default_str();
            sub->add_flag("--fixed-order", sweep.fixed_order,
                          "use --wbm-order for every instance instead of a random order");
        } else if (n == "fig9") {
            sub->add_option("--f-grid", sweep.f_grid, "start:stop:step")->capture_default_str();
        } else if (n == "tomography") {
            sub->add_option("--tomography-epsilon", sweep.tomography_epsilon, "target accuracy")
                ->capture_default_str();
        } else {
            sub->add_option("--policy", sweep.harness_policy,
                            "se | lilhdoc | workflow-bds | workflow-arbitrary")
                ->capture_default_str();
            sub->add_option("--wbm", sweep.policy.wbm_id, "measurement")->capture_default_str();
            sub->add_option("--wbm-order", sweep.policy.wbm_order, "permutation of 1..6")
                ->capture_default_str();
            sub->add_flag("--split-delta", sweep.policy.split_delta, "delta/2 per phase");
        }
        sweeps.emplace_back(n, sub);
    }

    double perturbation = 0.0;
    auto *verify_cmd = app.add_subcommand("verify", "closed-form self checks");
    verify_cmd->add_option("--perturb-projector", perturbation,
                           "add this to one projector entry (negative control)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) return cmd_gen_instance(gen);
        if (*verify_cmd) return cmd_verify(perturbation);
        if (*run_tomo) return cmd_run_tomography(tomo_opts);
        for (const auto &[name, sub] : runs) {
            if (!*sub) continue;
            if (name == "se" || name == "lilhdoc") return cmd_run_bandit(name, run_opts);
            return cmd_run_workflow(name, run_opts);
        }
        for (const auto &[name, sub] : sweeps) {
            if (!*sub) continue;
            if (name == "fig6") return cmd_sweep_fig6(sweep);
            if (name == "fig7") return cmd_sweep_fig7(sweep);
            if (name == "fig9") return cmd_sweep_fig9(sweep, sub->count("--estimator") > 0);
            if (name == "tomography") return cmd_sweep_tomography(sweep);
            return cmd_sweep_correctness(sweep);
        }
    } catch (const CLI::Error &e) {
        return app.exit(e);
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
