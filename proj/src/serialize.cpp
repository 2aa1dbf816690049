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

#include "qmab/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qmab/witness.hpp"

namespace qmab {

std::string version() { return QMAB_VERSION; }

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix4c matrix4_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 4) throw DimensionError("expected a 4x4 complex matrix");
    Matrix4c m;
    for (int r = 0; r < 4; ++r) {
        if (!j[r].is_array() || j[r].size() != 4) {
            throw DimensionError("expected a 4x4 complex matrix");
        }
        for (int c = 0; c < 4; ++c) {
            const Json &z = j[r][c];
            m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

Json to_json(const StateSpec &spec) {
    Json j;
    j["family"] = family_name(spec.family);
    switch (spec.family) {
    case StateFamily::DepolarizedBell:
        j["bell"] = bell_name(spec.bell);
        j["w"] = spec.w;
        break;
    case StateFamily::BellDiagonal:
        j["p"] = spec.p;
        break;
    case StateFamily::AmpDampedDepolarizedBell:
        j["bell"] = bell_name(spec.bell);
        j["w"] = spec.w;
        j["r"] = spec.r;
        if (spec.q) j["q"] = *spec.q;
        break;
    case StateFamily::Ginibre:
        j["seed"] = spec.seed;
        break;
    case StateFamily::SeparableMixture:
        j["seed"] = spec.seed;
        j["terms"] = spec.terms;
        break;
    case StateFamily::Explicit:
        break;
    }
    return j;
}

StateSpec state_spec_from_json(const Json &j) {
    StateSpec s;
    s.family = family_from_name(j.at("family").get<std::string>());
    if (j.contains("bell")) s.bell = bell_from_name(j["bell"].get<std::string>());
    if (j.contains("w")) s.w = j["w"].get<double>();
    if (j.contains("p")) s.p = j["p"].get<Probabilities4>();
    if (j.contains("r")) s.r = j["r"].get<double>();
    if (j.contains("q")) s.q = j["q"].get<double>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("terms")) s.terms = j["terms"].get<int>();
    return s;
}

Json to_json(const ProblemInstance &instance) {
    Json j;
    j["schema"] = "qmab.instance/1";
    j["K"] = instance.K();
    j["m"] = instance.m();
    Json states = Json::array();
    for (std::size_t i = 0; i < instance.K(); ++i) {
        Json s;
        s["spec"] = to_json(instance.specs[i]);
        s["rho"] = matrix_to_json(instance.states[i].matrix());
        s["entangled"] = static_cast<bool>(instance.truth[i]);
        s["exact_S"] = instance.exact_S[i];
        states.push_back(std::move(s));
    }
    j["states"] = std::move(states);
    return j;
}

ProblemInstance instance_from_json(const Json &j) {
    const Json &states = j.at("states");
    if (!states.is_array() || states.size() < 2) {
        throw DomainError("instance needs at least two states");
    }
    ProblemInstance inst;
    for (const Json &s : states) {
        StateSpec spec = state_spec_from_json(s.at("spec"));
        DensityMatrix rho = DensityMatrix::from_matrix(matrix4_from_json(s.at("rho")));
        if (spec.family == StateFamily::Explicit) spec.matrix = rho.matrix();
        inst.specs.push_back(std::move(spec));
        inst.truth.push_back(ppt_entangled(rho));
        inst.exact_S.push_back(exact_S_all(rho));
        inst.states.push_back(std::move(rho));
    }
    return inst;
}

namespace {

Json matrix2_to_json(const Eigen::Matrix2d &m) {
    return Json::array({Json::array({m(0, 0), m(0, 1)}), Json::array({m(1, 0), m(1, 1)})});
}

Eigen::Matrix2d matrix2_from_json(const Json &j) {
    Eigen::Matrix2d m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = j.at(r).at(c).get<double>();
    return m;
}

Json sizes(const std::vector<std::size_t> &v) {
    Json a = Json::array();
    for (std::size_t x : v) a.push_back(x);
    return a;
}

}  // namespace

Json to_json(const NoiseModel &noise) {
    Json j;
    j["enabled"] = noise.enabled;
    j["assignment_q0"] = matrix2_to_json(noise.assignment_q0);
    j["assignment_q1"] = matrix2_to_json(noise.assignment_q1);
    return j;
}

NoiseModel noise_from_json(const Json &j) {
    NoiseModel n;
    n.enabled = j.value("enabled", true);
    if (j.contains("flip")) {
        const double p = j["flip"].get<double>();
        n = NoiseModel::symmetric_flip(p);
        n.enabled = j.value("enabled", true);
    }
    if (j.contains("assignment_q0")) n.assignment_q0 = matrix2_from_json(j["assignment_q0"]);
    if (j.contains("assignment_q1")) n.assignment_q1 = matrix2_from_json(j["assignment_q1"]);
    n.validate();
    return n;
}

Json to_json(const PolicyConfig &config) {
    Json j;
    j["delta"] = config.lil.delta;
    j["epsilon"] = config.lil.epsilon;
    j["sigma"] = config.lil.sigma;
    j["zeta"] = config.zeta;
    if (config.warm_start) {
        j["warm_start"] = *config.warm_start;
    } else {
        j["warm_start"] = nullptr;
    }
    j["rule"] = rule_name(config.rule);
    j["estimator"] = estimator_name(config.estimator);
    j["noise"] = to_json(config.sampling.noise);
    j["mitigation_cadence"] = config.sampling.mitigation_cadence;
    j["cutoff_pulls"] = config.cutoff_pulls;
    j["seed"] = config.seed;
    return j;
}

Json to_json(const RunRecord &r) {
    Json j;
    j["policy"] = r.policy;
    j["wbm_id"] = r.wbm_id;
    j["delta"] = r.delta;
    j["epsilon"] = r.epsilon;
    j["sigma"] = r.sigma;
    j["T"] = r.T;
    j["zeta"] = r.zeta;
    j["rule"] = r.rule;
    j["estimator"] = r.estimator;
    j["mitigation_cadence"] = r.mitigation_cadence;
    j["noise_enabled"] = r.noise_enabled;
    j["arms"] = sizes(r.arms);
    j["flagged_arms"] = sizes(r.flagged_arms);
    j["pulls"] = r.pulls;
    j["copies"] = r.copies;
    j["pair_samples"] = r.pair_samples;
    Json arms = Json::array();
    for (const ArmRecord &a : r.per_arm) {
        Json x;
        x["arm"] = a.arm;
        x["pulls"] = a.pulls;
        x["pair_samples"] = a.pair_samples;
        x["S_hat"] = a.S_hat;
        x["status"] = status_name(a.status);
        x["mitigations"] = a.mitigations;
        arms.push_back(std::move(x));
    }
    j["per_arm"] = std::move(arms);
    j["seed"] = r.seed;
    j["cutoff_hit"] = r.cutoff_hit;
    j["outside_proven_range"] = r.outside_proven_range;
    if (r.policy == "lil_hdoc") j["warm_start_rule"] = "log(max(1/delta, 2))";
    return j;
}

Json to_json(const WorkflowResult &w) {
    Json j;
    j["workflow"] = w.workflow;
    j["flagged_arms"] = sizes(w.flagged_arms);
    j["pulls"] = w.pulls;
    j["copies"] = w.copies;
    j["wbms_used"] = w.wbms_used;
    j["success"] = w.success;
    j["inconclusive"] = w.inconclusive;
    j["cutoff_hit"] = w.cutoff_hit;
    Json phases = Json::array();
    for (const RunRecord &r : w.phases) phases.push_back(to_json(r));
    j["phases"] = std::move(phases);
    return j;
}

Json to_json(const TomographyResult &t) {
    Json j;
    j["epsilon"] = t.epsilon;
    j["delta"] = t.delta;
    j["shots_per_setting"] = t.shots.per_setting;
    j["copies_per_state"] = t.shots.per_state;
    j["total_copies"] = t.total_copies;
    j["seed"] = t.seed;
    j["noise_enabled"] = t.noise_enabled;
    j["accuracy"] = t.accuracy;
    Json states = Json::array();
    for (const TomographyStateResult &s : t.states) {
        Json x;
        x["c_hat"] = s.c_hat;
        x["c_true"] = s.c_true;
        x["p_hat"] = s.p_hat;
        x["entangled"] = s.entangled;
        x["truth"] = s.truth;
        x["status_preserved"] = s.status_preserved;
        x["max_correlator_error"] = s.max_correlator_error;
        x["trace_distance"] = s.trace_distance;
        states.push_back(std::move(x));
    }
    j["states"] = std::move(states);
    return j;
}

Json to_json(const CorrectnessRow &row) {
    Json j;
    j["delta"] = row.delta;
    j["trials"] = row.trials;
    j["errors"] = row.errors;
    j["cutoffs"] = row.cutoffs;
    j["error_rate"] = row.error_rate;
    j["wilson_lo"] = row.wilson.lo;
    j["wilson_hi"] = row.wilson.hi;
    j["mean_copies"] = row.mean_copies;
    j["pass"] = row.pass;
    return j;
}

Json artifact_metadata(std::uint64_t seed, const Json &config) {
    Json j;
    j["version"] = version();
    j["seed"] = seed;
    j["config"] = config;
    return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace qmab
