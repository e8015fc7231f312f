// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/json_io.hpp"

#include <cmath>

namespace knotdoa {

using nlohmann::json;

namespace {

json complex_to_json(const cxd &z) { return json::array({z.real(), z.imag()}); }

cxd complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2)
        throw invalid_config("complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json cxvector_to_json(const CxVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

CxVector cxvector_from_json(const json &j) {
    if (!j.is_array()) throw invalid_config("expected an array of [re, im] pairs");
    CxVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

GridMode mode_from_string(const std::string &s) {
    if (s == "orthogonal") return GridMode::orthogonal;
    if (s == "oversampled") return GridMode::oversampled;
    throw invalid_config("mode must be orthogonal or oversampled");
}

}  // namespace

json to_json(const ArrayConfig &cfg) {
    return json{{"num_elements", cfg.num_elements},
                {"num_grid", cfg.num_grid},
                {"spacing", cfg.spacing},
                {"angle_interval", {cfg.angle_lo, cfg.angle_hi}}};
}

ArrayConfig array_config_from_json(const json &j) {
    ArrayConfig cfg;
    cfg.num_elements = j.at("num_elements").get<int>();
    cfg.num_grid = j.at("num_grid").get<int>();
    if (j.contains("spacing")) cfg.spacing = j.at("spacing").get<double>();
    if (j.contains("angle_interval")) {
        const auto &iv = j.at("angle_interval");
        if (!iv.is_array() || iv.size() != 2)
            throw invalid_config("angle_interval must be [lo, hi]");
        cfg.angle_lo = iv[0].get<double>();
        cfg.angle_hi = iv[1].get<double>();
    }
    cfg.validate();
    return cfg;
}

json model_to_json(const ArrayConfig &cfg, GridMode mode) {
    json j = to_json(cfg);
    j["mode"] = (mode == GridMode::orthogonal) ? "orthogonal" : "oversampled";
    return j;
}

std::pair<ArrayConfig, GridMode> model_from_json(const json &j) {
    return {array_config_from_json(j), mode_from_string(j.at("mode").get<std::string>())};
}

json to_json(const Scenario &scen) {
    json j;
    j["source_indices"] = scen.source_indices;
    j["offsets"] = scen.offsets;
    j["weights"] = cxvector_to_json(scen.weights);
    j["snr_db"] = scen.snr_db;
    j["noise_variance"] = scen.noise_variance();
    return j;
}

Scenario scenario_from_json(const json &j) {
    Scenario scen;
    scen.source_indices = j.at("source_indices").get<std::vector<int>>();
    scen.offsets = j.at("offsets").get<std::vector<double>>();
    scen.weights = cxvector_from_json(j.at("weights"));
    scen.snr_db = j.at("snr_db").get<double>();
    return scen;
}

json to_json(const Snapshot &snap) {
    json j;
    j["b"] = cxvector_to_json(snap.b);
    if (snap.b_bar.size() > 0) j["b_bar"] = cxvector_to_json(snap.b_bar);
    j["seed"] = snap.seed;
    return j;
}

Snapshot snapshot_from_json(const json &j) {
    Snapshot snap;
    snap.b = cxvector_from_json(j.at("b"));
    if (j.contains("b_bar")) snap.b_bar = cxvector_from_json(j.at("b_bar"));
    if (j.contains("seed")) snap.seed = j.at("seed").get<std::uint64_t>();
    return snap;
}

json to_json(const DetectionResult &res, const ArrayModel &model) {
    json j;
    j["s_hat"] = res.s_hat;
    j["tau_hat"] = res.tau_hat;
    j["support"] = res.support;
    j["angles"] = res.angles;
    if (!res.offsets.empty()) {
        json offs = json::array();
        for (size_t i = 0; i < res.offsets.size(); ++i)
            offs.push_back(res.offset_defined[i] ? json(res.offsets[i]) : json());
        j["offsets"] = offs;
    }
    j["amplitudes"] = cxvector_to_json(res.amplitudes);
    j["test_used"] = test_name(res.test_used);
    j["entry_order"] = res.entry_order;
    json trace = json::array();
    for (const auto &t : res.trace)
        trace.push_back(json{{"knot", t.knot_index},
                             {"tau", t.tau},
                             {"statistic", t.statistic},
                             {"threshold", t.threshold},
                             {"exceeded", t.exceeded}});
    j["trace"] = trace;
    j["grid_mode"] = model.orthogonal() ? "orthogonal" : "oversampled";
    return j;
}

json to_json(const ExperimentConfig &cfg) {
    json j = model_to_json(cfg.array, cfg.mode);
    json tests = json::array();
    for (TestKind t : cfg.tests) tests.push_back(test_name(t));
    j["tests"] = tests;
    j["pc"] = cfg.pc;
    j["source_indices"] = cfg.source_indices;
    j["offsets_bin_fraction"] = cfg.offsets_bin_fraction;
    j["random_phase"] = cfg.random_phase;
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["trials"] = cfg.trials;
    j["base_seed"] = cfg.base_seed;
    j["threads"] = cfg.threads;
    switch (cfg.scan) {
        case ScanDirection::upward: j["scan"] = "up"; break;
        case ScanDirection::downward: j["scan"] = "down"; break;
        case ScanDirection::per_algorithm: j["scan"] = "per-algorithm"; break;
    }
    return j;
}

ExperimentConfig experiment_from_json(const json &j) {
    ExperimentConfig cfg;
    const auto [array, mode] = model_from_json(j);
    cfg.array = array;
    cfg.mode = mode;
    for (const auto &name : j.at("tests")) cfg.tests.push_back(test_from_name(name));
    cfg.pc = j.value("pc", 0.99);
    cfg.source_indices = j.at("source_indices").get<std::vector<int>>();
    cfg.offsets_bin_fraction = j.value("offsets_bin_fraction", 0.0);
    cfg.random_phase = j.value("random_phase", true);
    cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    cfg.trials = j.value("trials", 10000);
    cfg.base_seed = j.value("base_seed", std::uint64_t{0x5eed});
    cfg.threads = j.value("threads", 0);
    const std::string scan = j.value("scan", "per-algorithm");
    if (scan == "up") cfg.scan = ScanDirection::upward;
    else if (scan == "down") cfg.scan = ScanDirection::downward;
    else if (scan == "per-algorithm") cfg.scan = ScanDirection::per_algorithm;
    else throw invalid_config("scan must be up, down or per-algorithm");
    cfg.validate();
    return cfg;
}

json summary_json(const McReport &report) {
    json rows = json::array();
    for (const auto &r : report.rows) {
        json row{{"test", r.test},          {"s", r.s},
                 {"snr_db", r.snr_db},      {"pc_hat", r.pc_hat},
                 {"pf_hat", r.pf_hat},      {"pm_hat", r.pm_hat},
                 {"pb_hat", r.pb_hat},      {"trials", r.trials},
                 {"ci_halfwidth", r.ci_halfwidth}, {"solver_failures", r.solver_failures},
                 {"wall_time_s", r.wall_time_s}};
        if (!std::isnan(r.rmse)) row["rmse"] = r.rmse;
        rows.push_back(std::move(row));
    }
    return json{{"config", to_json(report.config)}, {"rows", rows}};
}

}  // namespace knotdoa
