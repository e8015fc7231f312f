// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/json_io.hpp"
#include "knotdoa/paper_reference.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace knotdoa;

nlohmann::json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw invalid_config("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw invalid_config("malformed JSON in " + path + ": " + e.what());
    }
}

// "-" sends the payload to standard output.
void write_output(const std::string &path, const std::string &payload) {
    if (path == "-" || path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw invalid_config("cannot write " + path);
    out << payload;
}

ArrayModel model_from_file(const std::string &path) {
    const auto [cfg, mode] = model_from_json(load_json(path));
    return build_array_model(cfg, mode);
}

int cmd_threshold(const std::string &test_name_str, int m, int s, double pc,
                  const std::string &model_path, const std::string &active_str,
                  const std::string &out_path) {
    const TestKind test = test_from_name(test_name_str);
    std::ostringstream os;
    os << "test,m,s,pc,eta\n";
    double eta = 0.0;
    if (test == TestKind::test_d || test == TestKind::test_e) {
        if (model_path.empty())
            throw invalid_config("tests D/E need --model (thresholds depend on the active set)");
        const ArrayModel model = model_from_file(model_path);
        std::vector<int> active;
        std::stringstream ss(active_str);
        for (std::string tok; std::getline(ss, tok, ',');)
            if (!tok.empty()) active.push_back(std::stoi(tok));
        ThresholdCache cache(test, pc);
        eta = cache.eta_for_active_set(model, active);
        char line[96];
        std::snprintf(line, sizeof line, "%s,%d,%zu,%g,%.9g\n", test_name(test), m,
                      active.size(), pc, eta);
        os << line;
    } else {
        ArrayConfig cfg;
        cfg.num_elements = m;
        cfg.num_grid = m;
        const ArrayModel model = build_array_model(cfg, GridMode::orthogonal);
        const ThresholdTable table = build_table(test, model, pc);
        const int scan_k = (test == TestKind::test_c) ? std::max(1, s + 1) : s + 1;
        eta = table.eta_for_scan(scan_k);
        char line[96];
        std::snprintf(line, sizeof line, "%s,%d,%d,%g,%.9g\n", test_name(test), m, s, pc, eta);
        os << line;
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_detect(const std::string &model_path, const std::string &snapshot_path,
               const std::string &test_str, double pc, const std::string &sigma_str,
               bool refit, const std::string &scan_str, const std::string &out_path) {
    const ArrayModel model = model_from_file(model_path);
    const Snapshot snap = snapshot_from_json(load_json(snapshot_path));
    const TestKind test = test_from_name(test_str);

    DetectorOptions opts;
    opts.refit = refit;
    if (scan_str == "up") opts.scan = ScanDirection::upward;
    else if (scan_str == "down") opts.scan = ScanDirection::downward;

    std::optional<double> sigma2;
    if (sigma_str == "estimate") {
        if (test != TestKind::test_c)
            throw invalid_config("--sigma estimate is only meaningful for test C");
    } else if (!sigma_str.empty()) {
        sigma2 = std::stod(sigma_str);
    }
    if (needs_sigma(test) && !sigma2.has_value())
        throw invalid_config(std::string(test_name(test)) + " requires --sigma <variance>");

    DetectionResult res;
    if (test == TestKind::test_d)
        res = detect_general(model, snap.b, pc, *sigma2, opts);
    else if (test == TestKind::test_e)
        res = detect_grid_matching(model, snap.b, pc, *sigma2, opts);
    else
        res = detect_orthogonal(model, snap.b, test, pc, sigma2, opts);

    write_output(out_path, to_json(res, model).dump(2) + "\n");
    return 0;
}

int cmd_path(const std::string &model_path, const std::string &snapshot_path, bool group,
             const std::string &out_path) {
    const ArrayModel model = model_from_file(model_path);
    const Snapshot snap = snapshot_from_json(load_json(snapshot_path));
    std::ostringstream os;
    os << "knot_index,tau,entering_index,active_set_size\n";
    char line[128];
    if (group) {
        const CxVector b_bar =
            snap.b_bar.size() > 0 ? snap.b_bar : CxVector(model.steering.adjoint() * snap.b);
        const auto knots = group_knots(model, b_bar, model.num_elements());
        for (size_t i = 0; i < knots.size(); ++i) {
            std::snprintf(line, sizeof line, "%zu,%.9g,%d,%zu\n", i + 1, knots[i].tau,
                          knots[i].removal ? -1 - knots[i].group : knots[i].group,
                          knots[i].active_groups.size());
            os << line;
        }
    } else {
        const KnotPath path = model.orthogonal()
                                  ? orthogonal_knots(model, snap.b)
                                  : general_knots(model, snap.b, model.num_elements());
        for (size_t i = 0; i < path.knots.size(); ++i) {
            const auto &k = path.knots[i];
            std::snprintf(line, sizeof line, "%zu,%.9g,%d,%zu\n", i + 1, k.tau,
                          k.removal ? -1 - k.index : k.index, k.active_set.size());
            os << line;
        }
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_simulate(const std::string &config_path, int trials_override,
                 std::uint64_t seed_override, bool has_seed, int table_id,
                 const std::string &out_path, const std::string &summary_path) {
    if (table_id > 0) {
        const int trials = trials_override > 0 ? trials_override : 10000;
        const TableReport rep = reproduce_tables(
            table_id, trials, has_seed ? seed_override : std::uint64_t{0x5eed});
        std::ostringstream os;
        rep.write_csv(os);
        write_output(out_path, os.str());
        return 0;
    }
    ExperimentConfig cfg = experiment_from_json(load_json(config_path));
    if (trials_override > 0) cfg.trials = trials_override;
    if (has_seed) cfg.base_seed = seed_override;
    const McReport report = run_experiment(cfg);
    std::ostringstream os;
    report.write_csv(os);
    write_output(out_path, os.str());
    if (!summary_path.empty()) write_output(summary_path, summary_json(report).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"knot-path detection, estimation and grid matching for single-snapshot DoA"};
    app.set_version_flag("--version", std::string(KNOTDOA_VERSION_STRING));
    app.require_subcommand(1);

    // simulate
    auto *sim = app.add_subcommand("simulate", "run Monte-Carlo experiments");
    std::string sim_config, sim_out = "-", sim_summary;
    int sim_trials = 0, sim_table = 0;
    std::uint64_t sim_seed = 0;
    bool sim_has_seed = false;
    sim->add_option("--config", sim_config, "experiment config JSON");
    sim->add_option("--trials", sim_trials, "override trial count");
    sim->add_option("--seed", sim_seed, "override base seed")->each([&](const std::string &) {
        sim_has_seed = true;
    });
    sim->add_option("--table", sim_table, "reproduce a published table (1..7)");
    sim->add_option("--out", sim_out, "CSV output path or -");
    sim->add_option("--summary", sim_summary, "JSON summary path");

    // detect
    auto *det = app.add_subcommand("detect", "detect sources in one snapshot");
    std::string det_model, det_snapshot, det_test = "B", det_sigma, det_scan, det_out = "-";
    double det_pc = 0.99;
    bool det_refit = false;
    det->add_option("--model", det_model, "model config JSON")->required();
    det->add_option("--snapshot", det_snapshot, "snapshot JSON")->required();
    det->add_option("--test", det_test, "cov-exact|cov-asymp|A|B|C|D|E");
    det->add_option("--pc", det_pc, "target probability of correct detection");
    det->add_option("--sigma", det_sigma, "noise variance or 'estimate'");
    det->add_flag("--refit", det_refit, "least-squares refit of amplitudes");
    det->add_option("--scan", det_scan, "up|down (default per algorithm)");
    det->add_option("--out", det_out, "JSON output path or -");

    // threshold
    auto *thr = app.add_subcommand("threshold", "invert a test CDF at pc");
    std::string thr_test = "B", thr_model, thr_active, thr_out = "-";
    int thr_m = 8, thr_s = 0;
    double thr_pc = 0.99;
    thr->add_option("--test", thr_test, "test name");
    thr->add_option("--m", thr_m, "number of array elements");
    thr->add_option("--s", thr_s, "hypothesised source count");
    thr->add_option("--pc", thr_pc, "target probability");
    thr->add_option("--model", thr_model, "model JSON (tests D/E)");
    thr->add_option("--active", thr_active, "comma-separated active set (tests D/E)");
    thr->add_option("--out", thr_out, "output path or -");

    // path
    auto *pth = app.add_subcommand("path", "dump the knot path of a snapshot");
    std::string pth_model, pth_snapshot, pth_out = "-";
    bool pth_group = false;
    pth->add_option("--model", pth_model, "model config JSON")->required();
    pth->add_option("--snapshot", pth_snapshot, "snapshot JSON")->required();
    pth->add_flag("--group", pth_group, "group-lasso path on b_bar");
    pth->add_option("--out", pth_out, "CSV output path or -");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) {
            if (sim_config.empty() && sim_table == 0)
                throw knotdoa::invalid_config("simulate needs --config or --table");
            return cmd_simulate(sim_config, sim_trials, sim_seed, sim_has_seed, sim_table,
                                sim_out, sim_summary);
        }
        if (det->parsed())
            return cmd_detect(det_model, det_snapshot, det_test, det_pc, det_sigma, det_refit,
                              det_scan, det_out);
        if (thr->parsed())
            return cmd_threshold(thr_test, thr_m, thr_s, thr_pc, thr_model, thr_active, thr_out);
        if (pth->parsed()) return cmd_path(pth_model, pth_snapshot, pth_group, pth_out);
        return 1;
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const knotdoa::invalid_config &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const knotdoa::numeric_error &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const knotdoa::solver_failure &e) {
        std::cerr << "solver failure: " << e.what() << " (tau = " << e.tau << ")\n";
        return 2;
    } catch (const knotdoa::estimation_error &e) {
        std::cerr << "estimation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
