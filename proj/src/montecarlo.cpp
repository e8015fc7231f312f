// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/montecarlo.hpp"

#include "knotdoa/paper_reference.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <ostream>
#include <random>
#include <thread>

namespace knotdoa {

void ExperimentConfig::validate() const {
    array.validate();
    if (tests.empty()) throw invalid_config("experiment needs at least one test");
    if (!(pc > 0.0 && pc < 1.0)) throw invalid_config("pc must lie in (0, 1)");
    if (snr_grid_db.empty()) throw invalid_config("snr grid must be nonempty");
    if (trials < 100) throw invalid_config("need at least 100 trials");
    for (TestKind t : tests) {
        const bool gm = (t == TestKind::test_e);
        const bool general = (t == TestKind::test_d);
        if (gm && mode != GridMode::orthogonal)
            throw invalid_config("Test E runs on the orthogonal (grid-matching) model");
        if (!gm && !general && mode != GridMode::orthogonal)
            throw invalid_config("orthogonal tests require the orthogonal model");
    }
    if (offsets_bin_fraction != 0.0 && mode != GridMode::orthogonal)
        throw invalid_config("offsets are a grid-matching setting");
}

namespace {

struct TrialOutcome {
    Outcome outcome = Outcome::miss;
    bool event_b = false;
    bool failed = false;
    double sq_err_sum = 0.0;  // sum over sources of (p_hat - p)^2, correct trials
    int sq_err_count = 0;
};

Scenario make_scenario(const ArrayModel &model, const ExperimentConfig &cfg, double snr_db,
                       std::mt19937_64 &gen) {
    Scenario scen;
    scen.source_indices = cfg.source_indices;
    scen.snr_db = snr_db;
    const auto s = cfg.source_indices.size();
    scen.offsets.resize(s, 0.0);
    scen.weights.resize(static_cast<Eigen::Index>(s));
    const double amp = (s > 0) ? 1.0 / std::sqrt(static_cast<double>(s)) : 0.0;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (size_t i = 0; i < s; ++i) {
        const double ph = cfg.random_phase ? phase(gen) : 0.0;
        scen.weights(static_cast<Eigen::Index>(i)) = std::polar(amp, ph);
        if (cfg.offsets_bin_fraction != 0.0)
            scen.offsets[i] = cfg.offsets_bin_fraction * model.bin_width(model.num_grid() / 2);
    }
    return scen;
}

TrialOutcome run_trial(const ArrayModel &model, const ExperimentConfig &cfg, TestKind test,
                       double snr_db, std::uint64_t seed) {
    TrialOutcome out;
    std::mt19937_64 gen(splitmix64(seed));
    const Scenario scen = make_scenario(model, cfg, snr_db, gen);
    const double sigma2 = scen.noise_variance();
    const int s_true = static_cast<int>(scen.source_indices.size());

    // The phase draw above consumed from `gen`; synthesis gets its own stream.
    const Snapshot snap = synthesize(model, scen, splitmix64(seed ^ 0x9E3779B97F4A7C15ULL));

    DetectorOptions opts;
    opts.scan = cfg.scan;
    try {
        DetectionResult res;
        if (test == TestKind::test_d) {
            res = detect_general(model, snap.b, cfg.pc, sigma2, opts, s_true);
            // Event B is defined on the lasso path itself; walk it separately.
            LassoPathWalker walker(model, snap.b, opts.solver);
            if (walker.ensure_growth_events(s_true)) res.entry_order = walker.entry_order();
        } else if (test == TestKind::test_e) {
            res = detect_grid_matching(model, snap.b, cfg.pc, sigma2, opts, s_true);
            GroupPathWalker walker(model, snap.b_bar, opts.solver);
            if (walker.ensure_growth_events(s_true)) res.entry_order = walker.entry_order();
        } else {
            res = detect_orthogonal(model, snap.b, test, cfg.pc,
                                    needs_sigma(test) ? std::optional<double>(sigma2)
                                                      : std::nullopt,
                                    opts);
        }
        const ScoreResult sr = score(res, scen);
        out.outcome = sr.outcome;
        out.event_b = sr.event_b;
        if (test == TestKind::test_e && sr.outcome == Outcome::correct) {
            for (size_t i = 0; i < res.support.size(); ++i) {
                const auto it = std::find(scen.source_indices.begin(), scen.source_indices.end(),
                                          res.support[i]);
                const size_t j =
                    static_cast<size_t>(std::distance(scen.source_indices.begin(), it));
                const double p_hat = res.offset_defined[i] ? res.offsets[i] : 0.0;
                const double err = p_hat - scen.offsets[j];
                out.sq_err_sum += err * err;
                ++out.sq_err_count;
            }
        }
    } catch (const solver_failure &) {
        out.failed = true;
    }
    return out;
}

}  // namespace

McReport run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    const ArrayModel model = build_array_model(cfg.array, cfg.mode);
    for (int idx : cfg.source_indices)
        if (idx < 0 || idx >= model.num_grid()) throw invalid_config("source index out of range");

    McReport report;
    report.config = cfg;
    const int n_threads =
        cfg.threads > 0 ? cfg.threads
                        : std::max(1u, std::thread::hardware_concurrency());

    std::uint64_t cell_counter = 0;
    for (TestKind test : cfg.tests) {
        for (double snr : cfg.snr_grid_db) {
            const auto t0 = std::chrono::steady_clock::now();
            const std::uint64_t cell_seed =
                splitmix64(cfg.base_seed ^ (0xC2B2AE3D27D4EB4FULL * (cell_counter + 1)));
            ++cell_counter;

            std::vector<TrialOutcome> outcomes(static_cast<size_t>(cfg.trials));
            auto worker = [&](int first, int last) {
                for (int t = first; t < last; ++t)
                    outcomes[static_cast<size_t>(t)] = run_trial(
                        model, cfg, test, snr,
                        splitmix64(cell_seed ^ static_cast<std::uint64_t>(t)));
            };
            if (n_threads == 1) {
                worker(0, cfg.trials);
            } else {
                std::vector<std::thread> pool;
                const int chunk = (cfg.trials + n_threads - 1) / n_threads;
                for (int w = 0; w < n_threads; ++w) {
                    const int first = w * chunk;
                    const int last = std::min(cfg.trials, first + chunk);
                    if (first >= last) break;
                    pool.emplace_back(worker, first, last);
                }
                for (auto &th : pool) th.join();
            }

            McRow row;
            row.test = test_name(test);
            row.s = static_cast<int>(cfg.source_indices.size());
            row.snr_db = snr;
            row.trials = cfg.trials;
            int n_c = 0, n_f = 0, n_m = 0, n_b = 0, n_fail = 0;
            double sq_sum = 0.0;
            int sq_count = 0;
            for (const auto &o : outcomes) {
                if (o.failed) {
                    ++n_fail;
                    continue;
                }
                switch (o.outcome) {
                    case Outcome::correct: ++n_c; break;
                    case Outcome::false_alarm: ++n_f; break;
                    case Outcome::miss: ++n_m; break;
                }
                if (o.event_b) ++n_b;
                sq_sum += o.sq_err_sum;
                sq_count += o.sq_err_count;
            }
            row.solver_failures = n_fail;
            if (n_fail > 0.001 * cfg.trials)
                throw numeric_error("solver failure rate above 0.1% in a Monte-Carlo cell");
            const int n_ok = cfg.trials - n_fail;
            row.pc_hat = static_cast<double>(n_c) / n_ok;
            row.pf_hat = static_cast<double>(n_f) / n_ok;
            row.pm_hat = static_cast<double>(n_m) / n_ok;
            row.pb_hat = static_cast<double>(n_b) / n_ok;
            row.ci_halfwidth = 1.96 * std::sqrt(row.pc_hat * (1.0 - row.pc_hat) / n_ok);
            if (sq_count > 0) row.rmse = std::sqrt(sq_sum / sq_count);
            row.wall_time_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

void McReport::write_csv(std::ostream &os) const {
    os << "test,s,snr_db,pc_hat,pf_hat,pm_hat,pb_hat,rmse,trials,ci_halfwidth,"
          "solver_failures,wall_time_s\n";
    char line[256];
    for (const auto &r : rows) {
        std::snprintf(line, sizeof line, "%s,%d,%g,%.6f,%.6f,%.6f,%.6f,", r.test.c_str(), r.s,
                      r.snr_db, r.pc_hat, r.pf_hat, r.pm_hat, r.pb_hat);
        os << line;
        if (std::isnan(r.rmse))
            os << ",";
        else {
            std::snprintf(line, sizeof line, "%.6g,", r.rmse);
            os << line;
        }
        std::snprintf(line, sizeof line, "%d,%.6f,%d,%.3f\n", r.trials, r.ci_halfwidth,
                      r.solver_failures, r.wall_time_s);
        os << line;
    }
}

ExperimentConfig paper_experiment(GridMode mode, bool grid_matching, int s,
                                  std::vector<double> snr_grid_db, int trials,
                                  std::uint64_t base_seed) {
    if (s < 0 || s > 4) throw invalid_config("reference scenarios cover S in 0..4");
    ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.snr_grid_db = std::move(snr_grid_db);
    cfg.trials = trials;
    cfg.base_seed = base_seed;
    cfg.array.num_elements = 8;
    if (mode == GridMode::orthogonal) {
        cfg.array.num_grid = 8;
        // 1-based placements rho(5), rho(3,6), rho(2,4,6), then rho(2,4,6,7)
        // on grid / rho(1,3,5,7) grid matching.
        static const std::vector<std::vector<int>> on_grid = {
            {}, {4}, {2, 5}, {1, 3, 5}, {1, 3, 5, 6}};
        static const std::vector<std::vector<int>> matching = {
            {}, {4}, {2, 5}, {1, 3, 5}, {0, 2, 4, 6}};
        cfg.source_indices = grid_matching ? matching[static_cast<size_t>(s)]
                                           : on_grid[static_cast<size_t>(s)];
        if (grid_matching) cfg.offsets_bin_fraction = 0.24;
    } else {
        cfg.array.num_grid = 16;
        // rho(9), rho(7,10), rho(6,9,12), rho(5,8,11,14), 1-based.
        static const std::vector<std::vector<int>> oversampled = {
            {}, {8}, {6, 9}, {5, 8, 11}, {4, 7, 10, 13}};
        cfg.source_indices = oversampled[static_cast<size_t>(s)];
    }
    return cfg;
}

namespace {

TestKind table_test(int table_id) {
    switch (table_id) {
        case 1: return TestKind::cov_asymptotic;
        case 2: return TestKind::cov_exact;
        case 3: return TestKind::test_a;
        case 4: return TestKind::test_b;
        case 5: return TestKind::test_c;
        case 6: return TestKind::test_d;
        case 7: return TestKind::test_e;
        default: throw invalid_config("table id must be in 1..7");
    }
}

}  // namespace

TableReport reproduce_tables(int table_id, int trials, std::uint64_t base_seed, int threads) {
    const TestKind test = table_test(table_id);
    const int s_max = (table_id == 7) ? 3 : 4;
    const std::vector<double> snrs = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};

    TableReport out;
    out.table_id = table_id;
    for (int s = 1; s <= s_max; ++s) {
        ExperimentConfig cfg = paper_experiment(
            (test == TestKind::test_d) ? GridMode::oversampled : GridMode::orthogonal,
            test == TestKind::test_e, s, snrs, trials, base_seed);
        cfg.tests = {test};
        cfg.threads = threads;
        const McReport rep = run_experiment(cfg);
        for (const auto &row : rep.rows) {
            TableDiffRow diff;
            diff.measured = row;
            if (const auto cell = reference::find_table_cell(table_id, s, row.snr_db)) {
                diff.paper_pc = cell->pc;
                diff.paper_pf = cell->pf;
            }
            out.rows.push_back(std::move(diff));
        }
    }
    return out;
}

void TableReport::write_csv(std::ostream &os) const {
    os << "table,test,s,snr_db,pc_hat,pf_hat,paper_pc,paper_pf,diff_pc,trials\n";
    char line[256];
    for (const auto &r : rows) {
        std::snprintf(line, sizeof line, "%d,%s,%d,%g,%.6f,%.6f,%.4f,%.4f,%.4f,%d\n", table_id,
                      r.measured.test.c_str(), r.measured.s, r.measured.snr_db,
                      r.measured.pc_hat, r.measured.pf_hat, r.paper_pc, r.paper_pf,
                      r.measured.pc_hat - r.paper_pc, r.measured.trials);
        os << line;
    }
}

}  // namespace knotdoa
