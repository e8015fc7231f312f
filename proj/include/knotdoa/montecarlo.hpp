// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/detector.hpp"

#include <iosfwd>
#include <limits>

namespace knotdoa {

struct ExperimentConfig {
    ArrayConfig array;
    GridMode mode = GridMode::orthogonal;
    std::vector<TestKind> tests;
    double pc = 0.99;
    std::vector<int> source_indices;      // 0-based grid indices, sorted
    double offsets_bin_fraction = 0.0;    // per-source offset as a fraction of the local bin
    bool random_phase = true;             // equal-power sources with random phases per trial
    std::vector<double> snr_grid_db;
    int trials = 10000;
    std::uint64_t base_seed = 0x5eedULL;
    int threads = 0;                      // 0: hardware concurrency
    ScanDirection scan = ScanDirection::per_algorithm;

    void validate() const;
};

struct McRow {
    std::string test;
    int s = 0;
    double snr_db = 0.0;
    double pc_hat = 0.0;
    double pf_hat = 0.0;
    double pm_hat = 0.0;
    double pb_hat = 0.0;
    double rmse = std::numeric_limits<double>::quiet_NaN();  // GM mode, correct trials only
    int trials = 0;
    double ci_halfwidth = 0.0;  // 1.96 sqrt(pc_hat (1 - pc_hat) / trials)
    double wall_time_s = 0.0;
    int solver_failures = 0;
};

struct McReport {
    ExperimentConfig config;
    std::vector<McRow> rows;

    void write_csv(std::ostream &os) const;
};

/// Runs trials for every (test, snr) cell of the configuration. Trials are
/// independent, seeded by counter so that the report does not depend on the
/// worker count; per-trial solver failures above 0.1% fail the run.
McReport run_experiment(const ExperimentConfig &cfg);

/// The paper-placement helper: source indices per source count for each
/// experiment family (orthogonal / oversampled / grid matching), plus the
/// offsets used in the grid-matching figures.
ExperimentConfig paper_experiment(GridMode mode, bool grid_matching, int s,
                                  std::vector<double> snr_grid_db, int trials,
                                  std::uint64_t base_seed);

struct TableDiffRow {
    McRow measured;
    double paper_pc = std::numeric_limits<double>::quiet_NaN();
    double paper_pf = std::numeric_limits<double>::quiet_NaN();
};

struct TableReport {
    int table_id = 0;
    std::vector<TableDiffRow> rows;

    void write_csv(std::ostream &os) const;
};

/// Reruns the configuration behind one of the reference tables (1..7) at the
/// given trial count and reports measured rates side by side with the
/// published values.
TableReport reproduce_tables(int table_id, int trials, std::uint64_t base_seed = 0x5eedULL,
                             int threads = 0);

}  // namespace knotdoa
