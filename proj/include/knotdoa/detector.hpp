// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/group_lasso_path.hpp"
#include "knotdoa/thresholds.hpp"

#include <optional>

namespace knotdoa {

struct TraceEntry {
    int knot_index = 0;  // 1-based scan position
    double tau = 0.0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool exceeded = false;
};

struct DetectionResult {
    int s_hat = 0;
    double tau_hat = 0.0;
    std::vector<int> support;        // entry order
    std::vector<double> angles;      // radians; grid angle plus offset in GM mode
    std::vector<double> offsets;     // GM mode only; NaN when undefined
    std::vector<bool> offset_defined;
    CxVector amplitudes;
    TestKind test_used = TestKind::test_b;
    std::vector<TraceEntry> trace;
    std::vector<int> entry_order;    // growth entries observed along the path
};

/// Orthogonal tests scan upward from the smallest knot (stop at the first
/// exceedance); the path tests walk downward from the largest knot (stop at
/// the first non-exceedance). `per_algorithm` keeps those defaults.
enum class ScanDirection { per_algorithm, upward, downward };

struct DetectorOptions {
    ScanDirection scan = ScanDirection::per_algorithm;
    bool refit = false;  // least-squares refit of amplitudes on the support
    SolverOptions solver;
};

/// Algorithm for orthogonal models with tests {cov_exact, cov_asymptotic, A, B, C}.
/// sigma2 is the per-element complex noise variance; required unless test == C.
DetectionResult detect_orthogonal(const ArrayModel &model, const CxVector &b, TestKind test,
                                  double pc, std::optional<double> sigma2,
                                  const DetectorOptions &opts = {});

/// Test-D detection on a general (fat) model. Knot levels follow the
/// sequential residual recursion that the Test-D null theory describes
/// (largest remaining correlation after a least-squares refit of the accepted
/// columns); `min_entries` extends the entry bookkeeping past the stop.
DetectionResult detect_general(const ArrayModel &model, const CxVector &b, double pc,
                               double sigma2, const DetectorOptions &opts = {},
                               int min_entries = 0);

/// Test-E detection plus offset recovery on the grid-matching model. The knot
/// levels come from the sequential residual recursion the Test-E null theory
/// describes (largest remaining group correlation after a least-squares refit
/// of the accepted groups); `min_entries` extends the entry bookkeeping past
/// the stopping point so callers can evaluate event B.
DetectionResult detect_grid_matching(const ArrayModel &model, const CxVector &b, double pc,
                                     double sigma2, const DetectorOptions &opts = {},
                                     int min_entries = 0);

struct OffsetEstimate {
    double p = 0.0;
    bool defined = false;
};

/// p_g = Im(y_{g,2} / y_{g,1}) / (2 pi spacing cos rho_g), clamped to half a
/// bin; undefined when the first coefficient vanishes or the geometry is
/// singular (cos rho_g ~ 0).
std::vector<OffsetEstimate> recover_offsets(const CxMatrix &group_solution,
                                            const std::vector<int> &groups,
                                            const ArrayModel &model);

enum class Outcome { correct, miss, false_alarm };

struct ScoreResult {
    Outcome outcome = Outcome::miss;
    bool event_b = false;
};

/// Scores a detection against ground truth. event_b is decided from the first
/// S entries of `entry_order`; the caller must have walked at least S growth
/// events (always true for orthogonal paths).
ScoreResult score(const DetectionResult &result, const Scenario &scenario);

}  // namespace knotdoa
