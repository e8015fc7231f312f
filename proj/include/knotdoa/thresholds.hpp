// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/stat_tests.hpp"

#include <functional>
#include <map>

namespace knotdoa {

/// Smallest eta with cdf(eta) = pc, by bracket doubling plus bisection.
/// |cdf(eta) - pc| <= 1e-12 or the eta bracket shrinks below 1e-10.
double invert_cdf(const std::function<double(double)> &cdf, double pc);

struct ThresholdEntry {
    int scan_k = 0;  // 1-based knot position the entry applies to
    NullContext context;
    double eta = 0.0;
};

/// Precomputed thresholds for the scan positions of one detection run.
/// Tests D and E depend on the realised active set, so their entries are
/// resolved lazily through ThresholdCache instead.
struct ThresholdTable {
    TestKind test;
    double pc = 0.0;
    std::vector<ThresholdEntry> entries;

    double eta_for_scan(int k) const;
};

/// Builds the table for the scan positions k = M..1 (Test C: M-1..1) with the
/// null "knots k..M are noise", i.e. n = M-k+1 (Test C: l = M-k).
ThresholdTable build_table(TestKind test, const ArrayModel &model, double pc);

/// Memoised active-set-dependent thresholds for Tests D and E.
class ThresholdCache {
  public:
    ThresholdCache(TestKind test, double pc) : test_(test), pc_(pc) {}

    double eta_for_active_set(const ArrayModel &model, const std::vector<int> &active);

  private:
    TestKind test_;
    double pc_;
    std::map<std::vector<int>, double> memo_;
};

}  // namespace knotdoa
