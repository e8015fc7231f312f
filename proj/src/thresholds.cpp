// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace knotdoa {

double invert_cdf(const std::function<double(double)> &cdf, double pc) {
    if (!(pc > 0.0 && pc < 1.0)) throw invalid_config("pc must lie in (0, 1)");
    double hi = 1.0;
    int doublings = 0;
    while (cdf(hi) <= pc) {
        hi *= 2.0;
        if (++doublings > 1024 || !std::isfinite(hi))
            throw numeric_error("cdf does not reach pc within the bracket budget");
    }
    double lo = 0.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (hi + lo);
        const double v = cdf(mid);
        if (std::abs(v - pc) <= 1e-12) return mid;
        (v < pc ? lo : hi) = mid;
    }
    return 0.5 * (hi + lo);
}

double ThresholdTable::eta_for_scan(int k) const {
    for (const auto &e : entries)
        if (e.scan_k == k) return e.eta;
    throw invalid_config("no threshold entry for scan position " + std::to_string(k));
}

ThresholdTable build_table(TestKind test, const ArrayModel &model, double pc) {
    const int m = model.num_elements();
    ThresholdTable table;
    table.test = test;
    table.pc = pc;

    switch (test) {
        case TestKind::test_a:
            for (int k = m; k >= 1; --k) {
                ThresholdEntry e;
                e.scan_k = k;
                e.context.n = m - k + 1;
                e.eta = invert_cdf([&](double x) { return cdf_a(x, e.context.n); }, pc);
                table.entries.push_back(e);
            }
            break;
        case TestKind::test_b: {
            const double eta = invert_cdf(cdf_b, pc);  // distribution free in n
            for (int k = m; k >= 1; --k) {
                ThresholdEntry e;
                e.scan_k = k;
                e.context.n = m - k + 1;
                e.eta = eta;
                table.entries.push_back(e);
            }
            break;
        }
        case TestKind::cov_exact:
            for (int k = m; k >= 1; --k) {
                ThresholdEntry e;
                e.scan_k = k;
                e.context.n = m - k + 1;
                e.eta = invert_cdf([&](double x) { return cdf_cov_exact(x, e.context.n); }, pc);
                table.entries.push_back(e);
            }
            break;
        case TestKind::cov_asymptotic: {
            // The tested knot is always the first post-signal knot under its
            // own null, so l = 1 at every scan position.
            const double eta = invert_cdf([](double x) { return cdf_cov_asymptotic(x, 1); }, pc);
            for (int k = m; k >= 1; --k) {
                ThresholdEntry e;
                e.scan_k = k;
                e.context.n = m - k + 1;
                e.eta = eta;
                table.entries.push_back(e);
            }
            break;
        }
        case TestKind::test_c:
            // The bottom knot is the variance estimate; it is not scanned and
            // is excluded from the F-variable count, l = M - k.
            for (int k = m - 1; k >= 1; --k) {
                ThresholdEntry e;
                e.scan_k = k;
                e.context.n = m - k;
                e.eta = invert_cdf([&](double x) { return cdf_c(x, e.context.n); }, pc);
                table.entries.push_back(e);
            }
            break;
        case TestKind::test_d:
        case TestKind::test_e:
            throw invalid_config("Tests D/E have active-set-dependent thresholds; use ThresholdCache");
    }
    return table;
}

double ThresholdCache::eta_for_active_set(const ArrayModel &model,
                                          const std::vector<int> &active) {
    std::vector<int> key = active;
    std::sort(key.begin(), key.end());
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    double eta = 0.0;
    if (test_ == TestKind::test_d) {
        const auto scales = test_d_scales(model, active);
        eta = scales.empty() ? std::numeric_limits<double>::infinity()
                             : invert_cdf([&](double x) { return cdf_d(x, scales); }, pc_);
    } else if (test_ == TestKind::test_e) {
        const auto pairs = test_e_pairs(model, active);
        eta = pairs.empty() ? std::numeric_limits<double>::infinity()
                            : invert_cdf([&](double x) { return cdf_e(x, pairs); }, pc_);
    } else {
        throw invalid_config("ThresholdCache only serves Tests D and E");
    }
    memo_.emplace(std::move(key), eta);
    return eta;
}

}  // namespace knotdoa
