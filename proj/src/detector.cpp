// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace knotdoa {

namespace {

double tau_or_zero(const KnotPath &path, int k) { return path.tau(k); }

CxVector soft_solution(const CxVector &corr, double tau) {
    CxVector x = corr;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double m = std::abs(corr(j));
        x(j) = (m <= tau) ? cxd(0, 0) : corr(j) * (1.0 - tau / m);
    }
    return x;
}

}  // namespace

DetectionResult detect_orthogonal(const ArrayModel &model, const CxVector &b, TestKind test,
                                  double pc, std::optional<double> sigma2,
                                  const DetectorOptions &opts) {
    if (!model.orthogonal())
        throw invalid_config("detect_orthogonal requires the orthogonal model");
    if (test == TestKind::test_d || test == TestKind::test_e)
        throw invalid_config("tests D/E have their own detectors");
    if (needs_sigma(test) && !sigma2.has_value())
        throw invalid_config(std::string(test_name(test)) + " requires a known noise variance");

    const int m = model.num_elements();
    const KnotPath path = orthogonal_knots(model, b);
    const ThresholdTable table = build_table(test, model, pc);

    // Rayleigh-normalised statistics (covariance tests, Test A) divide by the
    // per-component variance sigma^2/2; Test B divides by the complex variance.
    double norm2 = 0.0;
    if (test == TestKind::test_c) {
        norm2 = estimate_sigma2(model, b, path);
    } else if (test == TestKind::test_b) {
        norm2 = *sigma2;
    } else {
        norm2 = 0.5 * *sigma2;
    }

    auto statistic = [&](int k) {
        switch (test) {
            case TestKind::cov_exact:
            case TestKind::cov_asymptotic:
                return stat_cov(path, k, norm2);
            case TestKind::test_a:
                return stat_a(path, k, norm2);
            case TestKind::test_b:
                return stat_b(path, k, norm2);
            case TestKind::test_c:
                return stat_c(tau_or_zero(path, k), norm2);
            default:
                throw invalid_config("unsupported test");
        }
    };

    const int k_start = (test == TestKind::test_c) ? m - 1 : m;
    DetectionResult res;
    res.test_used = test;

    int s_hat = 0;
    const bool upward = opts.scan != ScanDirection::downward;
    if (upward) {
        for (int k = k_start; k >= 1; --k) {
            TraceEntry t;
            t.knot_index = k;
            t.tau = path.tau(k);
            t.statistic = statistic(k);
            t.threshold = table.eta_for_scan(k);
            t.exceeded = t.statistic >= t.threshold;
            res.trace.push_back(t);
            if (t.exceeded) {
                s_hat = k;
                break;
            }
        }
    } else {
        s_hat = k_start;
        for (int k = 1; k <= k_start; ++k) {
            TraceEntry t;
            t.knot_index = k;
            t.tau = path.tau(k);
            t.statistic = statistic(k);
            t.threshold = table.eta_for_scan(k);
            t.exceeded = t.statistic >= t.threshold;
            res.trace.push_back(t);
            if (!t.exceeded) {
                s_hat = k - 1;
                break;
            }
        }
    }

    res.s_hat = s_hat;
    res.tau_hat = (s_hat >= 1) ? path.tau(s_hat) : path.tau(1);
    for (int k = 0; k < s_hat; ++k) res.support.push_back(path.knots[static_cast<size_t>(k)].index);
    for (const auto &knot : path.knots) res.entry_order.push_back(knot.index);
    for (int idx : res.support) res.angles.push_back(model.grid(idx));

    const CxVector corr = model.steering.adjoint() * b;
    res.amplitudes.resize(static_cast<Eigen::Index>(res.support.size()));
    if (opts.refit) {
        for (size_t i = 0; i < res.support.size(); ++i)
            res.amplitudes(static_cast<Eigen::Index>(i)) = corr(res.support[i]);
    } else {
        // Solution on the detected-support segment of the path, i.e. the lasso
        // estimate just after the s_hat-th entry.
        const CxVector x = soft_solution(corr, path.tau(s_hat + 1));
        for (size_t i = 0; i < res.support.size(); ++i)
            res.amplitudes(static_cast<Eigen::Index>(i)) = x(res.support[i]);
    }
    return res;
}

DetectionResult detect_general(const ArrayModel &model, const CxVector &b, double pc,
                               double sigma2, const DetectorOptions &opts, int min_entries) {
    if (!(sigma2 > 0.0)) throw invalid_config("Test D requires a known noise variance");
    ThresholdCache cache(TestKind::test_d, pc);
    const int m = model.num_elements();
    const int n = model.num_grid();

    // Knot levels from the sequential residual recursion: the largest inactive
    // correlation after a least-squares refit of the accepted columns. This is
    // the statistic family the Test-D null CDF describes; the lasso path's own
    // knots on a coherent oversampled grid sit above it by the shrinkage
    // leakage factor and would break the false-alarm calibration.
    DetectionResult res;
    res.test_used = TestKind::test_d;
    std::vector<int> active;
    CxVector r = b;
    double tau_accepted = 0.0;
    bool stopped = false;

    auto refit_residual = [&](const std::vector<int> &cols) {
        if (cols.empty()) return b;
        CxMatrix aj(m, static_cast<Eigen::Index>(cols.size()));
        for (size_t i = 0; i < cols.size(); ++i)
            aj.col(static_cast<Eigen::Index>(i)) = model.steering.col(cols[i]);
        return CxVector(b - aj * aj.colPivHouseholderQr().solve(b));
    };

    const bool upward = opts.scan == ScanDirection::upward;
    while (static_cast<int>(res.entry_order.size()) < std::min(m, n)) {
        int best = -1;
        double tau = -1.0;
        for (int j = 0; j < n; ++j) {
            if (std::find(res.entry_order.begin(), res.entry_order.end(), j) !=
                res.entry_order.end())
                continue;
            const double c = std::abs(model.steering.col(j).dot(r));
            if (c > tau) {
                tau = c;
                best = j;
            }
        }
        if (best < 0 || tau <= 0.0) break;

        if (!stopped) {
            TraceEntry t;
            t.knot_index = static_cast<int>(active.size()) + 1;
            t.tau = tau;
            t.statistic = stat_de(tau, sigma2);
            t.threshold = cache.eta_for_active_set(model, active);
            t.exceeded = t.statistic >= t.threshold;
            res.trace.push_back(t);
            if (!t.exceeded && !upward) stopped = true;
        }
        res.entry_order.push_back(best);
        if (!stopped) {
            active.push_back(best);
            if (!upward) tau_accepted = tau;
        }
        if (stopped && static_cast<int>(res.entry_order.size()) >= min_entries) break;
        r = refit_residual(res.entry_order);
    }

    if (upward) {
        // Algorithm-1 semantics on the recursion knots: the deepest exceedance
        // decides. Trace entries were recorded top-down; rescan from below.
        int s_hat = 0;
        for (int i = static_cast<int>(res.trace.size()); i >= 1; --i) {
            if (res.trace[static_cast<size_t>(i - 1)].exceeded) {
                s_hat = i;
                break;
            }
        }
        active.assign(res.entry_order.begin(), res.entry_order.begin() + s_hat);
        tau_accepted = (s_hat >= 1) ? res.trace[static_cast<size_t>(s_hat - 1)].tau : 0.0;
    }

    res.s_hat = static_cast<int>(active.size());
    res.support = active;
    res.tau_hat = (res.s_hat >= 1) ? tau_accepted
                                   : (res.trace.empty() ? 0.0 : res.trace.front().tau);
    for (int idx : res.support) res.angles.push_back(model.grid(idx));

    // Amplitudes: lasso on the detected support at the stopping level keeps
    // the path shrinkage; a least-squares refit on request.
    res.amplitudes.resize(static_cast<Eigen::Index>(res.support.size()));
    if (!res.support.empty()) {
        CxMatrix aj(m, static_cast<Eigen::Index>(res.support.size()));
        for (size_t i = 0; i < res.support.size(); ++i)
            aj.col(static_cast<Eigen::Index>(i)) = model.steering.col(res.support[i]);
        const CxVector x_ls = aj.colPivHouseholderQr().solve(b);
        if (opts.refit || res.trace.empty() || res.trace.back().exceeded) {
            for (size_t i = 0; i < res.support.size(); ++i)
                res.amplitudes(static_cast<Eigen::Index>(i)) = x_ls(static_cast<Eigen::Index>(i));
        } else {
            const double tau_stop = res.trace.back().tau;
            const CxVector x = lasso_solve_at(model, b, tau_stop, opts.solver);
            for (size_t i = 0; i < res.support.size(); ++i)
                res.amplitudes(static_cast<Eigen::Index>(i)) = x(res.support[i]);
        }
    }
    return res;
}

DetectionResult detect_grid_matching(const ArrayModel &model, const CxVector &b, double pc,
                                     double sigma2, const DetectorOptions &opts,
                                     int min_entries) {
    if (!(sigma2 > 0.0)) throw invalid_config("Test E requires a known noise variance");
    if (!model.orthogonal())
        throw invalid_config("grid matching requires the orthogonal model");
    const CxVector b_bar = model.steering.adjoint() * b;
    ThresholdCache cache(TestKind::test_e, pc);
    const int m = model.num_elements();
    const int n = model.num_grid();

    // Knot levels from the sequential residual recursion: after each accepted
    // group the measurement is refit by least squares on the active group
    // columns and the next level is the largest remaining group correlation.
    // This is the statistic family the Test-E null CDF describes (projected
    // noise through the residual projector Q); the full group-lasso path on
    // [I|G] additionally carries shrinkage-leakage knots at a fixed fraction
    // of tau_1 that would swamp any threshold at high SNR.
    DetectionResult res;
    res.test_used = TestKind::test_e;
    std::vector<int> active;
    CxVector r = b_bar;
    double tau_accepted = 0.0;
    double tau_stop = 0.0;
    bool stopped = false;
    const bool upward = opts.scan == ScanDirection::upward;

    auto refit_residual = [&](const std::vector<int> &groups) {
        if (groups.empty()) return b_bar;
        CxMatrix pj(n, static_cast<Eigen::Index>(2 * groups.size()));
        for (size_t i = 0; i < groups.size(); ++i)
            pj.block(0, static_cast<Eigen::Index>(2 * i), n, 2) =
                model.group_columns(groups[i]);
        const CxVector yls = pj.colPivHouseholderQr().solve(b_bar);
        return CxVector(b_bar - pj * yls);
    };

    while (static_cast<int>(res.entry_order.size()) < m) {
        const RealVector corr = group_correlations(model, r);
        int best = -1;
        double tau = -1.0;
        for (int g = 0; g < n; ++g) {
            if (std::find(res.entry_order.begin(), res.entry_order.end(), g) !=
                res.entry_order.end())
                continue;
            if (corr(g) > tau) {
                tau = corr(g);
                best = g;
            }
        }
        if (best < 0 || tau <= 0.0) break;

        if (!stopped) {
            TraceEntry t;
            t.knot_index = static_cast<int>(active.size()) + 1;
            t.tau = tau;
            t.statistic = stat_de(tau, sigma2);
            t.threshold = cache.eta_for_active_set(model, active);
            t.exceeded = t.statistic >= t.threshold;
            res.trace.push_back(t);
            if (!t.exceeded && !upward) {
                stopped = true;
                tau_stop = tau;
            }
        }
        res.entry_order.push_back(best);
        if (!stopped) {
            active.push_back(best);
            if (!upward) tau_accepted = tau;
        }
        if (stopped && static_cast<int>(res.entry_order.size()) >= min_entries) break;
        r = refit_residual(res.entry_order);
    }

    if (upward) {
        int s_hat = 0;
        for (int i = static_cast<int>(res.trace.size()); i >= 1; --i) {
            if (res.trace[static_cast<size_t>(i - 1)].exceeded) {
                s_hat = i;
                break;
            }
        }
        active.assign(res.entry_order.begin(), res.entry_order.begin() + s_hat);
        tau_accepted = (s_hat >= 1) ? res.trace[static_cast<size_t>(s_hat - 1)].tau : 0.0;
        tau_stop = (s_hat < static_cast<int>(res.trace.size()))
                       ? res.trace[static_cast<size_t>(s_hat)].tau
                       : 0.0;
    }

    res.s_hat = static_cast<int>(active.size());
    res.support = active;
    res.tau_hat = (res.s_hat >= 1) ? tau_accepted
                                   : (res.trace.empty() ? 0.0 : res.trace.front().tau);

    // Amplitudes from the group lasso restricted to the detected groups at the
    // stopping level (least squares on request). Offsets always come from the
    // least-squares coefficients: the group-norm penalty shrinks the small
    // eigen-direction of [e_g | g_g] hardest, which is exactly where the
    // offset information lives.
    CxMatrix y_ls = CxMatrix::Zero(n, 2);
    if (!res.support.empty()) {
        CxMatrix pj(n, static_cast<Eigen::Index>(2 * res.support.size()));
        for (size_t i = 0; i < res.support.size(); ++i)
            pj.block(0, static_cast<Eigen::Index>(2 * i), n, 2) =
                model.group_columns(res.support[i]);
        const CxVector yls = pj.colPivHouseholderQr().solve(b_bar);
        for (size_t i = 0; i < res.support.size(); ++i) {
            y_ls(res.support[i], 0) = yls(static_cast<Eigen::Index>(2 * i));
            y_ls(res.support[i], 1) = yls(static_cast<Eigen::Index>(2 * i + 1));
        }
    }
    CxMatrix y = y_ls;
    if (!opts.refit && !res.support.empty() && tau_stop > 0.0)
        y = group_solve_restricted(model, b_bar, res.support, tau_stop, opts.solver);

    const auto offsets = recover_offsets(y_ls, res.support, model);
    res.amplitudes.resize(static_cast<Eigen::Index>(res.support.size()));
    for (size_t i = 0; i < res.support.size(); ++i) {
        const int g = res.support[i];
        res.amplitudes(static_cast<Eigen::Index>(i)) = y(g, 0);
        const double p = offsets[i].defined ? offsets[i].p : 0.0;
        res.offsets.push_back(offsets[i].defined ? offsets[i].p
                                                 : std::numeric_limits<double>::quiet_NaN());
        res.offset_defined.push_back(offsets[i].defined);
        res.angles.push_back(model.grid(g) + p);
    }
    return res;
}

std::vector<OffsetEstimate> recover_offsets(const CxMatrix &group_solution,
                                            const std::vector<int> &groups,
                                            const ArrayModel &model) {
    std::vector<OffsetEstimate> out;
    out.reserve(groups.size());
    for (int g : groups) {
        OffsetEstimate est;
        const cxd y1 = group_solution(g, 0);
        const cxd y2 = group_solution(g, 1);
        const double cos_g = std::cos(model.grid(g));
        if (std::abs(y1) < 1e-12 || std::abs(cos_g) < 1e-9) {
            out.push_back(est);  // undefined
            continue;
        }
        const cxd c = y2 / y1;
        double p = c.imag() / (2.0 * kPi * model.config.spacing * cos_g);
        const double half_bin = 0.5 * model.bin_width(g);
        p = std::clamp(p, -half_bin, half_bin);
        est.p = p;
        est.defined = true;
        out.push_back(est);
    }
    return out;
}

ScoreResult score(const DetectionResult &result, const Scenario &scenario) {
    ScoreResult sr;
    const int s_true = static_cast<int>(scenario.source_indices.size());
    std::vector<int> truth = scenario.source_indices;  // already sorted
    std::vector<int> detected = result.support;
    std::sort(detected.begin(), detected.end());

    if (result.s_hat == s_true && detected == truth) {
        sr.outcome = Outcome::correct;
    } else if (result.s_hat < s_true &&
               std::includes(truth.begin(), truth.end(), detected.begin(), detected.end())) {
        sr.outcome = Outcome::miss;
    } else {
        sr.outcome = Outcome::false_alarm;
    }

    if (s_true == 0) {
        sr.event_b = true;
    } else if (static_cast<int>(result.entry_order.size()) < s_true) {
        sr.event_b = false;
    } else {
        std::vector<int> first(result.entry_order.begin(), result.entry_order.begin() + s_true);
        std::sort(first.begin(), first.end());
        sr.event_b = (first == truth);
    }
    return sr;
}

}  // namespace knotdoa
