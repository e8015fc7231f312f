// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/lasso_path.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace knotdoa {

namespace {

inline cxd soft_threshold(cxd c, double tau) {
    const double m = std::abs(c);
    if (m <= tau) return cxd(0.0, 0.0);
    return c * (1.0 - tau / m);
}

// Cyclic coordinate descent on the complex soft-threshold fixed point over the
// coordinate subset `coords` (unit-norm columns assumed). x and r = b - A x are
// updated in place. Returns false when the sweep cap is hit.
bool cd_on_subset(const CxMatrix &a, const std::vector<int> &coords, double tau,
                  CxVector &x, CxVector &r, double tol, int max_sweeps) {
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double delta_max = 0.0;
        for (int j : coords) {
            const auto col = a.col(j);
            const cxd cj = col.dot(r) + x(j);  // Eigen dot conjugates the left side
            const cxd xn = soft_threshold(cj, tau);
            const cxd d = xn - x(j);
            if (d != cxd(0.0, 0.0)) {
                r -= col * d;
                x(j) = xn;
            }
            delta_max = std::max(delta_max, std::abs(d));
        }
        if (delta_max < tol) return true;
    }
    return false;
}

std::vector<int> all_coords(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

int argmax_with_low_index_tiebreak(const RealVector &v) {
    int best = 0;
    for (int i = 1; i < v.size(); ++i)
        if (v(i) > v(best)) best = i;
    return best;
}

}  // namespace

double KnotPath::tau(int k) const {
    if (k < 1) throw invalid_config("knot index is 1-based");
    if (k > num_knots()) return 0.0;
    return knots[static_cast<size_t>(k - 1)].tau;
}

KnotPath orthogonal_knots(const ArrayModel &model, const CxVector &b) {
    if (!model.orthogonal())
        throw invalid_config("orthogonal_knots requires an orthogonal steering model");
    const int n = model.num_grid();
    const CxVector corr = model.steering.adjoint() * b;
    const RealVector mag = corr.cwiseAbs();

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (mag(i) != mag(j)) return mag(i) > mag(j);
        return i < j;
    });

    KnotPath path;
    path.model_kind = ModelKind::orthogonal;
    path.knots.reserve(n);
    std::vector<int> active;
    for (int k = 0; k < n; ++k) {
        Knot knot;
        knot.tau = mag(order[k]);
        knot.index = order[k];
        active.push_back(order[k]);
        knot.active_set = active;
        knot.solution = CxVector::Zero(n);
        for (int j = 0; j < n; ++j) knot.solution(j) = soft_threshold(corr(j), knot.tau);
        for (int j = k + 1; j < n; ++j) knot.lambda_candidates.emplace_back(order[j], mag(order[j]));
        path.knots.push_back(std::move(knot));
    }
    return path;
}

CxVector lasso_solve_at(const ArrayModel &model, const CxVector &b, double tau,
                        const SolverOptions &opts) {
    if (tau < 0.0) throw invalid_config("tau must be nonnegative");
    const int n = model.num_grid();
    const double scale = std::max(1e-300, (model.steering.adjoint() * b).cwiseAbs().maxCoeff());
    CxVector x = CxVector::Zero(n);
    if (tau >= scale) return x;  // above the first knot the solution is zero
    CxVector r = b;
    const auto coords = all_coords(n);
    if (!cd_on_subset(model.steering, coords, tau, x, r, opts.cd_tol * scale, opts.max_sweeps)) {
        std::vector<int> active;
        for (int j = 0; j < n; ++j)
            if (x(j) != cxd(0.0, 0.0)) active.push_back(j);
        throw solver_failure("coordinate descent did not converge", tau, active);
    }
    return x;
}

double lasso_duality_gap(const ArrayModel &model, const CxVector &b, double tau,
                         const CxVector &x) {
    const CxVector r = b - model.steering * x;
    const double corr_max = (model.steering.adjoint() * r).cwiseAbs().maxCoeff();
    const double s = (corr_max > tau && corr_max > 0.0) ? tau / corr_max : 1.0;
    const CxVector theta = r * s;
    const double primal = 0.5 * r.squaredNorm() + tau * x.cwiseAbs().sum();
    const double dual = 0.5 * b.squaredNorm() - 0.5 * (b - theta).squaredNorm();
    return primal - dual;
}

// ---------------------------------------------------------------------------

LassoPathWalker::LassoPathWalker(const ArrayModel &model, CxVector b, SolverOptions opts)
    : model_(model), b_(std::move(b)), opts_(opts) {
    const int m = model_.num_elements();
    if (b_.size() != m) throw invalid_config("measurement length does not match the array");
    for (int j = 0; j < model_.num_grid(); ++j) {
        const double nrm = model_.steering.col(j).norm();
        if (std::abs(nrm - 1.0) > 1e-9)
            throw invalid_config("steering columns must be unit norm");
    }
    x_at_knot_ = CxVector::Zero(model_.num_grid());
}

void LassoPathWalker::refresh_restricted(double tau, CxVector &x) const {
    CxVector r = b_ - model_.steering * x;
    if (!cd_on_subset(model_.steering, active_, tau, x, r, opts_.cd_tol * tau1_,
                      opts_.max_sweeps))
        throw solver_failure("restricted coordinate descent did not converge", tau, active_);
}

// True when the support of the path at tau is exactly the current active set:
// the restricted solution keeps every active coordinate nonzero and no inactive
// correlation exceeds tau.
bool LassoPathWalker::support_holds(double tau, CxVector &x) const {
    refresh_restricted(tau, x);
    for (int j : active_)
        if (x(j) == cxd(0.0, 0.0)) return false;
    const CxVector r = b_ - model_.steering * x;
    const double margin = opts_.knot_tol_rel * tau1_;
    for (int j = 0; j < model_.num_grid(); ++j) {
        if (std::find(active_.begin(), active_.end(), j) != active_.end()) continue;
        if (std::abs(model_.steering.col(j).dot(r)) > tau + margin) return false;
    }
    return true;
}

const Knot *LassoPathWalker::next() {
    if (exhausted_) return nullptr;
    const int n = model_.num_grid();
    const int hard_cap = 8 * model_.num_elements() + 8;
    if (static_cast<int>(knots_.size()) >= hard_cap) {
        exhausted_ = true;
        return nullptr;
    }

    if (knots_.empty()) {
        const CxVector corr = model_.steering.adjoint() * b_;
        const RealVector mag = corr.cwiseAbs();
        tau1_ = mag.maxCoeff();
        if (tau1_ <= 0.0) {
            exhausted_ = true;
            return nullptr;
        }
        Knot knot;
        knot.tau = tau1_;
        knot.index = argmax_with_low_index_tiebreak(mag);
        knot.active_set = {knot.index};
        knot.solution = CxVector::Zero(n);
        for (int j = 0; j < n; ++j)
            if (j != knot.index) knot.lambda_candidates.emplace_back(j, mag(j));
        active_ = knot.active_set;
        x_at_knot_.setZero();
        knots_.push_back(std::move(knot));
        return &knots_.back();
    }

    const double tau_last = knots_.back().tau;
    const double tol = opts_.knot_tol_rel * tau1_;
    const double tau_floor = std::max(tol, 1e-13 * tau1_);

    // Geometric probe downward for the first support change below tau_last.
    CxVector x = x_at_knot_;
    double hi = tau_last;
    double lo = tau_last;
    bool found = false;
    while (lo > tau_floor) {
        lo = std::max(lo * 0.7, tau_floor * 0.5);
        if (!support_holds(lo, x)) {
            found = true;
            break;
        }
        hi = lo;
    }
    if (!found) {
        exhausted_ = true;
        return nullptr;
    }

    // Bisection: support holds at hi, fails at lo.
    CxVector x_hi = x_at_knot_;
    while (hi - lo > tol) {
        const double mid = 0.5 * (hi + lo);
        CxVector x_mid = x_hi;
        if (support_holds(mid, x_mid)) {
            hi = mid;
            x_hi = x_mid;
        } else {
            lo = mid;
        }
    }

    const double tau_knot = 0.5 * (hi + lo);

    // Identify the event just below the knot.
    CxVector x_lo = x_hi;
    refresh_restricted(lo, x_lo);
    int removal_index = -1;
    for (int j : active_)
        if (x_lo(j) == cxd(0.0, 0.0)) {
            removal_index = j;
            break;
        }

    Knot knot;
    knot.tau = tau_knot;
    CxVector x_sol = x_hi;
    refresh_restricted(tau_knot, x_sol);
    knot.solution = x_sol;
    const CxVector r = b_ - model_.steering * x_sol;
    double best_val = -1.0;
    int best_j = -1;
    for (int j = 0; j < n; ++j) {
        if (std::find(active_.begin(), active_.end(), j) != active_.end()) continue;
        const double lam = std::abs(model_.steering.col(j).dot(r));
        knot.lambda_candidates.emplace_back(j, lam);
        if (lam > best_val + 1e-15 * tau1_) {
            best_val = lam;
            best_j = j;
        }
    }

    if (removal_index >= 0) {
        knot.removal = true;
        knot.index = removal_index;
        active_.erase(std::find(active_.begin(), active_.end(), removal_index));
    } else {
        if (best_j < 0) {
            exhausted_ = true;  // no inactive coordinate left to enter
            return nullptr;
        }
        knot.index = best_j;
        active_.push_back(best_j);
    }
    knot.active_set = active_;
    x_at_knot_ = x_sol;
    knots_.push_back(std::move(knot));
    return &knots_.back();
}

bool LassoPathWalker::ensure_growth_events(int count) {
    auto growth = [this]() {
        int g = 0;
        for (const auto &k : knots_)
            if (!k.removal) ++g;
        return g;
    };
    while (growth() < count) {
        if (next() == nullptr) return false;
    }
    return true;
}

std::vector<int> LassoPathWalker::entry_order() const {
    std::vector<int> order;
    for (const auto &k : knots_)
        if (!k.removal) order.push_back(k.index);
    return order;
}

KnotPath general_knots(const ArrayModel &model, const CxVector &b, int max_knots,
                       const SolverOptions &opts) {
    if (max_knots < 1 || max_knots > model.num_elements())
        throw invalid_config("max_knots must be in [1, num_elements]");
    LassoPathWalker walker(model, b, opts);
    KnotPath path;
    path.model_kind = ModelKind::general;
    while (static_cast<int>(path.knots.size()) < max_knots) {
        const Knot *k = walker.next();
        if (k == nullptr) break;
        path.knots.push_back(*k);
    }
    return path;
}

}  // namespace knotdoa
