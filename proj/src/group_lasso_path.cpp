// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/group_lasso_path.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace knotdoa {

namespace {

using Vector2cd = Eigen::Vector2cd;
using Matrix2cd = Eigen::Matrix2cd;

// Per-group data for the 2x2 block update: H_g = P_g^H P_g = U diag(lam) U^H.
struct GroupOps {
    explicit GroupOps(const ArrayModel &model) : g_mat(model.grid_coupling) {
        const int n = static_cast<int>(g_mat.cols());
        eigvals.resize(n);
        eigvecs.resize(n);
        for (int g = 0; g < n; ++g) {
            Matrix2cd h;
            h(0, 0) = 1.0;
            h(0, 1) = g_mat(g, g);  // e_g^H G e_g
            h(1, 0) = std::conj(h(0, 1));
            h(1, 1) = g_mat.col(g).squaredNorm();
            Eigen::SelfAdjointEigenSolver<Matrix2cd> es(h);
            eigvals[g] = es.eigenvalues();
            eigvecs[g] = es.eigenvectors();
        }
    }

    // P_g^H r for residual r in the b_bar domain.
    Vector2cd correlate(int g, const CxVector &r) const {
        Vector2cd c;
        c(0) = r(g);
        c(1) = g_mat.col(g).dot(r);
        return c;
    }

    // argmin_y 0.5||r_g - P_g y||^2 + tau ||y||_2 given c = P_g^H r_g (r_g is
    // the residual with group g removed). Solves (H + tau/s I) y = c with
    // s = ||y|| via the eigenbasis of H; F(s) = sum |c_i|^2/(lam_i s + tau)^2
    // is strictly decreasing, so the root is unique.
    Vector2cd block_solve(int g, const Vector2cd &c, double tau) const {
        if (c.norm() <= tau) return Vector2cd::Zero();
        const auto &lam = eigvals[g];
        const Vector2cd ct = eigvecs[g].adjoint() * c;
        const double a0 = std::norm(ct(0));
        const double a1 = std::norm(ct(1));
        auto f = [&](double s) {
            const double d0 = lam(0) * s + tau;
            const double d1 = lam(1) * s + tau;
            return a0 / (d0 * d0) + a1 / (d1 * d1) - 1.0;
        };
        double hi = std::max((c.norm() - tau) / std::max(lam(1), 1e-300), 1e-300);
        int guard = 0;
        while (f(hi) > 0.0 && guard++ < 200) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (hi + lo);
            (f(mid) > 0.0 ? lo : hi) = mid;
        }
        const double s = 0.5 * (hi + lo);
        Vector2cd yt;
        yt(0) = ct(0) * (s / (lam(0) * s + tau));
        yt(1) = ct(1) * (s / (lam(1) * s + tau));
        return eigvecs[g] * yt;
    }

    const CxMatrix &g_mat;
    std::vector<Eigen::Vector2d> eigvals;
    std::vector<Matrix2cd> eigvecs;
};

CxVector residual_of(const ArrayModel &model, const CxVector &b_bar, const CxMatrix &y) {
    return b_bar - y.col(0) - model.grid_coupling * y.col(1);
}

bool bcd_on_subset(const ArrayModel &model, const GroupOps &ops, const std::vector<int> &groups,
                   double tau, CxMatrix &y, CxVector &r, double tol, int max_sweeps) {
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double delta_max = 0.0;
        for (int g : groups) {
            const Vector2cd y_old(y(g, 0), y(g, 1));
            // add the group's own contribution back into the residual
            if (y_old(0) != cxd(0, 0) || y_old(1) != cxd(0, 0)) {
                r(g) += y_old(0);
                r += model.grid_coupling.col(g) * y_old(1);
            }
            const Vector2cd c = ops.correlate(g, r);
            const Vector2cd y_new = ops.block_solve(g, c, tau);
            if (y_new(0) != cxd(0, 0) || y_new(1) != cxd(0, 0)) {
                r(g) -= y_new(0);
                r -= model.grid_coupling.col(g) * y_new(1);
            }
            y(g, 0) = y_new(0);
            y(g, 1) = y_new(1);
            delta_max = std::max(delta_max, (y_new - y_old).norm());
        }
        if (delta_max < tol) return true;
    }
    return false;
}

std::vector<int> all_groups(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void require_grid_matching(const ArrayModel &model) {
    if (!model.orthogonal() || model.grid_coupling.size() == 0)
        throw invalid_config("grid-matching operations require the orthogonal model with G");
}

}  // namespace

RealVector group_correlations(const ArrayModel &model, const CxVector &residual) {
    require_grid_matching(model);
    const int n = model.num_grid();
    RealVector out(n);
    for (int g = 0; g < n; ++g) {
        const double c0 = std::abs(residual(g));
        const double c1 = std::abs(model.grid_coupling.col(g).dot(residual));
        out(g) = std::hypot(c0, c1);
    }
    return out;
}

CxMatrix group_solve_at(const ArrayModel &model, const CxVector &b_bar, double tau,
                        const SolverOptions &opts) {
    require_grid_matching(model);
    if (tau < 0.0) throw invalid_config("tau must be nonnegative");
    const int n = model.num_grid();
    const double scale = std::max(1e-300, group_correlations(model, b_bar).maxCoeff());
    CxMatrix y = CxMatrix::Zero(n, 2);
    if (tau >= scale) return y;
    GroupOps ops(model);
    CxVector r = b_bar;
    if (!bcd_on_subset(model, ops, all_groups(n), tau, y, r, opts.cd_tol * scale,
                       opts.max_sweeps)) {
        std::vector<int> active;
        for (int g = 0; g < n; ++g)
            if (y.row(g).norm() > 0.0) active.push_back(g);
        throw solver_failure("group block coordinate descent did not converge", tau, active);
    }
    return y;
}

CxMatrix group_solve_restricted(const ArrayModel &model, const CxVector &b_bar,
                                const std::vector<int> &groups, double tau,
                                const SolverOptions &opts) {
    require_grid_matching(model);
    if (tau < 0.0) throw invalid_config("tau must be nonnegative");
    const int n = model.num_grid();
    for (int g : groups)
        if (g < 0 || g >= n) throw invalid_config("group index out of range");
    const double scale = std::max(1e-300, group_correlations(model, b_bar).maxCoeff());
    CxMatrix y = CxMatrix::Zero(n, 2);
    GroupOps ops(model);
    CxVector r = b_bar;
    if (!bcd_on_subset(model, ops, groups, tau, y, r, opts.cd_tol * scale, opts.max_sweeps))
        throw solver_failure("restricted group descent did not converge", tau, groups);
    return y;
}

double group_duality_gap(const ArrayModel &model, const CxVector &b_bar, double tau,
                         const CxMatrix &y) {
    const CxVector r = residual_of(model, b_bar, y);
    const double corr_max = group_correlations(model, r).maxCoeff();
    const double s = (corr_max > tau && corr_max > 0.0) ? tau / corr_max : 1.0;
    const CxVector theta = r * s;
    double primal = 0.5 * r.squaredNorm();
    for (int g = 0; g < y.rows(); ++g) primal += tau * y.row(g).norm();
    const double dual = 0.5 * b_bar.squaredNorm() - 0.5 * (b_bar - theta).squaredNorm();
    return primal - dual;
}

// ---------------------------------------------------------------------------

GroupPathWalker::GroupPathWalker(const ArrayModel &model, CxVector b_bar, SolverOptions opts)
    : model_(model), b_bar_(std::move(b_bar)), opts_(opts) {
    require_grid_matching(model_);
    if (b_bar_.size() != model_.num_grid())
        throw invalid_config("b_bar length does not match the grid");
    y_at_knot_ = CxMatrix::Zero(model_.num_grid(), 2);
    ops_ = std::make_shared<GroupOps>(model_);
}

void GroupPathWalker::refresh_restricted(double tau, CxMatrix &y) const {
    const auto &ops = *std::static_pointer_cast<const GroupOps>(ops_);
    CxVector r = residual_of(model_, b_bar_, y);
    if (!bcd_on_subset(model_, ops, active_, tau, y, r, opts_.cd_tol * tau1_,
                       opts_.max_sweeps))
        throw solver_failure("restricted group descent did not converge", tau, active_);
}

bool GroupPathWalker::support_holds(double tau, CxMatrix &y) const {
    refresh_restricted(tau, y);
    for (int g : active_)
        if (y.row(g).norm() == 0.0) return false;
    const CxVector r = residual_of(model_, b_bar_, y);
    const RealVector corr = group_correlations(model_, r);
    const double margin = opts_.knot_tol_rel * tau1_;
    for (int g = 0; g < model_.num_grid(); ++g) {
        if (std::find(active_.begin(), active_.end(), g) != active_.end()) continue;
        if (corr(g) > tau + margin) return false;
    }
    return true;
}

const GroupKnot *GroupPathWalker::next() {
    if (exhausted_) return nullptr;
    const int n = model_.num_grid();
    const int hard_cap = 8 * model_.num_elements() + 8;
    if (static_cast<int>(knots_.size()) >= hard_cap) {
        exhausted_ = true;
        return nullptr;
    }

    if (knots_.empty()) {
        const RealVector corr = group_correlations(model_, b_bar_);
        tau1_ = corr.maxCoeff();
        if (tau1_ <= 0.0) {
            exhausted_ = true;
            return nullptr;
        }
        int best = 0;
        for (int g = 1; g < n; ++g)
            if (corr(g) > corr(best)) best = g;
        GroupKnot knot;
        knot.tau = tau1_;
        knot.group = best;
        knot.active_groups = {best};
        knot.solution = CxMatrix::Zero(n, 2);
        for (int g = 0; g < n; ++g)
            if (g != best) knot.lambda_candidates.emplace_back(g, corr(g));
        active_ = knot.active_groups;
        y_at_knot_.setZero();
        knots_.push_back(std::move(knot));
        return &knots_.back();
    }

    const double tau_last = knots_.back().tau;
    const double tol = opts_.knot_tol_rel * tau1_;
    const double tau_floor = std::max(tol, 1e-13 * tau1_);

    CxMatrix y = y_at_knot_;
    double hi = tau_last;
    double lo = tau_last;
    bool found = false;
    while (lo > tau_floor) {
        lo = std::max(lo * 0.7, tau_floor * 0.5);
        if (!support_holds(lo, y)) {
            found = true;
            break;
        }
        hi = lo;
    }
    if (!found) {
        exhausted_ = true;
        return nullptr;
    }

    CxMatrix y_hi = y_at_knot_;
    while (hi - lo > tol) {
        const double mid = 0.5 * (hi + lo);
        CxMatrix y_mid = y_hi;
        if (support_holds(mid, y_mid)) {
            hi = mid;
            y_hi = y_mid;
        } else {
            lo = mid;
        }
    }

    const double tau_knot = 0.5 * (hi + lo);

    CxMatrix y_lo = y_hi;
    refresh_restricted(lo, y_lo);
    int removal_group = -1;
    for (int g : active_)
        if (y_lo.row(g).norm() == 0.0) {
            removal_group = g;
            break;
        }

    GroupKnot knot;
    knot.tau = tau_knot;
    CxMatrix y_sol = y_hi;
    refresh_restricted(tau_knot, y_sol);
    knot.solution = y_sol;
    const CxVector r = residual_of(model_, b_bar_, y_sol);
    const RealVector corr = group_correlations(model_, r);
    double best_val = -1.0;
    int best_g = -1;
    for (int g = 0; g < n; ++g) {
        if (std::find(active_.begin(), active_.end(), g) != active_.end()) continue;
        knot.lambda_candidates.emplace_back(g, corr(g));
        if (corr(g) > best_val + 1e-15 * tau1_) {
            best_val = corr(g);
            best_g = g;
        }
    }

    if (removal_group >= 0) {
        knot.removal = true;
        knot.group = removal_group;
        active_.erase(std::find(active_.begin(), active_.end(), removal_group));
    } else {
        if (best_g < 0) {
            exhausted_ = true;
            return nullptr;
        }
        knot.group = best_g;
        active_.push_back(best_g);
    }
    knot.active_groups = active_;
    y_at_knot_ = y_sol;
    knots_.push_back(std::move(knot));
    return &knots_.back();
}

bool GroupPathWalker::ensure_growth_events(int count) {
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

std::vector<int> GroupPathWalker::entry_order() const {
    std::vector<int> order;
    for (const auto &k : knots_)
        if (!k.removal) order.push_back(k.group);
    return order;
}

std::vector<GroupKnot> group_knots(const ArrayModel &model, const CxVector &b_bar,
                                   int max_knots, const SolverOptions &opts) {
    if (max_knots < 1 || max_knots > model.num_elements())
        throw invalid_config("max_knots must be in [1, num_elements]");
    GroupPathWalker walker(model, b_bar, opts);
    std::vector<GroupKnot> out;
    while (static_cast<int>(out.size()) < max_knots) {
        const GroupKnot *k = walker.next();
        if (k == nullptr) break;
        out.push_back(*k);
    }
    return out;
}

}  // namespace knotdoa
