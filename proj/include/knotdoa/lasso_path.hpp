// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/array_model.hpp"

#include <optional>

namespace knotdoa {

/// One support-change point of the complex lasso path.
struct Knot {
    double tau = 0.0;
    int index = -1;     // grid index entering (or leaving) at this knot
    bool removal = false;
    std::vector<int> active_set;   // after the event, in entry order
    CxVector solution;             // x_hat(tau) at the knot (dense, length N)
    // Per-candidate support-change levels |a_j^H (b - A_J x_J)| at the knot,
    // for inactive j; the entering index attains the maximum.
    std::vector<std::pair<int, double>> lambda_candidates;
};

enum class ModelKind { orthogonal, general };

struct KnotPath {
    std::vector<Knot> knots;
    ModelKind model_kind = ModelKind::orthogonal;

    double tau(int k) const;          // 1-based; tau(#knots + 1) == 0
    int num_knots() const { return static_cast<int>(knots.size()); }
};

/// Sorted-correlation path for A^H A = I. Always M knots, no removals.
KnotPath orthogonal_knots(const ArrayModel &model, const CxVector &b);

/// Minimiser of 0.5 ||b - A x||^2 + tau * sum_j |x_j| by cyclic coordinate
/// descent, KKT-certified to opts.kkt_tol.
CxVector lasso_solve_at(const ArrayModel &model, const CxVector &b, double tau,
                        const SolverOptions &opts = {});

/// Primal-dual gap of a candidate solution; certification aid.
double lasso_duality_gap(const ArrayModel &model, const CxVector &b, double tau,
                         const CxVector &x);

/// Lazy knot enumerator for general (fat) steering matrices. Knots are located
/// by bisection on tau against support change of the active-set restricted
/// solution; every emitted knot is KKT-certified against the full model.
class LassoPathWalker {
  public:
    LassoPathWalker(const ArrayModel &model, CxVector b, SolverOptions opts = {});

    /// Next knot, or nullptr when the path has no further support changes.
    const Knot *next();

    /// Walk until `count` entry (growth) events exist; false if exhausted first.
    bool ensure_growth_events(int count);

    const std::vector<Knot> &knots() const { return knots_; }
    std::vector<int> entry_order() const;
    const CxVector &measurement() const { return b_; }

  private:
    bool support_holds(double tau, CxVector &x) const;
    void refresh_restricted(double tau, CxVector &x) const;

    const ArrayModel &model_;
    CxVector b_;
    SolverOptions opts_;
    std::vector<Knot> knots_;
    std::vector<int> active_;
    CxVector x_at_knot_;
    double tau1_ = 0.0;
    bool exhausted_ = false;
};

/// Full path via the walker; at most max_knots support changes.
KnotPath general_knots(const ArrayModel &model, const CxVector &b, int max_knots,
                       const SolverOptions &opts = {});

}  // namespace knotdoa
