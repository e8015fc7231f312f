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

#include <memory>

namespace knotdoa {

/// Support-change point of the group-lasso path on b_bar = [I|G] y + v_bar.
/// Groups are the size-2 column pairs P_g = [e_g | G e_g]; the solution stores
/// y_g as row g of an N x 2 matrix.
struct GroupKnot {
    double tau = 0.0;
    int group = -1;
    bool removal = false;
    std::vector<int> active_groups;  // after the event, entry order
    CxMatrix solution;               // N x 2
    std::vector<std::pair<int, double>> lambda_candidates;
};

/// Block-coordinate-descent minimiser of
///   0.5 || b_bar - P y ||^2 + tau * sum_g ||y_g||_2.
CxMatrix group_solve_at(const ArrayModel &model, const CxVector &b_bar, double tau,
                        const SolverOptions &opts = {});

double group_duality_gap(const ArrayModel &model, const CxVector &b_bar, double tau,
                         const CxMatrix &y);

/// Group-lasso solve restricted to the given groups (all others pinned to 0).
CxMatrix group_solve_restricted(const ArrayModel &model, const CxVector &b_bar,
                                const std::vector<int> &groups, double tau,
                                const SolverOptions &opts = {});

/// Group norms || P_g^H r ||_2 of a residual; tau_1 is their maximum at r = b_bar.
RealVector group_correlations(const ArrayModel &model, const CxVector &residual);

class GroupPathWalker {
  public:
    GroupPathWalker(const ArrayModel &model, CxVector b_bar, SolverOptions opts = {});

    const GroupKnot *next();
    bool ensure_growth_events(int count);
    const std::vector<GroupKnot> &knots() const { return knots_; }
    std::vector<int> entry_order() const;

  private:
    bool support_holds(double tau, CxMatrix &y) const;
    void refresh_restricted(double tau, CxMatrix &y) const;

    const ArrayModel &model_;
    CxVector b_bar_;
    SolverOptions opts_;
    std::shared_ptr<void> ops_;  // per-group 2x2 block-solver cache
    std::vector<GroupKnot> knots_;
    std::vector<int> active_;
    CxMatrix y_at_knot_;
    double tau1_ = 0.0;
    bool exhausted_ = false;
};

std::vector<GroupKnot> group_knots(const ArrayModel &model, const CxVector &b_bar,
                                   int max_knots, const SolverOptions &opts = {});

}  // namespace knotdoa
