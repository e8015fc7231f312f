// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/common.hpp"

#include <functional>

namespace knotdoa {

/// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b].
/// Throws numeric_error when the interval budget is exhausted.
double integrate(const std::function<double(double)> &f, double a, double b,
                 double rel_tol = 1e-9, double abs_tol = 1e-300);

/// Standard normal CDF.
double normal_cdf(double x);

/// First-order Marcum Q function Q_1(a, b), evaluated by the canonical series
/// (Poisson mixture of gamma tails) to absolute tolerance ~1e-12.
double marcum_q1(double a, double b);

}  // namespace knotdoa
