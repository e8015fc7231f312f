// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotdoa {

using cxd = std::complex<double>;
using CxVector = Eigen::VectorXcd;
using CxMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Configuration or precondition violated by the caller.
struct invalid_config : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A construction-time self check failed (e.g. unitarity of the steering basis).
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature / root finding / series evaluation did not converge.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The inner lasso / group-lasso solver hit its iteration cap.
struct solver_failure : std::runtime_error {
    solver_failure(const std::string &msg, double tau_at, std::vector<int> active)
        : std::runtime_error(msg), tau(tau_at), active_set(std::move(active)) {}
    double tau;
    std::vector<int> active_set;
};

/// Noise-variance estimation is impossible on the given path.
struct estimation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solver and path-search tolerances. Defaults are the contract values used
/// throughout the library; tests rely on them.
struct SolverOptions {
    double cd_tol = 1e-10;        // coordinate-descent fixed point tolerance
    int max_sweeps = 100000;      // sweep cap before solver_failure
    double knot_tol_rel = 1e-10;  // knot bisection tolerance, relative to tau_1
    double kkt_tol = 1e-8;        // certification tolerance on returned solutions
};

/// splitmix64; used to derive independent per-trial RNG seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace knotdoa
