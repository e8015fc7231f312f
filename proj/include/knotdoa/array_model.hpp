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

namespace knotdoa {

enum class GridMode { orthogonal, oversampled };

struct ArrayConfig {
    int num_elements = 8;    // M
    int num_grid = 8;        // N >= M
    double spacing = 0.5;    // element spacing in wavelengths
    double angle_lo = -kPi / 2;
    double angle_hi = kPi / 2;

    void validate() const;
};

/// ULA steering structures over an estimation grid.
///
/// Columns of `steering` are unit norm: a(rho)_d = exp(i 2 pi spacing d sin rho)/sqrt(M),
/// d = 0..M-1. `steering_deriv` holds the analytic derivative d a / d rho at the
/// grid angles. In orthogonal mode the grid is uniform in sin(rho) so that
/// A^H A = I, and `grid_coupling` = A^H D A with D = diag(0..M-1).
struct ArrayModel {
    GridMode mode = GridMode::orthogonal;
    ArrayConfig config;
    CxMatrix steering;        // A, M x N
    CxMatrix steering_deriv;  // A1, M x N
    RealVector grid;          // rho, radians
    RealVector grid_sin;      // sin(rho)
    CxMatrix grid_coupling;   // G = A^H D A (orthogonal mode only)

    int num_elements() const { return static_cast<int>(steering.rows()); }
    int num_grid() const { return static_cast<int>(steering.cols()); }
    bool orthogonal() const { return mode == GridMode::orthogonal; }

    CxVector steering_at(double angle) const;
    CxVector steering_deriv_at(double angle) const;

    /// Half-distance to the neighbouring grid angles (one-sided at the ends).
    double bin_width(int k) const;

    /// Group design column pair P_g = [e_g | G e_g] for the grid-matching model.
    CxMatrix group_columns(int g) const;
};

ArrayModel build_array_model(const ArrayConfig &cfg, GridMode mode);

/// Ground truth for one synthetic snapshot. Offsets are angle perturbations in
/// radians attached to the matching entry of `source_indices`; weights carry
/// the source amplitudes (sum of |w|^2 is the total source power).
struct Scenario {
    std::vector<int> source_indices;  // sorted, distinct grid indices
    std::vector<double> offsets;      // radians, same length as source_indices
    CxVector weights;                 // complex amplitudes
    double snr_db = 0.0;

    void validate(const ArrayModel &model) const;

    /// Per-element complex noise variance sigma^2 implied by the SNR.
    /// The SNR convention matches the reference experiments: the mean
    /// per-element noise power equals ||weights||^2 / 10^(snr/10).
    double noise_variance() const;
};

struct Snapshot {
    CxVector b;      // length M
    CxVector b_bar;  // A^H b, only filled for orthogonal models
    std::uint64_t seed = 0;
};

/// b = sum_i w_i a(rho_{k_i} + p_i) + v with v circular complex Gaussian of
/// per-element variance sigma^2. Off-grid sources use the exact steering
/// vector, not its Taylor expansion. Deterministic for a fixed seed.
Snapshot synthesize(const ArrayModel &model, const Scenario &scen, std::uint64_t seed);

/// || b_exact - (A x + A1 P x) ||_2 for the noiseless scenario; the size of the
/// first-order interpolation error.
double taylor_residual(const ArrayModel &model, const Scenario &scen);

}  // namespace knotdoa
