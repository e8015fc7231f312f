// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/array_model.hpp"

#include <cmath>
#include <random>

namespace knotdoa {

void ArrayConfig::validate() const {
    if (num_elements < 2) throw invalid_config("num_elements must be >= 2");
    if (num_grid < num_elements) throw invalid_config("num_grid must be >= num_elements");
    if (spacing <= 0.0) throw invalid_config("spacing must be positive");
    if (!(angle_lo < angle_hi)) throw invalid_config("angle interval must satisfy lo < hi");
}

CxVector ArrayModel::steering_at(double angle) const {
    const int m = num_elements();
    const double u = std::sin(angle);
    CxVector a(m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int d = 0; d < m; ++d)
        a(d) = std::polar(scale, 2.0 * kPi * config.spacing * d * u);
    return a;
}

CxVector ArrayModel::steering_deriv_at(double angle) const {
    const int m = num_elements();
    CxVector a = steering_at(angle);
    const cxd factor(0.0, 2.0 * kPi * config.spacing * std::cos(angle));
    for (int d = 0; d < m; ++d) a(d) *= factor * static_cast<double>(d);
    return a;
}

double ArrayModel::bin_width(int k) const {
    const int n = num_grid();
    if (k < 0 || k >= n) throw invalid_config("grid index out of range");
    if (n == 1) return config.angle_hi - config.angle_lo;
    if (k == 0) return grid(1) - grid(0);
    if (k == n - 1) return grid(n - 1) - grid(n - 2);
    return 0.5 * (grid(k + 1) - grid(k - 1));
}

CxMatrix ArrayModel::group_columns(int g) const {
    if (!orthogonal()) throw invalid_config("group columns require the orthogonal model");
    const int n = num_grid();
    if (g < 0 || g >= n) throw invalid_config("group index out of range");
    CxMatrix p = CxMatrix::Zero(n, 2);
    p(g, 0) = 1.0;
    p.col(1) = grid_coupling.col(g);
    return p;
}

ArrayModel build_array_model(const ArrayConfig &cfg, GridMode mode) {
    cfg.validate();
    const int m = cfg.num_elements;
    const int n = cfg.num_grid;
    if (mode == GridMode::orthogonal && n != m)
        throw invalid_config("orthogonal mode requires num_grid == num_elements");

    ArrayModel model;
    model.mode = mode;
    model.config = cfg;
    model.grid.resize(n);
    model.grid_sin.resize(n);

    if (mode == GridMode::orthogonal) {
        // Uniform spatial frequencies: sin(rho_k) = (2k - N - 1) / (2 N spacing),
        // k = 1..N. For spacing 1/2 this is the centred DFT frequency comb.
        for (int k = 0; k < n; ++k) {
            const double u = (2.0 * (k + 1) - n - 1.0) / (2.0 * n * cfg.spacing);
            if (u < -1.0 || u > 1.0)
                throw invalid_config("orthogonal grid does not fit in visible space; increase spacing");
            model.grid_sin(k) = u;
            model.grid(k) = std::asin(u);
        }
    } else {
        // Bin centres, uniform in sin(rho) over the angle interval. For the
        // default interval this is the same frequency comb as the orthogonal
        // grid, refined to N points.
        const double u_lo = std::sin(cfg.angle_lo);
        const double u_hi = std::sin(cfg.angle_hi);
        for (int k = 0; k < n; ++k) {
            const double u = u_lo + (k + 0.5) * (u_hi - u_lo) / n;
            model.grid_sin(k) = u;
            model.grid(k) = std::asin(u);
        }
    }

    model.steering.resize(m, n);
    model.steering_deriv.resize(m, n);
    for (int k = 0; k < n; ++k) {
        model.steering.col(k) = model.steering_at(model.grid(k));
        model.steering_deriv.col(k) = model.steering_deriv_at(model.grid(k));
    }

    if (mode == GridMode::orthogonal) {
        const CxMatrix gram = model.steering.adjoint() * model.steering;
        const double err = (gram - CxMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (err > 1e-10)
            throw construction_error("steering basis failed the unitarity check, |A^H A - I| = " +
                                     std::to_string(err));
        // The grid-matching operator uses one-based element indices,
        // G = A^H diag(1..M) A; the steering phases themselves run over
        // d = 0..M-1. See the README notes on the index conventions.
        RealVector d(m);
        for (int i = 0; i < m; ++i) d(i) = static_cast<double>(i + 1);
        model.grid_coupling = model.steering.adjoint() * d.asDiagonal() * model.steering;
    }
    return model;
}

void Scenario::validate(const ArrayModel &model) const {
    const int n = model.num_grid();
    const auto s = source_indices.size();
    if (offsets.size() != s || static_cast<size_t>(weights.size()) != s)
        throw invalid_config("scenario fields must have matching lengths");
    for (size_t i = 0; i < s; ++i) {
        if (source_indices[i] < 0 || source_indices[i] >= n)
            throw invalid_config("source index out of grid range");
        if (i > 0 && source_indices[i] <= source_indices[i - 1])
            throw invalid_config("source indices must be sorted and distinct");
        if (offsets[i] != 0.0 && std::abs(weights(i)) == 0.0)
            throw invalid_config("offsets may only be attached to nonzero weights");
        if (std::abs(offsets[i]) >= 0.5 * model.bin_width(source_indices[i]) + 1e-12)
            throw invalid_config("offset exceeds half a grid bin");
    }
}

double Scenario::noise_variance() const {
    // Source-free scenarios keep a unit reference power so that pure-noise
    // calibration runs are well defined.
    const double power = (weights.size() == 0) ? 1.0 : weights.squaredNorm();
    if (power <= 0.0) throw invalid_config("scenario has zero source power");
    return power * std::pow(10.0, -snr_db / 10.0);
}

Snapshot synthesize(const ArrayModel &model, const Scenario &scen, std::uint64_t seed) {
    scen.validate(model);
    const int m = model.num_elements();
    const double sigma2 = scen.noise_variance();

    CxVector b = CxVector::Zero(m);
    for (size_t i = 0; i < scen.source_indices.size(); ++i) {
        const double angle = model.grid(scen.source_indices[i]) + scen.offsets[i];
        b += scen.weights(static_cast<Eigen::Index>(i)) * model.steering_at(angle);
    }

    std::mt19937_64 gen(splitmix64(seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double comp_sd = std::sqrt(sigma2 / 2.0);
    for (int d = 0; d < m; ++d) {
        const double re = normal(gen);
        const double im = normal(gen);
        b(d) += cxd(comp_sd * re, comp_sd * im);
    }

    Snapshot snap;
    snap.b = std::move(b);
    snap.seed = seed;
    if (model.orthogonal()) snap.b_bar = model.steering.adjoint() * snap.b;
    return snap;
}

double taylor_residual(const ArrayModel &model, const Scenario &scen) {
    scen.validate(model);
    const int m = model.num_elements();
    CxVector exact = CxVector::Zero(m);
    CxVector taylor = CxVector::Zero(m);
    for (size_t i = 0; i < scen.source_indices.size(); ++i) {
        const int k = scen.source_indices[i];
        const cxd w = scen.weights(static_cast<Eigen::Index>(i));
        exact += w * model.steering_at(model.grid(k) + scen.offsets[i]);
        taylor += w * (model.steering.col(k) + scen.offsets[i] * model.steering_deriv.col(k));
    }
    return (exact - taylor).norm();
}

}  // namespace knotdoa
