// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/stat_tests.hpp"

#include "knotdoa/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace knotdoa {

bool needs_sigma(TestKind t) { return t != TestKind::test_c; }

const char *test_name(TestKind t) {
    switch (t) {
        case TestKind::cov_exact: return "cov-exact";
        case TestKind::cov_asymptotic: return "cov-asymp";
        case TestKind::test_a: return "A";
        case TestKind::test_b: return "B";
        case TestKind::test_c: return "C";
        case TestKind::test_d: return "D";
        case TestKind::test_e: return "E";
    }
    return "?";
}

TestKind test_from_name(const std::string &name) {
    if (name == "cov-exact") return TestKind::cov_exact;
    if (name == "cov-asymp" || name == "cov-asymptotic") return TestKind::cov_asymptotic;
    if (name == "A" || name == "a") return TestKind::test_a;
    if (name == "B" || name == "b") return TestKind::test_b;
    if (name == "C" || name == "c") return TestKind::test_c;
    if (name == "D" || name == "d") return TestKind::test_d;
    if (name == "E" || name == "e") return TestKind::test_e;
    throw invalid_config("unknown test name: " + name);
}

namespace {

void check_sigma2(double sigma2) {
    if (!(sigma2 > 0.0)) throw invalid_config("noise variance must be positive");
}

}  // namespace

double stat_cov(double tau_k, double tau_next, double sigma2) {
    check_sigma2(sigma2);
    return tau_k * (tau_k - tau_next) / sigma2;
}

double stat_a(double tau_k, double sigma2) {
    check_sigma2(sigma2);
    return tau_k / std::sqrt(sigma2);
}

double stat_b(double tau_k, double tau_next, double sigma2) {
    check_sigma2(sigma2);
    return (tau_k * tau_k - tau_next * tau_next) / sigma2;
}

double stat_c(double tau_k, double sigma2_hat) {
    check_sigma2(sigma2_hat);
    return tau_k * tau_k / sigma2_hat;
}

double stat_de(double tau_k, double sigma2) {
    check_sigma2(sigma2);
    return tau_k * tau_k / sigma2;
}

namespace {

double path_tau(const KnotPath &path, int k) {
    if (k < 1 || k > path.num_knots()) throw invalid_config("knot index out of range");
    return path.knots[static_cast<size_t>(k - 1)].tau;
}

}  // namespace

double stat_cov(const KnotPath &path, int k, double sigma2) {
    return stat_cov(path_tau(path, k), path.tau(k + 1), sigma2);
}

double stat_a(const KnotPath &path, int k, double sigma2) {
    return stat_a(path_tau(path, k), sigma2);
}

double stat_b(const KnotPath &path, int k, double sigma2) {
    return stat_b(path_tau(path, k), path.tau(k + 1), sigma2);
}

// ---------------------------------------------------------------------------

double cdf_cov_exact(double eta, int n) {
    if (n < 1) throw invalid_config("n must be >= 1");
    if (eta < 0.0) throw invalid_config("eta must be nonnegative");
    if (eta == 0.0) return 0.0;
    if (n == 1) return 1.0 - std::exp(-eta / 2.0);  // T = tau^2/sigma^2 with tau_{next} = 0

    const double lo = std::sqrt(eta);
    // Integrand decays like y exp(-y^2/2); the order-statistics factor pushes
    // its support up by about sqrt(2 log n).
    const double hi = lo + 12.0 + std::sqrt(2.0 * std::log(static_cast<double>(n)));
    auto integrand = [eta, n](double y) {
        const double d = y - eta / y;
        const double inner = 1.0 - std::exp(-0.5 * d * d);
        return y * std::exp(-0.5 * y * y) * std::pow(inner, n - 1);
    };
    const double integral = integrate(integrand, lo, hi, 1e-9, 1e-16);
    return std::clamp(1.0 - n * integral, 0.0, 1.0);
}

double cdf_cov_asymptotic(double eta, int l) {
    if (l < 1) throw invalid_config("l must be >= 1");
    if (eta <= 0.0) return 0.0;
    return 1.0 - std::exp(-static_cast<double>(l) * eta);
}

double cdf_a(double eta, int n) {
    if (n < 1) throw invalid_config("n must be >= 1");
    if (eta <= 0.0) return 0.0;
    return std::pow(1.0 - std::exp(-0.5 * eta * eta), n);
}

double cdf_b(double eta) {
    if (eta <= 0.0) return 0.0;
    return 1.0 - std::exp(-eta);
}

double cdf_c(double eta, int l) {
    if (l < 1) throw invalid_config("l must be >= 1");
    if (eta <= 0.0) return 0.0;
    if (l > 30) {
        // Alternating binomial sum loses digits for large l; same value via the
        // construction integral.
        auto f = [eta, l](double y) {
            return std::exp(-y) * std::pow(1.0 - std::exp(-eta * y), l);
        };
        return std::clamp(integrate(f, 0.0, 60.0, 1e-10, 1e-16), 0.0, 1.0);
    }
    double sum = 0.0;
    double binom = 1.0;  // C(l, r)
    for (int r = 0; r <= l; ++r) {
        const double term = binom / (1.0 + r * eta);
        sum += (r % 2 == 0) ? term : -term;
        binom = binom * (l - r) / (r + 1.0);
    }
    return std::clamp(sum, 0.0, 1.0);
}

double cdf_d(double eta, const std::vector<double> &scales) {
    if (scales.empty()) throw invalid_config("Test D requires at least one scale");
    if (eta <= 0.0) return 0.0;
    double prod = 1.0;
    for (double s : scales) {
        if (!(s > 0.0)) throw invalid_config("Test D scales must be positive");
        prod *= 1.0 - std::exp(-eta / s);
    }
    return prod;
}

double cdf_e(double eta, const std::vector<std::pair<double, double>> &pairs) {
    if (pairs.empty()) throw invalid_config("Test E requires at least one eigen pair");
    if (eta <= 0.0) return 0.0;
    double prod = 1.0;
    for (const auto &[rho, eps] : pairs) {
        if (!(rho > 0.0) || eps < 0.0 || eps > rho)
            throw invalid_config("Test E pairs must satisfy rho >= eps >= 0");
        double factor;
        if (eps < 1e-12 * rho) {
            factor = 1.0 - std::exp(-eta / rho);
        } else if (rho - eps < 1e-9 * rho) {
            factor = 1.0 - std::exp(-eta / rho) * (1.0 + eta / rho);  // Erlang-2 limit
        } else {
            factor = rho / (rho - eps) * (1.0 - std::exp(-eta / rho)) -
                     eps / (rho - eps) * (1.0 - std::exp(-eta / eps));
        }
        prod *= std::clamp(factor, 0.0, 1.0);
    }
    return prod;
}

// ---------------------------------------------------------------------------

namespace {

CxMatrix residual_projector(const CxMatrix &cols) {
    const Eigen::Index dim = cols.rows();
    if (cols.cols() == 0) return CxMatrix::Identity(dim, dim);
    const Eigen::ColPivHouseholderQR<CxMatrix> qr(cols);
    if (qr.rank() < cols.cols())
        throw invalid_config("active columns are rank deficient");
    CxMatrix q = CxMatrix::Identity(dim, dim);
    // Thin Q of the QR factorisation spans the active columns.
    const CxMatrix thin_q =
        qr.householderQ() * CxMatrix::Identity(dim, cols.cols());
    q -= thin_q * thin_q.adjoint();
    return q;
}

}  // namespace

std::vector<double> test_d_scales(const ArrayModel &model, const std::vector<int> &active) {
    const int n = model.num_grid();
    CxMatrix aj(model.num_elements(), static_cast<Eigen::Index>(active.size()));
    for (size_t i = 0; i < active.size(); ++i) {
        if (active[i] < 0 || active[i] >= n) throw invalid_config("active index out of range");
        aj.col(static_cast<Eigen::Index>(i)) = model.steering.col(active[i]);
    }
    const CxMatrix q = residual_projector(aj);
    std::vector<double> scales;
    scales.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
        if (std::find(active.begin(), active.end(), r) != active.end()) continue;
        const double s = std::real(model.steering.col(r).dot(q * model.steering.col(r)));
        if (s > 1e-10) scales.push_back(s);
    }
    return scales;
}

std::vector<std::pair<double, double>> test_e_pairs(const ArrayModel &model,
                                                    const std::vector<int> &active_groups) {
    if (!model.orthogonal() || model.grid_coupling.size() == 0)
        throw invalid_config("Test E requires the grid-matching model");
    const int n = model.num_grid();
    CxMatrix pj(n, static_cast<Eigen::Index>(2 * active_groups.size()));
    for (size_t i = 0; i < active_groups.size(); ++i) {
        const int g = active_groups[i];
        if (g < 0 || g >= n) throw invalid_config("active group out of range");
        pj.block(0, static_cast<Eigen::Index>(2 * i), n, 2) = model.group_columns(g);
    }
    const CxMatrix q = residual_projector(pj);
    std::vector<std::pair<double, double>> pairs;
    for (int g = 0; g < n; ++g) {
        if (std::find(active_groups.begin(), active_groups.end(), g) != active_groups.end())
            continue;
        const CxMatrix pg = model.group_columns(g);
        Eigen::Matrix2cd h = pg.adjoint() * q * pg;
        h = 0.5 * (h + h.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
        const double lo = std::max(es.eigenvalues()(0), 0.0);
        const double hi = std::max(es.eigenvalues()(1), 0.0);
        if (hi > 1e-10) pairs.emplace_back(hi, lo);  // rank-exhausted groups drop out
    }
    return pairs;
}

double estimate_sigma2(const ArrayModel &model, const CxVector &b, const KnotPath &path) {
    const int m = model.num_elements();
    std::vector<int> support;
    for (const auto &knot : path.knots) {
        if (knot.removal) continue;
        if (std::find(support.begin(), support.end(), knot.index) == support.end())
            support.push_back(knot.index);
        if (static_cast<int>(support.size()) == m - 1) break;
    }
    if (static_cast<int>(support.size()) < m - 1)
        throw estimation_error("path has fewer than M-1 growth events");
    CxMatrix aj(m, m - 1);
    for (int i = 0; i < m - 1; ++i) aj.col(i) = model.steering.col(support[static_cast<size_t>(i)]);
    const CxVector x = aj.colPivHouseholderQr().solve(b);
    return (b - aj * x).squaredNorm();
}

double event_b_bound(double theta_over_sigma, double eps_over_sigma, int s, int m) {
    if (!(theta_over_sigma > eps_over_sigma) || !(eps_over_sigma > 0.0))
        throw invalid_config("bound requires theta/sigma > eps/sigma > 0");
    if (s < 0 || m < s) throw invalid_config("need 0 <= S <= M");
    const double q1 = marcum_q1(theta_over_sigma, eps_over_sigma);
    const double rayleigh = 1.0 - std::exp(-0.5 * eps_over_sigma * eps_over_sigma);
    return std::pow(q1, s) * std::pow(rayleigh, m - s);
}

// ---------------------------------------------------------------------------

double lasso_pdf_real_orthogonal(double xhat, double x_true, double tau, double sigma) {
    if (!(sigma > 0.0)) throw invalid_config("sigma must be positive");
    if (xhat == 0.0) return 0.0;  // the mass at zero is atomic, see lasso_zero_mass_real
    const double shift = (xhat > 0.0) ? tau : -tau;
    const double z = (xhat + shift - x_true) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

double lasso_zero_mass_real(double x_true, double tau, double sigma) {
    if (!(sigma > 0.0)) throw invalid_config("sigma must be positive");
    return normal_cdf((tau - x_true) / sigma) - normal_cdf((-tau - x_true) / sigma);
}

ErrorTerms prob_error_real(double x_true, double tau, double sigma) {
    ErrorTerms terms;
    terms.miss = lasso_zero_mass_real(x_true, tau, sigma);
    terms.false_alarm = 2.0 * normal_cdf(-tau / sigma);
    return terms;
}

}  // namespace knotdoa
