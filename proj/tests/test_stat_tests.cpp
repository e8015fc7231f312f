// SPDX-License-Identifier: Apache-2.0

#include "knotdoa/stat_tests.hpp"

#include "knotdoa/special_functions.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace knotdoa;
namespace kt = knotdoa::test;

namespace {

ArrayModel orthogonal8() {
    ArrayConfig cfg;
    cfg.num_elements = 8;
    cfg.num_grid = 8;
    return build_array_model(cfg, GridMode::orthogonal);
}

ArrayModel oversampled16() {
    ArrayConfig cfg;
    cfg.num_elements = 8;
    cfg.num_grid = 16;
    return build_array_model(cfg, GridMode::oversampled);
}

}  // namespace

TEST_CASE("covariance statistic arithmetic", "[stat_tests]") {
    const double sigma = 0.7;
    REQUIRE(stat_cov(2.0 * sigma, sigma, sigma * sigma) == Catch::Approx(2.0));
    REQUIRE(stat_cov(1.3, 1.3, 0.5) == Catch::Approx(0.0));
}

TEST_CASE("general covariance definition reduces to the knot form", "[stat_tests]") {
    // T_k = (b^H A xhat(tau_{k+1}) - b^H A_J xtilde_J(tau_{k+1})) / sigma^2
    // evaluated with two lasso solves must match tau_k (tau_k - tau_{k+1}).
    const ArrayModel model = orthogonal8();
    auto gen = kt::make_rng(421);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        CxVector b = model.steering.col(2) * 2.0;
        for (int d = 0; d < 8; ++d) b(d) += cxd(0.4 * normal(gen), 0.4 * normal(gen));
        const KnotPath path = orthogonal_knots(model, b);
        const double sigma2 = 1.0;  // common factor, cancels in the comparison
        for (int k = 1; k <= 7; ++k) {
            const double tau_next = path.tau(k + 1);
            const CxVector xhat = lasso_solve_at(model, b, tau_next);
            // Restricted problem on the active set just before knot k; for an
            // orthogonal basis the coordinates decouple into soft thresholds.
            CxVector xres = CxVector::Zero(8);
            const CxVector corr = model.steering.adjoint() * b;
            for (int i = 0; i < k - 1; ++i) {
                const int j = path.knots[size_t(i)].index;
                const double m = std::abs(corr(j));
                if (m > tau_next) xres(j) = corr(j) * (1.0 - tau_next / m);
            }
            const double lhs =
                std::real(b.dot(model.steering * xhat) - b.dot(model.steering * xres)) / sigma2;
            const double rhs = stat_cov(path, k, sigma2);
            REQUIRE(lhs == Catch::Approx(rhs).margin(1e-8));
        }
    }
}

TEST_CASE("exact covariance cdf boundary values", "[stat_tests]") {
    REQUIRE(cdf_cov_exact(0.0, 7) == 0.0);
    REQUIRE(cdf_cov_exact(1e3, 7) == Catch::Approx(1.0).margin(1e-6));
    // n = 1 collapses to the single-knot closed form.
    REQUIRE(cdf_cov_exact(2.0, 1) == Catch::Approx(1.0 - std::exp(-1.0)).margin(1e-12));
}

TEST_CASE("exact covariance cdf matches the order-statistics oracle", "[stat_tests][slow]") {
    auto gen = kt::make_rng(77);
    const int draws = 200000;

    for (int n : {1, 7}) {
        std::vector<double> sample(draws);
        for (int t = 0; t < draws; ++t) {
            const auto v = kt::rayleigh_order_desc(n, gen);
            const double next = (n >= 2) ? v[1] : 0.0;
            sample[size_t(t)] = v[0] * (v[0] - next);
        }
        std::sort(sample.begin(), sample.end());
        const double ks = kt::ks_statistic_grid(
            sample, [n](double x) { return cdf_cov_exact(x, n); }, 2000);
        INFO("n = " << n);
        REQUIRE(ks < 0.012);
    }
}

TEST_CASE("asymptotic covariance cdf and convergence direction", "[stat_tests][slow]") {
    REQUIRE(cdf_cov_asymptotic(0.0, 1) == 0.0);
    REQUIRE(cdf_cov_asymptotic(std::log(100.0), 1) == Catch::Approx(0.99).margin(1e-12));

    // The finite-sample top-product statistic approaches Exp(1) as M grows.
    auto gen = kt::make_rng(99);
    auto ks_at = [&](int m, int draws) {
        std::vector<double> sample(static_cast<size_t>(draws));
        for (int t = 0; t < draws; ++t) {
            double top = 0.0, second = 0.0;
            for (int i = 0; i < m; ++i) {
                const double r = kt::rayleigh(gen);
                if (r > top) {
                    second = top;
                    top = r;
                } else if (r > second) {
                    second = r;
                }
            }
            sample[size_t(t)] = top * (top - second);
        }
        std::sort(sample.begin(), sample.end());
        return kt::ks_statistic(sample, [](double x) { return 1.0 - std::exp(-x); });
    };
    REQUIRE(ks_at(4096, 20000) < ks_at(64, 20000));
}

TEST_CASE("test A cdf, threshold value and oracle", "[stat_tests][slow]") {
    REQUIRE(cdf_a(1e3, 7) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(cdf_a(0.0, 1) == 0.0);
    // (1 - e^{-eta^2/2})^7 = 0.99 at eta = 3.6186.
    REQUIRE(cdf_a(3.6186, 7) == Catch::Approx(0.99).margin(2e-5));

    auto gen = kt::make_rng(101);
    const int draws = 400000;
    std::vector<double> sample(draws);
    for (int t = 0; t < draws; ++t) sample[size_t(t)] = kt::rayleigh_order_desc(7, gen)[0];
    std::sort(sample.begin(), sample.end());
    REQUIRE(kt::ks_statistic(sample, [](double x) { return cdf_a(x, 7); }) < 0.005);
}

TEST_CASE("test B cdf is the unit exponential", "[stat_tests][slow]") {
    REQUIRE(cdf_b(0.0) == 0.0);
    REQUIRE(cdf_b(std::log(100.0)) == Catch::Approx(0.99).margin(1e-12));

    // Renyi: the top spacing of n standard exponential order statistics is
    // Exp(1) for every n.
    auto gen = kt::make_rng(103);
    const int n = 7, draws = 400000;
    std::vector<double> sample(draws);
    for (int t = 0; t < draws; ++t) {
        std::vector<double> e(n);
        for (auto &x : e) x = kt::exponential(gen);
        std::sort(e.begin(), e.end(), std::greater<>());
        sample[size_t(t)] = e[0] - e[1];
    }
    std::sort(sample.begin(), sample.end());
    REQUIRE(kt::ks_statistic(sample, cdf_b) < 0.005);
}

TEST_CASE("noise variance estimate", "[stat_tests][slow]") {
    const ArrayModel model = orthogonal8();

    // Exact fit when b lies in the span of M-1 columns.
    CxVector b = CxVector::Zero(8);
    for (int j = 0; j < 7; ++j) b += (1.0 + j) * model.steering.col(j);
    const KnotPath path = orthogonal_knots(model, b);
    REQUIRE(estimate_sigma2(model, b, path) <= 1e-12);

    // Homogeneity of degree two.
    auto gen = kt::make_rng(107);
    std::normal_distribution<double> normal(0.0, 1.0);
    CxVector bn(8);
    for (int d = 0; d < 8; ++d) bn(d) = cxd(normal(gen), normal(gen));
    const double s1 = estimate_sigma2(model, bn, orthogonal_knots(model, bn));
    const CxVector b2 = 2.0 * bn;
    const double s2 = estimate_sigma2(model, b2, orthogonal_knots(model, b2));
    REQUIRE(s2 == Catch::Approx(4.0 * s1).margin(1e-10));

    // Pure noise: the estimate is the smallest of M unit-mean exponentials,
    // so its mean is sigma^2 / M.
    const double sigma2 = 1.0;
    double acc = 0.0;
    const int trials = 200000;
    for (int t = 0; t < trials; ++t) {
        CxVector v(8);
        for (int d = 0; d < 8; ++d)
            v(d) = std::sqrt(sigma2 / 2.0) * cxd(normal(gen), normal(gen));
        acc += estimate_sigma2(model, v, orthogonal_knots(model, v));
    }
    REQUIRE(acc / trials == Catch::Approx(sigma2 / 8.0).epsilon(0.02));
}

TEST_CASE("test C cdf values and construction oracle", "[stat_tests][slow]") {
    REQUIRE(cdf_c(0.0, 5) == 0.0);  // alternating binomial identity
    for (double eta : {0.3, 1.0, 10.0})
        REQUIRE(cdf_c(eta, 1) == Catch::Approx(eta / (1.0 + eta)).margin(1e-12));
    // Large-l integral form agrees with the sum where both are stable.
    REQUIRE(cdf_c(45.0, 31) == Catch::Approx(cdf_c(45.0, 30)).epsilon(0.05));

    // Oracle: max of l unit exponentials over an independent unit exponential.
    auto gen = kt::make_rng(109);
    const int l = 7, draws = 400000;
    std::vector<double> sample(draws);
    for (int t = 0; t < draws; ++t) {
        double mx = 0.0;
        for (int i = 0; i < l; ++i) mx = std::max(mx, kt::exponential(gen));
        sample[size_t(t)] = mx / kt::exponential(gen);
    }
    std::sort(sample.begin(), sample.end());
    REQUIRE(kt::ks_statistic(sample, [](double x) { return cdf_c(x, 7); }) < 0.005);
}

TEST_CASE("test D scales: identity reduction and projector rank", "[stat_tests]") {
    const ArrayModel orth = orthogonal8();
    const auto unit = test_d_scales(orth, {});
    REQUIRE(unit.size() == 8);
    for (double s : unit) REQUIRE(s == Catch::Approx(1.0).margin(1e-10));

    const ArrayModel fat = oversampled16();
    const auto scales = test_d_scales(fat, {6, 9});
    REQUIRE(scales.size() == 14);  // one chi^2 scale per inactive column
    for (double s : scales) {
        REQUIRE(s > 0.0);
        REQUIRE(s <= 1.0 + 1e-9);  // projections of unit-norm columns
    }

    // Scales are invariant under unitary left-multiplication of the array.
    ArrayModel rotated = fat;
    Eigen::HouseholderQR<CxMatrix> qr(CxMatrix::Random(8, 8));
    const CxMatrix u = qr.householderQ();
    rotated.steering = u * fat.steering;
    const auto scales_rot = test_d_scales(rotated, {6, 9});
    for (size_t i = 0; i < scales.size(); ++i)
        REQUIRE(scales_rot[i] == Catch::Approx(scales[i]).margin(1e-9));
}

TEST_CASE("test D cdf reductions and threshold-level accuracy", "[stat_tests][slow]") {
    REQUIRE(cdf_d(0.0, {1.0, 1.0}) == 0.0);
    const std::vector<double> ones(7, 1.0);
    for (double eta : {0.5, 2.0, 6.0})
        REQUIRE(cdf_d(eta, ones) ==
                Catch::Approx(std::pow(1.0 - std::exp(-eta), 7)).margin(1e-12));

    // What detection relies on: at the inverted 0.99 point the true maximum of
    // the projected correlated magnitudes exceeds at close to the nominal 1%.
    const ArrayModel model = oversampled16();
    const std::vector<int> active = {6, 9};
    const auto scales = test_d_scales(model, active);
    double lo = 0.0, hi = 64.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (hi + lo);
        (cdf_d(mid, scales) < 0.99 ? lo : hi) = mid;
    }
    const double eta = 0.5 * (hi + lo);

    CxMatrix aj(8, 2);
    aj.col(0) = model.steering.col(6);
    aj.col(1) = model.steering.col(9);
    const CxMatrix q = CxMatrix::Identity(8, 8) - aj * (aj.adjoint() * aj).inverse() * aj.adjoint();
    auto gen = kt::make_rng(211);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int draws = 200000;
    int exceed = 0;
    for (int t = 0; t < draws; ++t) {
        CxVector v(8);
        for (int d = 0; d < 8; ++d) v(d) = cxd(normal(gen), normal(gen)) / std::sqrt(2.0);
        const CxVector qv = q * v;
        double mx = 0.0;
        for (int r = 0; r < 16; ++r) {
            if (r == 6 || r == 9) continue;
            mx = std::max(mx, std::abs(model.steering.col(r).dot(qv)));
        }
        if (mx * mx > eta) ++exceed;
    }
    const double fa = static_cast<double>(exceed) / draws;
    REQUIRE(fa == Catch::Approx(0.01).margin(0.004));
}

TEST_CASE("test E pairs: dimensions, degenerate coupling, relabeling", "[stat_tests]") {
    const ArrayModel model = orthogonal8();
    const auto pairs = test_e_pairs(model, {4});
    REQUIRE(pairs.size() == 7);
    for (const auto &[rho, eps] : pairs) {
        REQUIRE(rho >= eps);
        REQUIRE(eps >= 0.0);
    }

    ArrayModel degenerate = model;
    degenerate.grid_coupling = CxMatrix::Zero(8, 8);
    const auto unit_pairs = test_e_pairs(degenerate, {});
    REQUIRE(unit_pairs.size() == 8);
    for (const auto &[rho, eps] : unit_pairs) {
        REQUIRE(rho == Catch::Approx(1.0).margin(1e-10));
        REQUIRE(eps <= 1e-10);
    }

    // Active-set order must not matter.
    const auto p1 = test_e_pairs(model, {2, 5});
    const auto p2 = test_e_pairs(model, {5, 2});
    REQUIRE(p1.size() == p2.size());
    for (size_t i = 0; i < p1.size(); ++i) {
        REQUIRE(p1[i].first == Catch::Approx(p2[i].first).margin(1e-9));
        REQUIRE(p1[i].second == Catch::Approx(p2[i].second).margin(1e-9));
    }
}

TEST_CASE("test E cdf degenerate forms and threshold-level accuracy", "[stat_tests][slow]") {
    const std::vector<std::pair<double, double>> unit = {{1.0, 0.0}, {1.0, 0.0}};
    for (double eta : {0.5, 2.0})
        REQUIRE(cdf_e(eta, unit) == Catch::Approx(cdf_d(eta, {1.0, 1.0})).margin(1e-12));

    // rho = eps limit is the Erlang-2 cdf.
    const double rho = 1.7, eta = 2.3;
    const std::vector<std::pair<double, double>> near = {{rho, rho * (1.0 - 1e-10)}};
    const double erlang = 1.0 - std::exp(-eta / rho) * (1.0 + eta / rho);
    REQUIRE(cdf_e(eta, near) == Catch::Approx(erlang).margin(1e-7));

    // Threshold-level accuracy of the product form on the reference model.
    const ArrayModel model = orthogonal8();
    const std::vector<int> active = {4};
    const auto pairs = test_e_pairs(model, active);
    double lo = 0.0, hi = 4096.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (hi + lo);
        (cdf_e(mid, pairs) < 0.99 ? lo : hi) = mid;
    }
    const double thr = 0.5 * (hi + lo);

    CxMatrix pj = model.group_columns(4);
    const CxMatrix q =
        CxMatrix::Identity(8, 8) - pj * (pj.adjoint() * pj).inverse() * pj.adjoint();
    auto gen = kt::make_rng(223);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int draws = 200000;
    int exceed = 0;
    for (int t = 0; t < draws; ++t) {
        CxVector v(8);
        for (int d = 0; d < 8; ++d) v(d) = cxd(normal(gen), normal(gen)) / std::sqrt(2.0);
        const CxVector qv = q * v;
        double mx = 0.0;
        for (int g = 0; g < 8; ++g) {
            if (g == 4) continue;
            const CxMatrix pg = model.group_columns(g);
            mx = std::max(mx, (pg.adjoint() * qv).norm());
        }
        if (mx * mx > thr) ++exceed;
    }
    const double fa = static_cast<double>(exceed) / draws;
    REQUIRE(fa == Catch::Approx(0.01).margin(0.004));
}

TEST_CASE("event B bound behaviour", "[stat_tests]") {
    // S = 0 keeps only the Rayleigh-maximum factor.
    REQUIRE(event_b_bound(10.0, 3.0, 0, 8) ==
            Catch::Approx(std::pow(1.0 - std::exp(-4.5), 8)).margin(1e-12));
    // Large separation drives the bound to one.
    REQUIRE(event_b_bound(1e4, 40.0, 2, 8) == Catch::Approx(1.0).margin(1e-9));
    REQUIRE_THROWS_AS(event_b_bound(1.0, 2.0, 1, 8), invalid_config);
}

TEST_CASE("marcum Q1 against frozen reference values", "[stat_tests]") {
    // Computed independently with scipy.stats.ncx2.sf(b^2, 2, a^2).
    struct Ref {
        double a, b, q;
    };
    const Ref refs[] = {
        {0.0, 1.0, 0.60653065971263342},  {1.0, 1.0, 0.73287980379682027},
        {1.0, 2.0, 0.26901206003590999},  {2.0, 1.0, 0.91810769636940615},
        {3.0, 4.0, 0.19651218938840762},  {10.0, 12.0, 0.025329474297941492},
        {50.0, 49.0, 0.84377679816059459}, {5.0, 1.0, 0.99998720897638349},
    };
    for (const auto &r : refs)
        REQUIRE(marcum_q1(r.a, r.b) == Catch::Approx(r.q).margin(1e-11));
}

TEST_CASE("real orthogonal lasso density normalises", "[stat_tests]") {
    const double x = 0.8, tau = 0.5, sigma = 0.6;
    REQUIRE(lasso_pdf_real_orthogonal(0.3, x, 0.0, sigma) ==
            Catch::Approx(std::exp(-0.5 * 0.25 / 0.36) / (sigma * std::sqrt(2.0 * kPi)))
                .margin(1e-12));

    auto density = [&](double v) { return lasso_pdf_real_orthogonal(v, x, tau, sigma); };
    const double cont = integrate(density, -12.0, -1e-12, 1e-10, 1e-14) +
                        integrate(density, 1e-12, 12.0, 1e-10, 1e-14);
    const double total = cont + lasso_zero_mass_real(x, tau, sigma);
    REQUIRE(total == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("real orthogonal lasso density matches simulation", "[stat_tests][slow]") {
    const double x = 0.8, tau = 0.5, sigma = 0.6;
    auto gen = kt::make_rng(307);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int draws = 200000;
    std::vector<double> nonzero;
    int zeros = 0;
    for (int t = 0; t < draws; ++t) {
        const double c = x + sigma * normal(gen);
        const double est = (std::abs(c) <= tau) ? 0.0 : c - tau * (c > 0 ? 1.0 : -1.0);
        if (est == 0.0)
            ++zeros;
        else
            nonzero.push_back(est);
    }
    REQUIRE(static_cast<double>(zeros) / draws ==
            Catch::Approx(lasso_zero_mass_real(x, tau, sigma)).margin(0.01));
    std::sort(nonzero.begin(), nonzero.end());
    const double mass0 = lasso_zero_mass_real(x, tau, sigma);
    auto cdf = [&](double v) {
        double c = integrate([&](double u) { return lasso_pdf_real_orthogonal(u, x, tau, sigma); },
                             -12.0, std::min(v, -1e-12), 1e-9, 1e-14);
        if (v > 0.0)
            c += integrate([&](double u) { return lasso_pdf_real_orthogonal(u, x, tau, sigma); },
                           1e-12, v, 1e-9, 1e-14);
        return c / (1.0 - mass0);  // conditional on a nonzero estimate
    };
    REQUIRE(kt::ks_statistic_grid(nonzero, cdf, 600) < 0.012);
}

TEST_CASE("error-probability terms stay consistent with the density", "[stat_tests]") {
    const double x = 0.9, tau = 0.4, sigma = 0.5;
    const ErrorTerms terms = prob_error_real(x, tau, sigma);
    REQUIRE(terms.miss == Catch::Approx(lasso_zero_mass_real(x, tau, sigma)).margin(1e-14));
    REQUIRE(terms.false_alarm == Catch::Approx(2.0 * normal_cdf(-tau / sigma)).margin(1e-14));
}
