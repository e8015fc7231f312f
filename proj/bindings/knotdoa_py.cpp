// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "knotdoa/json_io.hpp"
#include "knotdoa/paper_reference.hpp"
#include "knotdoa/special_functions.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace knotdoa;

namespace {

GridMode mode_from(const std::string &s) {
    if (s == "orthogonal") return GridMode::orthogonal;
    if (s == "oversampled") return GridMode::oversampled;
    throw invalid_config("mode must be 'orthogonal' or 'oversampled'");
}

py::dict result_to_dict(const DetectionResult &res) {
    py::dict d;
    d["s_hat"] = res.s_hat;
    d["tau_hat"] = res.tau_hat;
    d["support"] = res.support;
    d["angles"] = res.angles;
    d["offsets"] = res.offsets;
    d["offset_defined"] = res.offset_defined;
    d["amplitudes"] = res.amplitudes;
    d["test"] = test_name(res.test_used);
    d["entry_order"] = res.entry_order;
    py::list trace;
    for (const auto &t : res.trace) {
        py::dict e;
        e["knot"] = t.knot_index;
        e["tau"] = t.tau;
        e["statistic"] = t.statistic;
        e["threshold"] = t.threshold;
        e["exceeded"] = t.exceeded;
        trace.append(e);
    }
    d["trace"] = trace;
    return d;
}

py::dict row_to_dict(const McRow &r) {
    py::dict d;
    d["test"] = r.test;
    d["s"] = r.s;
    d["snr_db"] = r.snr_db;
    d["pc_hat"] = r.pc_hat;
    d["pf_hat"] = r.pf_hat;
    d["pm_hat"] = r.pm_hat;
    d["pb_hat"] = r.pb_hat;
    d["rmse"] = r.rmse;
    d["trials"] = r.trials;
    d["ci_halfwidth"] = r.ci_halfwidth;
    d["solver_failures"] = r.solver_failures;
    return d;
}

}  // namespace

PYBIND11_MODULE(_knotdoa, m) {
    m.doc() = "knot-path detection, estimation and grid matching for single-snapshot DoA";
    m.attr("__version__") = KNOTDOA_VERSION_STRING;

    py::register_exception<invalid_config>(m, "InvalidConfig", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<solver_failure>(m, "SolverFailure", PyExc_RuntimeError);
    py::register_exception<estimation_error>(m, "EstimationError", PyExc_RuntimeError);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init([](int m_, int n_, double spacing, std::pair<double, double> interval) {
                 ArrayConfig cfg;
                 cfg.num_elements = m_;
                 cfg.num_grid = n_;
                 cfg.spacing = spacing;
                 cfg.angle_lo = interval.first;
                 cfg.angle_hi = interval.second;
                 cfg.validate();
                 return cfg;
             }),
             py::arg("num_elements") = 8, py::arg("num_grid") = 8, py::arg("spacing") = 0.5,
             py::arg("angle_interval") = std::pair<double, double>(-kPi / 2, kPi / 2))
        .def_readonly("num_elements", &ArrayConfig::num_elements)
        .def_readonly("num_grid", &ArrayConfig::num_grid)
        .def_readonly("spacing", &ArrayConfig::spacing);

    py::class_<ArrayModel>(m, "ArrayModel")
        .def_property_readonly("steering", [](const ArrayModel &mo) { return mo.steering; })
        .def_property_readonly("steering_deriv",
                               [](const ArrayModel &mo) { return mo.steering_deriv; })
        .def_property_readonly("grid", [](const ArrayModel &mo) { return mo.grid; })
        .def_property_readonly("grid_coupling",
                               [](const ArrayModel &mo) { return mo.grid_coupling; })
        .def_property_readonly("orthogonal", &ArrayModel::orthogonal)
        .def("steering_at", &ArrayModel::steering_at, py::arg("angle"))
        .def("bin_width", &ArrayModel::bin_width, py::arg("k"));

    m.def(
        "build_array_model",
        [](const ArrayConfig &cfg, const std::string &mode) {
            return build_array_model(cfg, mode_from(mode));
        },
        py::arg("config"), py::arg("mode") = "orthogonal");

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::vector<int> indices, std::vector<double> offsets, CxVector weights,
                         double snr_db) {
                 Scenario s;
                 s.source_indices = std::move(indices);
                 s.offsets = std::move(offsets);
                 s.weights = std::move(weights);
                 s.snr_db = snr_db;
                 return s;
             }),
             py::arg("source_indices"), py::arg("offsets"), py::arg("weights"),
             py::arg("snr_db"))
        .def_readonly("source_indices", &Scenario::source_indices)
        .def_readonly("offsets", &Scenario::offsets)
        .def_readonly("snr_db", &Scenario::snr_db)
        .def("noise_variance", &Scenario::noise_variance);

    m.def(
        "synthesize",
        [](const ArrayModel &model, const Scenario &scen, std::uint64_t seed) {
            const Snapshot snap = synthesize(model, scen, seed);
            return py::make_tuple(snap.b, snap.b_bar);
        },
        py::arg("model"), py::arg("scenario"), py::arg("seed"),
        "Returns (b, b_bar); b_bar is empty unless the model is orthogonal.");
    m.def("taylor_residual", &taylor_residual, py::arg("model"), py::arg("scenario"));

    m.def(
        "orthogonal_knots",
        [](const ArrayModel &model, const CxVector &b) {
            const KnotPath path = orthogonal_knots(model, b);
            std::vector<double> taus;
            std::vector<int> order;
            for (const auto &k : path.knots) {
                taus.push_back(k.tau);
                order.push_back(k.index);
            }
            return py::make_tuple(taus, order);
        },
        py::arg("model"), py::arg("b"), "Returns (taus, entering_indices).");
    m.def(
        "general_knots",
        [](const ArrayModel &model, const CxVector &b, int max_knots) {
            const KnotPath path = general_knots(model, b, max_knots);
            py::list knots;
            for (const auto &k : path.knots) {
                py::dict d;
                d["tau"] = k.tau;
                d["index"] = k.index;
                d["removal"] = k.removal;
                d["active_set"] = k.active_set;
                knots.append(d);
            }
            return knots;
        },
        py::arg("model"), py::arg("b"), py::arg("max_knots"));
    m.def(
        "group_knots",
        [](const ArrayModel &model, const CxVector &b_bar, int max_knots) {
            py::list out;
            for (const auto &k : group_knots(model, b_bar, max_knots)) {
                py::dict d;
                d["tau"] = k.tau;
                d["group"] = k.group;
                d["removal"] = k.removal;
                d["active_groups"] = k.active_groups;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("b_bar"), py::arg("max_knots"));
    m.def("lasso_solve_at",
          [](const ArrayModel &model, const CxVector &b, double tau) {
              return lasso_solve_at(model, b, tau);
          },
          py::arg("model"), py::arg("b"), py::arg("tau"));
    m.def("group_solve_at",
          [](const ArrayModel &model, const CxVector &b_bar, double tau) {
              return group_solve_at(model, b_bar, tau);
          },
          py::arg("model"), py::arg("b_bar"), py::arg("tau"));

    // Null CDFs and statistics.
    m.def("cdf_cov_exact", &cdf_cov_exact, py::arg("eta"), py::arg("n"));
    m.def("cdf_cov_asymptotic", &cdf_cov_asymptotic, py::arg("eta"), py::arg("l") = 1);
    m.def("cdf_a", &cdf_a, py::arg("eta"), py::arg("n"));
    m.def("cdf_b", &cdf_b, py::arg("eta"));
    m.def("cdf_c", &cdf_c, py::arg("eta"), py::arg("l"));
    m.def("cdf_d", &cdf_d, py::arg("eta"), py::arg("scales"));
    m.def("cdf_e", &cdf_e, py::arg("eta"), py::arg("pairs"));
    m.def("test_d_scales", &test_d_scales, py::arg("model"), py::arg("active"));
    m.def("test_e_pairs", &test_e_pairs, py::arg("model"), py::arg("active_groups"));
    m.def("marcum_q1", &marcum_q1, py::arg("a"), py::arg("b"));
    m.def("event_b_bound", &event_b_bound, py::arg("theta_over_sigma"),
          py::arg("eps_over_sigma"), py::arg("s"), py::arg("m"));
    m.def(
        "invert_cdf",
        [](const std::function<double(double)> &cdf, double pc) { return invert_cdf(cdf, pc); },
        py::arg("cdf"), py::arg("pc"));

    // Detection.
    m.def(
        "detect",
        [](const ArrayModel &model, const CxVector &b, const std::string &test, double pc,
           std::optional<double> sigma2, bool refit) {
            const TestKind kind = test_from_name(test);
            DetectorOptions opts;
            opts.refit = refit;
            DetectionResult res;
            if (kind == TestKind::test_d)
                res = detect_general(model, b, pc, sigma2.value_or(0.0), opts);
            else if (kind == TestKind::test_e)
                res = detect_grid_matching(model, b, pc, sigma2.value_or(0.0), opts);
            else
                res = detect_orthogonal(model, b, kind, pc, sigma2, opts);
            return result_to_dict(res);
        },
        py::arg("model"), py::arg("b"), py::arg("test") = "B", py::arg("pc") = 0.99,
        py::arg("sigma2") = std::nullopt, py::arg("refit") = false);

    // Monte-Carlo harness.
    m.def(
        "run_experiment",
        [](const std::string &config_json) {
            const ExperimentConfig cfg = experiment_from_json(nlohmann::json::parse(config_json));
            const McReport rep = run_experiment(cfg);
            py::list rows;
            for (const auto &r : rep.rows) rows.append(row_to_dict(r));
            return rows;
        },
        py::arg("config_json"), "Runs an experiment from its JSON description.");
    m.def(
        "reproduce_table",
        [](int table_id, int trials, std::uint64_t seed) {
            const TableReport rep = reproduce_tables(table_id, trials, seed);
            py::list rows;
            for (const auto &r : rep.rows) {
                py::dict d = row_to_dict(r.measured);
                d["paper_pc"] = r.paper_pc;
                d["paper_pf"] = r.paper_pf;
                rows.append(d);
            }
            return rows;
        },
        py::arg("table_id"), py::arg("trials") = 10000, py::arg("seed") = 0x5eed);
}
