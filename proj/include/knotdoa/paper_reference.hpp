// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace knotdoa::reference {

/// Published detection rates: tables 1..7, sub-tables by source count.
struct TableCell {
    int table_id;
    int s;
    double snr_db;
    double pc;
    double pf;
};

/// Published P(B) curves (figures 1..3). The grid-matching figure carries two
/// four-source settings, distinguished by the offset fraction.
struct CurvePoint {
    int figure_id;
    int s;
    double offset_fraction;  // 0 for figures 1-2
    double snr_db;
    double pb;
};

/// Published RMSE markers of the grid-matching estimate (figure 4, S = 3).
struct RmsePoint {
    double snr_db;
    double rmse;
};

const std::vector<TableCell> &table_cells();
const std::vector<CurvePoint> &curve_points();
const std::vector<RmsePoint> &rmse_points();

std::optional<TableCell> find_table_cell(int table_id, int s, double snr_db);
std::optional<CurvePoint> find_curve_point(int figure_id, int s, double snr_db,
                                           double offset_fraction = 0.0);

/// The reference data as CSV (same rows as data/paper_reference.csv).
std::string reference_csv();

}  // namespace knotdoa::reference
