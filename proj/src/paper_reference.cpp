// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

// Reference detection rates and P(B)/RMSE curves used for regression diffs.
// Generated together with data/paper_reference.csv; a unit test keeps the two
// in sync.

#include "knotdoa/paper_reference.hpp"

#include <cstdio>
#include <sstream>

namespace knotdoa::reference {

namespace {
const std::vector<TableCell> kTables = {
    {1, 1, 5, 0.2131, 0.0179},
    {1, 1, 10, 0.8220, 0.0290},
    {1, 1, 15, 0.9683, 0.0317},
    {1, 1, 20, 0.9693, 0.0307},
    {1, 1, 25, 0.9694, 0.0306},
    {1, 1, 30, 0.9693, 0.0307},
    {1, 1, 35, 0.9701, 0.0299},
    {1, 1, 40, 0.9696, 0.0304},
    {1, 1, 45, 0.9695, 0.0305},
    {1, 1, 50, 0.9695, 0.0305},
    {1, 2, 5, 0.2131, 0.0179},
    {1, 2, 10, 0.8220, 0.0290},
    {1, 2, 15, 0.9683, 0.0317},
    {1, 2, 20, 0.9693, 0.0307},
    {1, 2, 25, 0.9694, 0.0306},
    {1, 2, 30, 0.9693, 0.0307},
    {1, 2, 35, 0.9701, 0.0299},
    {1, 2, 40, 0.9696, 0.0304},
    {1, 2, 45, 0.9695, 0.0305},
    {1, 2, 50, 0.9695, 0.0305},
    {1, 3, 5, 0.0003, 0.0158},
    {1, 3, 10, 0.0309, 0.0815},
    {1, 3, 15, 0.6992, 0.1759},
    {1, 3, 20, 0.9658, 0.0342},
    {1, 3, 25, 0.9656, 0.0344},
    {1, 3, 30, 0.9663, 0.0337},
    {1, 3, 35, 0.9659, 0.0340},
    {1, 3, 40, 0.9658, 0.0342},
    {1, 3, 45, 0.9658, 0.0342},
    {1, 3, 50, 0.9660, 0.0340},
    {1, 4, 5, 0.0000, 0.0077},
    {1, 4, 10, 0.0042, 0.0041},
    {1, 4, 15, 0.3821, 0.0233},
    {1, 4, 20, 0.9616, 0.0379},
    {1, 4, 25, 0.9631, 0.0369},
    {1, 4, 30, 0.9624, 0.0376},
    {1, 4, 35, 0.9632, 0.0368},
    {1, 4, 40, 0.9620, 0.0380},
    {1, 4, 45, 0.9620, 0.0380},
    {1, 4, 50, 0.9621, 0.0379},
    {2, 1, 5, 0.1382, 0.0046},
    {2, 1, 10, 0.7557, 0.0085},
    {2, 1, 15, 0.9903, 0.0097},
    {2, 1, 20, 0.9907, 0.0093},
    {2, 1, 25, 0.9902, 0.0098},
    {2, 1, 30, 0.9907, 0.0093},
    {2, 1, 35, 0.9902, 0.0098},
    {2, 1, 40, 0.9901, 0.0099},
    {2, 1, 45, 0.9906, 0.0094},
    {2, 1, 50, 0.9901, 0.0099},
    {2, 2, 5, 0.0022, 0.0026},
    {2, 2, 10, 0.1164, 0.0025},
    {2, 2, 15, 0.9233, 0.0089},
    {2, 2, 20, 0.9909, 0.0091},
    {2, 2, 25, 0.9906, 0.0094},
    {2, 2, 30, 0.9902, 0.0098},
    {2, 2, 35, 0.9904, 0.0096},
    {2, 2, 40, 0.9911, 0.0089},
    {2, 2, 45, 0.9907, 0.0093},
    {2, 2, 50, 0.9908, 0.0092},
    {2, 3, 5, 0.0000, 0.0028},
    {2, 3, 10, 0.0089, 0.0012},
    {2, 3, 15, 0.5525, 0.0074},
    {2, 3, 20, 0.9899, 0.0100},
    {2, 3, 25, 0.9898, 0.0103},
    {2, 3, 30, 0.9900, 0.0100},
    {2, 3, 35, 0.9902, 0.0098},
    {2, 3, 40, 0.9902, 0.0098},
    {2, 3, 45, 0.9905, 0.0095},
    {2, 3, 50, 0.9904, 0.0096},
    {2, 4, 5, 0.0000, 0.0022},
    {2, 4, 10, 0.0000, 0.0000},
    {2, 4, 15, 0.2118, 0.0043},
    {2, 4, 20, 0.9868, 0.0107},
    {2, 4, 25, 0.9891, 0.0109},
    {2, 4, 30, 0.9890, 0.0110},
    {2, 4, 35, 0.9897, 0.0103},
    {2, 4, 40, 0.9892, 0.0108},
    {2, 4, 45, 0.9891, 0.0109},
    {2, 4, 50, 0.9898, 0.0102},
    {3, 1, 5, 0.1629, 0.0092},
    {3, 1, 10, 0.8168, 0.0097},
    {3, 1, 15, 0.9901, 0.0099},
    {3, 1, 20, 0.9906, 0.0094},
    {3, 1, 25, 0.9903, 0.0097},
    {3, 1, 30, 0.9897, 0.0103},
    {3, 1, 35, 0.9903, 0.0097},
    {3, 1, 40, 0.9898, 0.0102},
    {3, 1, 45, 0.9901, 0.0098},
    {3, 1, 50, 0.9903, 0.0097},
    {3, 2, 5, 0.0025, 0.0074},
    {3, 2, 10, 0.1424, 0.0065},
    {3, 2, 15, 0.9564, 0.0097},
    {3, 2, 20, 0.9896, 0.0104},
    {3, 2, 25, 0.9902, 0.0098},
    {3, 2, 30, 0.9905, 0.0095},
    {3, 2, 35, 0.9905, 0.0095},
    {3, 2, 40, 0.9901, 0.0099},
    {3, 2, 45, 0.9904, 0.0096},
    {3, 2, 50, 0.9895, 0.0106},
    {3, 3, 5, 0.0000, 0.0061},
    {3, 3, 10, 0.0083, 0.0068},
    {3, 3, 15, 0.6575, 0.0097},
    {3, 3, 20, 0.9896, 0.0104},
    {3, 3, 25, 0.9904, 0.0096},
    {3, 3, 30, 0.9895, 0.0105},
    {3, 3, 35, 0.9897, 0.0103},
    {3, 3, 40, 0.9908, 0.0092},
    {3, 3, 45, 0.9902, 0.0098},
    {3, 3, 50, 0.9896, 0.0104},
    {3, 4, 5, 0.0000, 0.0051},
    {3, 4, 10, 0.0000, 0.0053},
    {3, 4, 15, 0.2669, 0.0075},
    {3, 4, 20, 0.9892, 0.0101},
    {3, 4, 25, 0.9900, 0.0100},
    {3, 4, 30, 0.9896, 0.0104},
    {3, 4, 35, 0.9895, 0.0105},
    {3, 4, 40, 0.9901, 0.0098},
    {3, 4, 45, 0.9905, 0.0095},
    {3, 4, 50, 0.9896, 0.0104},
    {4, 1, 5, 0.1475, 0.0050},
    {4, 1, 10, 0.7775, 0.0089},
    {4, 1, 15, 0.9900, 0.0100},
    {4, 1, 20, 0.9896, 0.0104},
    {4, 1, 25, 0.9902, 0.0098},
    {4, 1, 30, 0.9897, 0.0103},
    {4, 1, 35, 0.9901, 0.0099},
    {4, 1, 40, 0.9900, 0.0100},
    {4, 1, 45, 0.9900, 0.0100},
    {4, 1, 50, 0.9901, 0.0099},
    {4, 2, 5, 0.0027, 0.0039},
    {4, 2, 10, 0.1249, 0.0030},
    {4, 2, 15, 0.9364, 0.0094},
    {4, 2, 20, 0.9904, 0.0094},
    {4, 2, 25, 0.9899, 0.0101},
    {4, 2, 30, 0.9899, 0.0101},
    {4, 2, 35, 0.9898, 0.0102},
    {4, 2, 40, 0.9902, 0.0098},
    {4, 2, 45, 0.9900, 0.0100},
    {4, 2, 50, 0.9901, 0.0099},
    {4, 3, 5, 0.0000, 0.0033},
    {4, 3, 10, 0.0083, 0.0014},
    {4, 3, 15, 0.5975, 0.0074},
    {4, 3, 20, 0.9900, 0.0100},
    {4, 3, 25, 0.9900, 0.0100},
    {4, 3, 30, 0.9897, 0.0103},
    {4, 3, 35, 0.9901, 0.0099},
    {4, 3, 40, 0.9901, 0.0098},
    {4, 3, 45, 0.9897, 0.0103},
    {4, 3, 50, 0.9895, 0.0105},
    {4, 4, 5, 0.0000, 0.0000},
    {4, 4, 10, 0.0000, 0.0000},
    {4, 4, 15, 0.0707, 0.0002},
    {4, 4, 20, 0.9905, 0.0016},
    {4, 4, 25, 0.9900, 0.0100},
    {4, 4, 30, 0.9897, 0.0103},
    {4, 4, 35, 0.9901, 0.0099},
    {4, 4, 40, 0.9901, 0.0098},
    {4, 4, 45, 0.9897, 0.0103},
    {4, 4, 50, 0.9895, 0.0105},
    {5, 1, 5, 0.0254, 0.0103},
    {5, 1, 10, 0.1345, 0.0098},
    {5, 1, 15, 0.5467, 0.0100},
    {5, 1, 20, 0.9653, 0.0110},
    {5, 1, 25, 0.9896, 0.0104},
    {5, 1, 30, 0.9897, 0.0103},
    {5, 1, 35, 0.9901, 0.0099},
    {5, 1, 40, 0.9899, 0.0101},
    {5, 1, 45, 0.9905, 0.0095},
    {5, 1, 50, 0.9896, 0.0104},
    {5, 2, 5, 0.0024, 0.0075},
    {5, 2, 10, 0.0212, 0.0071},
    {5, 2, 15, 0.1660, 0.0071},
    {5, 2, 20, 0.6900, 0.0084},
    {5, 2, 25, 0.9886, 0.0078},
    {5, 2, 30, 0.9920, 0.0080},
    {5, 2, 35, 0.9928, 0.0072},
    {5, 2, 40, 0.9923, 0.0077},
    {5, 2, 45, 0.9920, 0.0080},
    {5, 2, 50, 0.9926, 0.0074},
    {5, 3, 5, 0.0000, 0.0196},
    {5, 3, 10, 0.0085, 0.0299},
    {5, 3, 15, 0.0956, 0.0873},
    {5, 3, 20, 0.5469, 0.1236},
    {5, 3, 25, 0.9754, 0.0176},
    {5, 3, 30, 0.9900, 0.0100},
    {5, 3, 35, 0.9897, 0.0103},
    {5, 3, 40, 0.9898, 0.0102},
    {5, 3, 45, 0.9899, 0.0101},
    {5, 3, 50, 0.9900, 0.0100},
    {5, 4, 5, 0.0000, 0.0248},
    {5, 4, 10, 0.0039, 0.0120},
    {5, 4, 15, 0.0544, 0.0092},
    {5, 4, 20, 0.4096, 0.0096},
    {5, 4, 25, 0.9503, 0.0092},
    {5, 4, 30, 0.9908, 0.0092},
    {5, 4, 35, 0.9907, 0.0094},
    {5, 4, 40, 0.9911, 0.0089},
    {5, 4, 45, 0.9909, 0.0091},
    {5, 4, 50, 0.9906, 0.0094},
    {6, 1, 5, 0.1337, 0.0388},
    {6, 1, 10, 0.7653, 0.0502},
    {6, 1, 15, 0.9893, 0.0107},
    {6, 1, 20, 0.9894, 0.0106},
    {6, 1, 25, 0.9903, 0.0097},
    {6, 1, 30, 0.9900, 0.0100},
    {6, 1, 35, 0.9900, 0.0100},
    {6, 1, 40, 0.9898, 0.0102},
    {6, 1, 45, 0.9902, 0.0098},
    {6, 1, 50, 0.9901, 0.0099},
    {6, 2, 5, 0.0000, 0.0473},
    {6, 2, 10, 0.0709, 0.1228},
    {6, 2, 15, 0.8419, 0.0629},
    {6, 2, 20, 0.9885, 0.0114},
    {6, 2, 25, 0.9898, 0.0102},
    {6, 2, 30, 0.9899, 0.0101},
    {6, 2, 35, 0.9901, 0.0099},
    {6, 2, 40, 0.9899, 0.0101},
    {6, 2, 45, 0.9893, 0.0107},
    {6, 2, 50, 0.9901, 0.0099},
    {6, 3, 5, 0.0000, 0.0612},
    {6, 3, 10, 0.0024, 0.2130},
    {6, 3, 15, 0.3574, 0.5186},
    {6, 3, 20, 0.9435, 0.0523},
    {6, 3, 25, 0.9893, 0.0107},
    {6, 3, 30, 0.9901, 0.0099},
    {6, 3, 35, 0.9895, 0.0105},
    {6, 3, 40, 0.9899, 0.0101},
    {6, 3, 45, 0.9893, 0.0107},
    {6, 3, 50, 0.9899, 0.0101},
    {6, 4, 5, 0.0000, 0.0828},
    {6, 4, 10, 0.0000, 0.2317},
    {6, 4, 15, 0.0602, 0.5768},
    {6, 4, 20, 0.6308, 0.3680},
    {6, 4, 25, 0.8715, 0.1285},
    {6, 4, 30, 0.9701, 0.0299},
    {6, 4, 35, 0.9903, 0.0097},
    {6, 4, 40, 0.9906, 0.0094},
    {6, 4, 45, 0.9904, 0.0096},
    {6, 4, 50, 0.9908, 0.0092},
    {7, 1, 5, 0.0000, 0.0000},
    {7, 1, 10, 0.0112, 0.0105},
    {7, 1, 15, 0.4334, 0.3841},
    {7, 1, 20, 0.8773, 0.0980},
    {7, 1, 25, 0.9902, 0.0098},
    {7, 1, 30, 0.9890, 0.0101},
    {7, 1, 35, 0.9905, 0.0095},
    {7, 1, 40, 0.9900, 0.0100},
    {7, 1, 45, 0.9907, 0.0093},
    {7, 1, 50, 0.9908, 0.0092},
    {7, 2, 5, 0.0000, 0.0012},
    {7, 2, 10, 0.0000, 0.0340},
    {7, 2, 15, 0.1365, 0.4188},
    {7, 2, 20, 0.6156, 0.3751},
    {7, 2, 25, 0.7706, 0.2294},
    {7, 2, 30, 0.8634, 0.1366},
    {7, 2, 35, 0.9626, 0.0374},
    {7, 2, 40, 0.9900, 0.0100},
    {7, 2, 45, 0.9899, 0.0101},
    {7, 2, 50, 0.9903, 0.0097},
    {7, 3, 5, 0.0000, 0.0085},
    {7, 3, 10, 0.0000, 0.1071},
    {7, 3, 15, 0.0694, 0.5859},
    {7, 3, 20, 0.5222, 0.4733},
    {7, 3, 25, 0.7118, 0.2878},
    {7, 3, 30, 0.8711, 0.1289},
    {7, 3, 35, 0.9691, 0.0309},
    {7, 3, 40, 0.9898, 0.0102},
    {7, 3, 45, 0.9902, 0.0098},
    {7, 3, 50, 0.9898, 0.0102},
};

const std::vector<CurvePoint> kCurves = {
    {1, 1, 0.00, 5, 0.6778},
    {1, 1, 0.00, 10, 0.9824},
    {1, 1, 0.00, 15, 1.0000},
    {1, 1, 0.00, 20, 1.0000},
    {1, 1, 0.00, 25, 1.0000},
    {1, 1, 0.00, 30, 1.0000},
    {1, 1, 0.00, 35, 1.0000},
    {1, 1, 0.00, 40, 1.0000},
    {1, 1, 0.00, 45, 1.0000},
    {1, 1, 0.00, 50, 1.0000},
    {1, 2, 0.00, 5, 0.2621},
    {1, 2, 0.00, 10, 0.7496},
    {1, 2, 0.00, 15, 0.9979},
    {1, 2, 0.00, 20, 1.0000},
    {1, 2, 0.00, 25, 1.0000},
    {1, 2, 0.00, 30, 1.0000},
    {1, 2, 0.00, 35, 1.0000},
    {1, 2, 0.00, 40, 1.0000},
    {1, 2, 0.00, 45, 1.0000},
    {1, 2, 0.00, 50, 1.0000},
    {1, 3, 0.00, 5, 0.1104},
    {1, 3, 0.00, 10, 0.4705},
    {1, 3, 0.00, 15, 0.9701},
    {1, 3, 0.00, 20, 1.0000},
    {1, 3, 0.00, 25, 1.0000},
    {1, 3, 0.00, 30, 1.0000},
    {1, 3, 0.00, 35, 1.0000},
    {1, 3, 0.00, 40, 1.0000},
    {1, 3, 0.00, 45, 1.0000},
    {1, 3, 0.00, 50, 1.0000},
    {1, 4, 0.00, 5, 0.0644},
    {1, 4, 0.00, 10, 0.3042},
    {1, 4, 0.00, 15, 0.8964},
    {1, 4, 0.00, 20, 1.0000},
    {1, 4, 0.00, 25, 1.0000},
    {1, 4, 0.00, 30, 1.0000},
    {1, 4, 0.00, 35, 1.0000},
    {1, 4, 0.00, 40, 1.0000},
    {1, 4, 0.00, 45, 1.0000},
    {1, 4, 0.00, 50, 1.0000},
    {2, 1, 0.00, 5, 0.4958},
    {2, 1, 0.00, 10, 0.9126},
    {2, 1, 0.00, 15, 0.9991},
    {2, 1, 0.00, 20, 1.0000},
    {2, 1, 0.00, 25, 1.0000},
    {2, 1, 0.00, 30, 1.0000},
    {2, 1, 0.00, 35, 1.0000},
    {2, 1, 0.00, 40, 1.0000},
    {2, 1, 0.00, 45, 1.0000},
    {2, 1, 0.00, 50, 1.0000},
    {2, 2, 0.00, 5, 0.0856},
    {2, 2, 0.00, 10, 0.3982},
    {2, 2, 0.00, 15, 0.8935},
    {2, 2, 0.00, 20, 0.9987},
    {2, 2, 0.00, 25, 1.0000},
    {2, 2, 0.00, 30, 1.0000},
    {2, 2, 0.00, 35, 1.0000},
    {2, 2, 0.00, 40, 1.0000},
    {2, 2, 0.00, 45, 1.0000},
    {2, 2, 0.00, 50, 1.0000},
    {2, 3, 0.00, 5, 0.0184},
    {2, 3, 0.00, 10, 0.1244},
    {2, 3, 0.00, 15, 0.5809},
    {2, 3, 0.00, 20, 0.9517},
    {2, 3, 0.00, 25, 0.9996},
    {2, 3, 0.00, 30, 1.0000},
    {2, 3, 0.00, 35, 1.0000},
    {2, 3, 0.00, 40, 1.0000},
    {2, 3, 0.00, 45, 1.0000},
    {2, 3, 0.00, 50, 1.0000},
    {2, 4, 0.00, 5, 0.0057},
    {2, 4, 0.00, 10, 0.0352},
    {2, 4, 0.00, 15, 0.2359},
    {2, 4, 0.00, 20, 0.6371},
    {2, 4, 0.00, 25, 0.8782},
    {2, 4, 0.00, 30, 0.9784},
    {2, 4, 0.00, 35, 0.9997},
    {2, 4, 0.00, 40, 1.0000},
    {2, 4, 0.00, 45, 1.0000},
    {2, 4, 0.00, 50, 1.0000},
    {3, 1, 0.24, 5, 0.5357},
    {3, 1, 0.24, 10, 0.8957},
    {3, 1, 0.24, 15, 0.9974},
    {3, 1, 0.24, 20, 1.0000},
    {3, 1, 0.24, 25, 1.0000},
    {3, 1, 0.24, 30, 1.0000},
    {3, 1, 0.24, 35, 1.0000},
    {3, 1, 0.24, 40, 1.0000},
    {3, 1, 0.24, 45, 1.0000},
    {3, 1, 0.24, 50, 1.0000},
    {3, 2, 0.24, 5, 0.0357},
    {3, 2, 0.24, 10, 0.1326},
    {3, 2, 0.24, 15, 0.3814},
    {3, 2, 0.24, 20, 0.6355},
    {3, 2, 0.24, 25, 0.7756},
    {3, 2, 0.24, 30, 0.8623},
    {3, 2, 0.24, 35, 0.9617},
    {3, 2, 0.24, 40, 0.9989},
    {3, 2, 0.24, 45, 1.0000},
    {3, 2, 0.24, 50, 1.0000},
    {3, 3, 0.24, 5, 0.0222},
    {3, 3, 0.24, 10, 0.0886},
    {3, 3, 0.24, 15, 0.3021},
    {3, 3, 0.24, 20, 0.5534},
    {3, 3, 0.24, 25, 0.7173},
    {3, 3, 0.24, 30, 0.8644},
    {3, 3, 0.24, 35, 0.9706},
    {3, 3, 0.24, 40, 0.9995},
    {3, 3, 0.24, 45, 1.0000},
    {3, 3, 0.24, 50, 1.0000},
    {3, 4, 0.10, 5, 0.0380},
    {3, 4, 0.10, 10, 0.1351},
    {3, 4, 0.10, 15, 0.4159},
    {3, 4, 0.10, 20, 0.6777},
    {3, 4, 0.10, 25, 0.7742},
    {3, 4, 0.10, 30, 0.8687},
    {3, 4, 0.10, 35, 0.9747},
    {3, 4, 0.10, 40, 0.9999},
    {3, 4, 0.10, 45, 1.0000},
    {3, 4, 0.10, 50, 1.0000},
    {3, 4, 0.24, 5, 0.0000},
    {3, 4, 0.24, 10, 0.0001},
    {3, 4, 0.24, 15, 0.0011},
    {3, 4, 0.24, 20, 0.0011},
    {3, 4, 0.24, 25, 0.0000},
    {3, 4, 0.24, 30, 0.0000},
    {3, 4, 0.24, 35, 0.0000},
    {3, 4, 0.24, 40, 0.0000},
    {3, 4, 0.24, 45, 0.0000},
    {3, 4, 0.24, 50, 0.0000},
};

const std::vector<RmsePoint> kRmse = {
    {30, 0.0274},
    {35, 0.0234},
    {40, 0.0198},
    {45, 0.0178},
    {50, 0.0165},
};

}  // namespace

const std::vector<TableCell> &table_cells() { return kTables; }
const std::vector<CurvePoint> &curve_points() { return kCurves; }
const std::vector<RmsePoint> &rmse_points() { return kRmse; }

std::optional<TableCell> find_table_cell(int table_id, int s, double snr_db) {
    for (const auto &c : kTables)
        if (c.table_id == table_id && c.s == s && c.snr_db == snr_db) return c;
    return std::nullopt;
}

std::optional<CurvePoint> find_curve_point(int figure_id, int s, double snr_db,
                                           double offset_fraction) {
    for (const auto &p : kCurves)
        if (p.figure_id == figure_id && p.s == s && p.snr_db == snr_db &&
            (figure_id != 3 || p.offset_fraction == offset_fraction))
            return p;
    return std::nullopt;
}

std::string reference_csv() {
    std::ostringstream os;
    os << "kind,id,s,offset_fraction,snr_db,pc,pf,pb,rmse\n";
    char line[160];
    for (const auto &c : kTables) {
        std::snprintf(line, sizeof line, "table,%d,%d,,%g,%.4f,%.4f,,\n", c.table_id, c.s,
                      c.snr_db, c.pc, c.pf);
        os << line;
    }
    for (const auto &p : kCurves) {
        std::snprintf(line, sizeof line, "figure,%d,%d,%.2f,%g,,,%.4f,\n", p.figure_id, p.s,
                      p.offset_fraction, p.snr_db, p.pb);
        os << line;
    }
    for (const auto &r : kRmse) {
        std::snprintf(line, sizeof line, "rmse,4,3,0.24,%g,,,,%.4f\n", r.snr_db, r.rmse);
        os << line;
    }
    return os.str();
}

}  // namespace knotdoa::reference
