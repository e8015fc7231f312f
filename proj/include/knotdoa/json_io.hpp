// SPDX-License-Identifier: Apache-2.0
//
// knotdoa — single-snapshot DoA detection on lasso / group-lasso knot paths
// Copyright (C) 2026 knotdoa contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "knotdoa/montecarlo.hpp"

#include <json.hpp>

namespace knotdoa {

// JSON conventions: angles in radians, complex numbers as [re, im] pairs,
// field names as documented in the README.

nlohmann::json to_json(const ArrayConfig &cfg);
ArrayConfig array_config_from_json(const nlohmann::json &j);

/// Model files carry the array fields plus "mode": "orthogonal" | "oversampled".
nlohmann::json model_to_json(const ArrayConfig &cfg, GridMode mode);
std::pair<ArrayConfig, GridMode> model_from_json(const nlohmann::json &j);

nlohmann::json to_json(const Scenario &scen);
Scenario scenario_from_json(const nlohmann::json &j);

nlohmann::json to_json(const Snapshot &snap);
Snapshot snapshot_from_json(const nlohmann::json &j);

nlohmann::json to_json(const DetectionResult &res, const ArrayModel &model);

nlohmann::json to_json(const ExperimentConfig &cfg);
ExperimentConfig experiment_from_json(const nlohmann::json &j);

nlohmann::json summary_json(const McReport &report);

}  // namespace knotdoa
