// Copyright 2026 The mmfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "mmfl/core.hpp"
#include "mmfl/experiment.hpp"

namespace mmfl {

// Instance files: {"B": 1.0, "delta": 0.2, "agents": [{"a": 0.1, "b": 0.3}]}.
// Malformed input of any kind surfaces as ValidationError.

Instance parse_instance_json(const std::string& text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& instance);

// Config files:
//   {"seed": 7, "trials": 50, "n_values": [3, 5], "B": 1.0,
//    "delta_values": [0.2], "objective": "avg",
//    "mechanisms": ["equispaced-median"], "oracle_step": 0.01}
// oracle_step is optional.

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace mmfl
