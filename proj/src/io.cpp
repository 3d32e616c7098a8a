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

#include "mmfl/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mmfl {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ValidationError(what + " must be a number");
  return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ValidationError(what + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance parse_instance_json(const std::string& text) {
  const json doc = parse_json(text);
  const double B = number(require(doc, "B"), "B");
  const double delta = number(require(doc, "delta"), "delta");
  const json& agents = require(doc, "agents");
  if (!agents.is_array()) throw ValidationError("'agents' must be an array");
  std::vector<Interval> intervals;
  intervals.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    try {
      const json& a = agents[i];
      intervals.push_back({number(require(a, "a"), "a"),
                           number(require(a, "b"), "b")});
    } catch (const ValidationError& e) {
      throw ValidationError("agent " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  return validate_instance(intervals, B, delta);
}

Instance load_instance(const std::string& path) {
  return parse_instance_json(read_file(path));
}

std::string instance_to_json(const Instance& instance) {
  json agents = json::array();
  for (const auto& iv : instance.agents()) {
    agents.push_back({{"a", iv.a}, {"b", iv.b}});
  }
  const json doc = {{"B", instance.B()},
                    {"delta", instance.delta()},
                    {"agents", agents}};
  return doc.dump(2);
}

ExperimentConfig parse_config_json(const std::string& text) {
  const json doc = parse_json(text);
  ExperimentConfig c;
  c.seed = count(require(doc, "seed"), "seed");
  c.trials = count(require(doc, "trials"), "trials");
  c.B = number(require(doc, "B"), "B");

  const json& ns = require(doc, "n_values");
  if (!ns.is_array()) throw ValidationError("'n_values' must be an array");
  for (const auto& v : ns) c.n_values.push_back(count(v, "n_values entry"));

  const json& ds = require(doc, "delta_values");
  if (!ds.is_array()) throw ValidationError("'delta_values' must be an array");
  for (const auto& v : ds) c.delta_values.push_back(number(v, "delta_values entry"));

  const json& obj = require(doc, "objective");
  if (!obj.is_string()) throw ValidationError("'objective' must be a string");
  c.objective = parse_objective(obj.get<std::string>());

  const json& ms = require(doc, "mechanisms");
  if (!ms.is_array()) throw ValidationError("'mechanisms' must be an array");
  for (const auto& v : ms) {
    if (!v.is_string()) throw ValidationError("mechanism names must be strings");
    c.mechanisms.push_back(v.get<std::string>());
  }

  if (doc.contains("oracle_step") && !doc.at("oracle_step").is_null()) {
    c.oracle_step = number(doc.at("oracle_step"), "oracle_step");
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config_json(read_file(path));
}

}  // namespace mmfl
