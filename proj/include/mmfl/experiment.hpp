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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mmfl/core.hpp"
#include "mmfl/mechanisms.hpp"
#include "mmfl/regret.hpp"

namespace mmfl {

/// Seeded source of uniform doubles. The engine is the standard 64-bit
/// Mersenne Twister, whose output sequence is fixed by the C++ standard;
/// doubles take the top 53 bits, so streams agree across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent per-cell seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Each agent draws width w = delta * u, then a = (B - w) * u'.
Instance random_instance(std::size_t n, double B, double delta, Rng& rng);

/// Additive guarantee of a mechanism under an objective: 3δ/4 for the
/// equispaced median on avgCost, B/4 + 3δ/8 for the equispaced phantom-half
/// on maxCost, their exact counterparts' classical losses (0 and B/4), and
/// max(c, B - c) for a constant c. Other pairs get the trivial bound B.
double approximation_bound(const MechanismSpec& spec, Objective objective);

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::vector<std::size_t> n_values;
  double B = 1.0;
  std::vector<double> delta_values;
  Objective objective = Objective::AvgCost;
  /// Mechanism names in the form parse_mechanism() accepts; resolved per δ.
  std::vector<std::string> mechanisms;
  std::optional<double> oracle_step;
};

/// Throws ValidationError unless trials >= 1, n_values and delta_values and
/// mechanisms are non-empty, every n >= 1 and every delta in [0, B].
void validate_config(const ExperimentConfig& config);

struct ExperimentRow {
  std::size_t trial = 0;
  std::size_t n = 0;
  double delta = 0.0;
  std::string mechanism;
  double p = 0.0;
  double max_regret = 0.0;
  double omv = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  std::optional<double> oracle_omv;
};

/// Rows in (trial, n, delta, mechanism) order. All mechanisms in a cell see
/// the same instance, drawn from a seed derived from (seed, trial, n, delta
/// index) alone.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// 12 significant digits, shortest form, '.' separator, locale independent.
std::string format_number(double x);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace mmfl
