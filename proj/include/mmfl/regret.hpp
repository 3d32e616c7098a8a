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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mmfl/core.hpp"

namespace mmfl {

enum class Objective { AvgCost, MaxCost };

std::string_view to_string(Objective objective);

/// Parses "avg"/"avgcost" or "max"/"maxcost" (case-sensitive).
Objective parse_objective(std::string_view text);

/// Worst-case regret of a location split into the two realization families:
/// obj1 covers realizations whose optimum lies right of p, obj2 those left of
/// p. Both are clamped at zero (an empty family contributes nothing).
struct RegretEvaluation {
  double p = 0.0;
  double value = 0.0;
  double obj1 = 0.0;
  double obj2 = 0.0;
};

/// The brute-force oracle refuses work beyond its configured budget.
class OracleScaleExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Regret of locating at p when the true locations are exactly `locations`
/// (one per agent, any order).
double regret_of(const Instance& instance, std::span<const double> locations,
                 double p, Objective objective);

/// Closed-form avgCost max-regret over the sorted endpoints, answered in
/// O(log n) per query after an O(n log n) build.
///
/// With c1 = n - 2k and c2 = 2(k+1) - n (both 1 for odd n):
///   n * obj1(p) = 2 * sum_{i<k, R_i > p} (R_i - p) + c1 * (R_k - p)
///   n * obj2(p) = 2 * sum_{i>k, L_i < p} (p - L_i) + c2 * (p - L_k)
/// (0-based indices, k = floor(n/2)).
class AvgCostRegret {
 public:
  explicit AvgCostRegret(SortedEndpoints endpoints);
  explicit AvgCostRegret(const Instance& instance)
      : AvgCostRegret(sorted_endpoints(instance)) {}

  RegretEvaluation evaluate(double p) const;
  double value(double p) const { return evaluate(p).value; }

  const SortedEndpoints& endpoints() const { return ep_; }
  double coeff_right() const { return c1_; }
  double coeff_left() const { return c2_; }

 private:
  SortedEndpoints ep_;
  double c1_;
  double c2_;
  // prefix_r_[i] = R_0 + ... + R_{i-1} for i <= k.
  std::vector<double> prefix_r_;
  // prefix_l_[i] = L_{k+1} + ... + L_{k+i}.
  std::vector<double> prefix_l_;
};

RegretEvaluation avgcost_max_regret(const Instance& instance, double p);

/// obj1 = (R_1 + R_n)/2 - p, obj2 = p - (L_1 + L_n)/2, each clamped at 0.
RegretEvaluation maxcost_max_regret(const Instance& instance, double p);

RegretEvaluation max_regret(const Instance& instance, double p,
                            Objective objective);

struct BruteForceOptions {
  double step = 0.01;
  /// Upper bound on the number of location vectors enumerated.
  std::uint64_t max_vectors = 10'000'000;
};

/// Maximizes regret_of over every location vector whose coordinates walk
/// each interval at pitch `step` (both endpoints always included).
double brute_force_max_regret(const Instance& instance, double p,
                              Objective objective,
                              const BruteForceOptions& options);

/// Same enumeration shared across several locations; result[i] belongs to
/// locations[i].
std::vector<double> brute_force_max_regret(const Instance& instance,
                                           std::span<const double> locations,
                                           Objective objective,
                                           const BruteForceOptions& options);

/// Outcomes the mechanism produces when the agent reports exactly its left
/// or right endpoint while everyone else keeps their reports.
struct EndpointResponses {
  std::optional<double> at_left;
  std::optional<double> at_right;
};

/// Agent max-regret of an outcome via the endpoint shortcut:
///   max(|a - p| - |a - p_a|, |b - p| - |b - p_b|), clamped at 0.
/// Valid when exact reports are very weakly dominant in the mechanism.
double agent_max_regret(double outcome, const EndpointResponses& responses,
                        const Interval& interval);

/// Agent max-regret for an arbitrary mechanism: maximizes
/// |l - p| - min_q |l - q| over l in [a, b], q over the outcomes the agent can
/// reach. l is sampled at pitch `step` and additionally at every breakpoint of
/// the piecewise-linear objective that lies inside [a, b], so the sampled
/// maximum is exact for the given reachable set.
double agent_max_regret_sampled(double outcome,
                                std::span<const double> reachable,
                                const Interval& interval, double step);

}  // namespace mmfl
