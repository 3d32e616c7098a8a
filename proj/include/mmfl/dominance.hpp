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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmfl/core.hpp"
#include "mmfl/mechanisms.hpp"

namespace mmfl {

/// Finite set of positions that deviation reports may use as endpoints.
struct DeviationGrid {
  double pitch = 0.0;
  std::vector<double> positions;  // sorted, deduplicated, inside [0, B]

  /// Multiples of `pitch` in [0, B], plus B.
  static DeviationGrid uniform(double B, double pitch);

  /// uniform(), plus every point of the mechanism's range and every reported
  /// endpoint of `instance`.
  static DeviationGrid for_audit(const MechanismSpec& spec,
                                 const Instance& instance, double pitch);

  bool contains(double x, double tol) const;
};

struct DominanceReport {
  std::size_t agent = 0;
  double truthful_outcome = 0.0;
  double truthful_regret = 0.0;
  std::optional<Interval> best_deviation;
  double best_deviation_outcome = 0.0;
  double best_deviation_regret = 0.0;
  double gain = 0.0;  // truthful_regret - best_deviation_regret
  bool violated = false;
  std::size_t deviations_checked = 0;
};

inline constexpr double kDefaultAuditTolerance = 1e-9;

/// Searches every report [a', b'] with endpoints on `grid` and width within
/// the instance's δ (points only for the exact mechanisms) for one that
/// lowers agent `agent`'s worst-case regret below that of its truthful
/// report. Throws ValidationError if the truthful endpoints are not on the
/// grid.
DominanceReport check_minimax_dominance(
    const MechanismSpec& spec, const Instance& instance, std::size_t agent,
    const DeviationGrid& grid, double tolerance = kDefaultAuditTolerance);

/// Exact-report check: with true location l = points[agent], does any point
/// report on `grid` move the outcome strictly closer to l?
DominanceReport check_very_weak_dominance_exact(
    const MechanismSpec& spec, std::span<const double> points,
    std::size_t agent, const DeviationGrid& grid,
    double tolerance = kDefaultAuditTolerance);

enum class AttackFamily { VwdChain, FiniteRangeAttack, OntoAttack, FineGridAttack };

std::string to_string(AttackFamily family);

/// A sequence of profiles from one of the lower-bound constructions.
struct AdversarialScript {
  AttackFamily family = AttackFamily::VwdChain;
  std::vector<Instance> instances;
  std::string expected_property;
  std::map<std::string, double> params;
  /// Agents whose reports the construction manipulates (finite-range and
  /// onto scripts); empty otherwise.
  std::vector<std::size_t> focus_agents;
};

/// Profile chain walking n agents from [0, eps] to [B - eps1, B], one agent
/// and one step at a time, steps [b_{t-1} - eps1, b_t] with
/// b_t = eps + t (delta - eps1). Needs 0 < eps1 < eps < delta <= B.
AdversarialScript gen_vwd_chain(std::size_t n, double B, double delta,
                                double eps, double eps1);

enum class LadderCase { One, Two };

/// Ladder profiles around the largest gap [g_i, g_{i+1}] among four
/// increasing range points (first one on ties). L0 has k+1 exact reports at
/// g_i and the rest at g_{i+1}. Case one widens agents 0..k in turn to
/// [g_i, g_{i+1} - gamma]; case two widens agents k+1..n-1 to
/// [g_i + gamma, g_{i+1}].
AdversarialScript gen_finite_range_attack(const std::array<double, 4>& g,
                                          double gamma, std::size_t n,
                                          LadderCase which, double B,
                                          double delta);

/// Profile (y_j x (n-j-1), [ell, r], z, B x (j-1)) with j = n/2 and
/// z = (ell + r)/2 - eps, followed by the comparison profiles where the
/// interval agent reports ell, then r, and where the z agent reports
/// 2z - ell. Needs n >= 2.
AdversarialScript gen_onto_attack(double y_j, double ell, double r,
                                  double eps, std::size_t n, double B,
                                  double delta);

/// Counterexamples for median mechanisms on grids finer than δ/2: a report
/// [g + 0.45s, g + 3.45s] covers four points of a spacing-s grid, and the
/// lower-middle representative g + s leaves the right end exposed, while an
/// exact report at g + 2s does strictly better. Emits single-agent profiles
/// and three-agent ones with exact reports at 0 and B for several g.
AdversarialScript gen_fine_grid_attack(double B, double delta, double spacing);

}  // namespace mmfl
