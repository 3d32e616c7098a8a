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
#include <vector>

#include "mmfl/core.hpp"
#include "mmfl/regret.hpp"

namespace mmfl {

/// A minimax-optimal location, its optimal minimax value, and the regret
/// breakdown at that location.
struct SolveResult {
  double p_opt = 0.0;
  double omv = 0.0;
  RegretEvaluation certificate;
};

/// Breakpoints of the avgCost max-regret inside [L_k, R_k] together with the
/// per-breakpoint counters the sweep needs (0-based, k = floor(n/2)):
///   right_count[i] = #{ j < k : R_j >= H[i] },  right_sum[i] = sum of them
///   left_count[i]  = #{ j > k : L_j <= H[i] },  left_sum[i]  = sum of them
struct BreakpointState {
  std::vector<double> H;
  std::vector<std::size_t> right_count;
  std::vector<std::size_t> left_count;
  std::vector<double> right_sum;
  std::vector<double> left_sum;
};

/// Collects {R_i : i <= k, R_i > L_k} and {L_j : j >= k, L_j < R_k}, adds the
/// ends L_k and R_k, sorts and dedups, then fills the counters.
BreakpointState build_breakpoints(const SortedEndpoints& endpoints);

/// O(n log n) sweep over the breakpoints: every breakpoint and every interior
/// crossing of the two regret families is a candidate; the smallest
/// max-regret wins, earlier (smaller) candidates winning ties.
SolveResult solve_minimax_avgcost(const Instance& instance);

/// p_opt = (L_1 + R_1 + L_n + R_n) / 4, omv = (R_1 + R_n - L_1 - L_n) / 4.
SolveResult solve_minimax_maxcost(const Instance& instance);

SolveResult solve_minimax(const Instance& instance, Objective objective);

/// Oracle: evaluates the closed-form max-regret at every multiple of `step`
/// in [0, B] and at every endpoint; ties go to the smaller location.
SolveResult grid_search_minimax(const Instance& instance, Objective objective,
                                double step);

}  // namespace mmfl
