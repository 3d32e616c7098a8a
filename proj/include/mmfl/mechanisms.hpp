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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmfl/core.hpp"

namespace mmfl {

enum class MechanismKind {
  Constant,               // ignores reports, returns a fixed point
  ExactMedian,            // upper median of exact reports
  ExactPhantomHalf,       // median(min, B/2, max) of exact reports
  EquispacedMedian,       // δ/2 grid anchored at 0, upper median of representatives
  EquispacedPhantomHalf,  // δ/2 grid through B/2, phantom-half of representatives
  FineEquispacedMedian,   // EquispacedMedian on a finer, caller-chosen grid
};

/// A direct mechanism together with the designer's knowledge (B, δ).
struct MechanismSpec {
  MechanismKind kind = MechanismKind::EquispacedMedian;
  double B = 1.0;
  double delta = 0.0;
  double constant = 0.0;      // Constant only
  double fine_spacing = 0.0;  // FineEquispacedMedian only

  static MechanismSpec make_constant(double B, double delta, double c);
  static MechanismSpec make(MechanismKind kind, double B, double delta);
  static MechanismSpec make_fine_median(double B, double delta, double spacing);

  /// True for the kinds whose exact-report game is very weakly dominant in
  /// the sense needed by the endpoint regret shortcut.
  bool endpoint_shortcut_valid() const;

  /// Range of the mechanism when it is a finite grid.
  std::optional<Grid> grid() const;

  /// Stable name used by the CLI and CSV output, e.g. "equispaced-median",
  /// "constant:0.5", "fine-equispaced-median:0.05".
  std::string name() const;
};

/// Inverse of MechanismSpec::name(). "constant" alone means B/2.
MechanismSpec parse_mechanism(std::string_view name, double B, double delta);

struct MechanismOutcome {
  double p = 0.0;
  /// Per-agent grid representatives; empty for non-grid mechanisms.
  std::vector<double> representatives;
  std::optional<Grid> grid;
};

/// Grid point standing in for an interval report: snap both ends, then pick
/// the single point, the left/right of two points by the midpoint rule, or the
/// middle of three. With `allow_wide`, spans of more than three grid points
/// (only possible on grids finer than δ/2) take the lower-middle point instead
/// of raising InvariantViolation.
std::int64_t select_representative_index(const Interval& interval,
                                         const Grid& grid,
                                         bool allow_wide = false);

double select_representative(const Interval& interval, const Grid& grid);

MechanismOutcome run_mechanism(const MechanismSpec& spec,
                               const Instance& instance);

}  // namespace mmfl
