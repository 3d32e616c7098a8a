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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmfl {

/// Raised when an instance, report or parameter violates the model's
/// constraints. `agent()` names the offending agent when there is one.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<std::size_t> agent = std::nullopt)
      : std::invalid_argument(what), agent_(agent) {}

  std::optional<std::size_t> agent() const noexcept { return agent_; }

 private:
  std::optional<std::size_t> agent_;
};

/// An internal consistency check failed (e.g. a grid/δ mismatch).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Absolute slack used for every position comparison that decides a tie or a
/// containment. Positions are O(B), so rounding noise is a few ulps of B.
inline double position_tolerance(double B) {
  return 1e-12 * (B > 1.0 ? B : 1.0);
}

/// Candidate locations [a, b] of one agent; a == b is an exact report.
struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool is_point() const { return a == b; }
  bool contains(double x, double tol = 0.0) const {
    return x >= a - tol && x <= b + tol;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A validated profile of reports on the domain [0, B] whose interval lengths
/// are bounded by `delta`. Immutable once built.
class Instance {
 public:
  double B() const { return B_; }
  double delta() const { return delta_; }
  std::size_t size() const { return agents_.size(); }
  const std::vector<Interval>& agents() const { return agents_; }
  const Interval& agent(std::size_t i) const { return agents_.at(i); }

  /// True when every report is a single point.
  bool is_exact() const;

  /// Copy with agent `i` replaced by `report`; the new report is validated.
  Instance with_agent(std::size_t i, Interval report) const;

  friend Instance validate_instance(std::span<const Interval>, double, double);

 private:
  Instance(double B, double delta, std::vector<Interval> agents)
      : B_(B), delta_(delta), agents_(std::move(agents)) {}

  double B_;
  double delta_;
  std::vector<Interval> agents_;
};

/// Checks the domain constraints and returns the instance with the intervals
/// kept in input order. Throws ValidationError naming the first bad agent.
Instance validate_instance(std::span<const Interval> intervals, double B,
                           double delta);

/// Convenience overload for raw (a, b) pairs.
Instance validate_instance(std::span<const std::pair<double, double>> raw,
                           double B, double delta);

/// Independently sorted left and right endpoints, plus the upper-median index
/// k = floor(n/2) and M = (L[k] + R[k]) / 2 (0-based here).
struct SortedEndpoints {
  std::vector<double> L;
  std::vector<double> R;
  std::size_t k = 0;
  double M = 0.0;

  std::size_t size() const { return L.size(); }
  double median_left() const { return L[k]; }
  double median_right() const { return R[k]; }
};

SortedEndpoints sorted_endpoints(const Instance& instance);

enum class GridAnchor { Zero, Half };

/// Finite mechanism range: points anchor + m * spacing for a contiguous range
/// of integers m, clipped to [0, B]. The anchor is 0 or B/2. A zero-δ grid is
/// "exact": snapping becomes the identity over all of [0, B].
class Grid {
 public:
  GridAnchor anchor() const { return anchor_; }
  double spacing() const { return spacing_; }
  double B() const { return B_; }
  bool exact() const { return exact_; }

  std::int64_t first_index() const { return first_; }
  std::int64_t last_index() const { return last_; }
  std::size_t size() const {
    return exact_ ? 0 : static_cast<std::size_t>(last_ - first_ + 1);
  }

  /// Position of the grid point with integer coordinate m.
  double point(std::int64_t m) const;
  double front() const { return point(first_); }
  double back() const { return point(last_); }
  std::vector<double> points() const;

  /// Coordinate of the grid point equal to x (within tolerance), if any.
  std::optional<std::int64_t> index_of(double x) const;
  bool contains(double x) const;

  friend Grid build_grid(double, double, GridAnchor);
  friend Grid build_grid_with_spacing(double, double, GridAnchor);

 private:
  Grid(double B, double spacing, GridAnchor anchor, bool exact,
       std::int64_t first, std::int64_t last)
      : B_(B), spacing_(spacing), anchor_(anchor), exact_(exact),
        first_(first), last_(last) {}

  double origin() const { return anchor_ == GridAnchor::Zero ? 0.0 : 0.5 * B_; }

  double B_;
  double spacing_;
  GridAnchor anchor_;
  bool exact_;
  std::int64_t first_;
  std::int64_t last_;
};

/// The δ/2-spaced range used by the equispaced mechanisms.
Grid build_grid(double B, double delta, GridAnchor anchor);

/// Same construction with an arbitrary positive spacing.
Grid build_grid_with_spacing(double B, double spacing, GridAnchor anchor);

/// Integer coordinate of the grid point nearest to `point`. An exact tie goes
/// to the candidate inside `owner` when exactly one is, otherwise to the left.
/// Must not be called on an exact grid.
std::int64_t snap_index(double point, const Interval& owner, const Grid& grid);

/// Position form of snap_index; the identity on an exact grid.
double snap(double point, const Interval& owner, const Grid& grid);

/// The (floor(n/2) + 1)-th smallest element.
double upper_median(std::span<const double> values);

/// Median of three values.
double median_of_three(double x, double y, double z);

}  // namespace mmfl
