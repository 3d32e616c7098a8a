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

#include "mmfl/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmfl {
namespace {

void check_domain(double B, double delta) {
  if (!(B > 0.0) || !std::isfinite(B)) {
    throw ValidationError("domain bound B must be positive and finite");
  }
  if (!(delta >= 0.0) || !(delta <= B)) {
    throw ValidationError("delta must lie in [0, B]");
  }
}

void check_interval(const Interval& iv, std::size_t i, double B, double delta) {
  const double tol = position_tolerance(B);
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "agent " << i << ": " << why << " (interval [" << iv.a << ", "
       << iv.b << "])";
    throw ValidationError(os.str(), i);
  };
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b)) fail("non-finite endpoint");
  if (iv.a > iv.b) fail("left endpoint exceeds right endpoint");
  if (iv.a < -tol) fail("left endpoint below 0");
  if (iv.b > B + tol) fail("right endpoint above B");
  if (iv.b - iv.a > delta + tol) {
    std::ostringstream os;
    os << "interval length " << iv.b - iv.a << " exceeds delta " << delta;
    fail(os.str());
  }
}

}  // namespace

bool Instance::is_exact() const {
  return std::all_of(agents_.begin(), agents_.end(),
                     [](const Interval& iv) { return iv.is_point(); });
}

Instance Instance::with_agent(std::size_t i, Interval report) const {
  if (i >= agents_.size()) throw ValidationError("agent index out of range", i);
  check_interval(report, i, B_, delta_);
  Instance copy = *this;
  copy.agents_[i] = report;
  return copy;
}

Instance validate_instance(std::span<const Interval> intervals, double B,
                           double delta) {
  check_domain(B, delta);
  if (intervals.empty()) throw ValidationError("instance has no agents");
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    check_interval(intervals[i], i, B, delta);
  }
  return Instance(B, delta, {intervals.begin(), intervals.end()});
}

Instance validate_instance(std::span<const std::pair<double, double>> raw,
                           double B, double delta) {
  std::vector<Interval> intervals;
  intervals.reserve(raw.size());
  for (const auto& [a, b] : raw) intervals.push_back({a, b});
  return validate_instance(intervals, B, delta);
}

SortedEndpoints sorted_endpoints(const Instance& instance) {
  SortedEndpoints out;
  const auto& agents = instance.agents();
  out.L.reserve(agents.size());
  out.R.reserve(agents.size());
  for (const auto& iv : agents) {
    out.L.push_back(iv.a);
    out.R.push_back(iv.b);
  }
  std::stable_sort(out.L.begin(), out.L.end());
  std::stable_sort(out.R.begin(), out.R.end());
  out.k = agents.size() / 2;
  out.M = 0.5 * (out.L[out.k] + out.R[out.k]);
  return out;
}

// ---------------------------------------------------------------------------
// Grid

double Grid::point(std::int64_t m) const {
  const double x = origin() + static_cast<double>(m) * spacing_;
  return std::clamp(x, 0.0, B_);
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  if (exact_) return out;
  out.reserve(size());
  for (std::int64_t m = first_; m <= last_; ++m) out.push_back(point(m));
  return out;
}

std::optional<std::int64_t> Grid::index_of(double x) const {
  if (exact_) return std::nullopt;
  const double r = std::round((x - origin()) / spacing_);
  if (!std::isfinite(r)) return std::nullopt;
  const auto m = static_cast<std::int64_t>(r);
  if (m < first_ || m > last_) return std::nullopt;
  if (std::abs(point(m) - x) > position_tolerance(B_)) return std::nullopt;
  return m;
}

bool Grid::contains(double x) const {
  if (exact_) return x >= 0.0 && x <= B_;
  return index_of(x).has_value();
}

Grid build_grid_with_spacing(double B, double spacing, GridAnchor anchor) {
  if (!(B > 0.0)) throw ValidationError("domain bound B must be positive");
  if (!(spacing > 0.0)) throw ValidationError("grid spacing must be positive");
  // A relative slack so that B / spacing landing a hair under an integer
  // still admits the last point.
  constexpr double kSlack = 1e-9;
  if (anchor == GridAnchor::Zero) {
    const auto last =
        static_cast<std::int64_t>(std::floor(B / spacing + kSlack));
    return Grid(B, spacing, anchor, false, 0, last);
  }
  const auto reach =
      static_cast<std::int64_t>(std::floor(0.5 * B / spacing + kSlack));
  return Grid(B, spacing, anchor, false, -reach, reach);
}

Grid build_grid(double B, double delta, GridAnchor anchor) {
  check_domain(B, delta);
  if (delta == 0.0) return Grid(B, 0.0, anchor, true, 0, -1);
  return build_grid_with_spacing(B, 0.5 * delta, anchor);
}

std::int64_t snap_index(double point, const Interval& owner, const Grid& grid) {
  if (grid.exact()) {
    throw InvariantViolation("snap_index called on an exact grid");
  }
  const double tol = position_tolerance(grid.B());
  const double origin = grid.anchor() == GridAnchor::Zero ? 0.0 : 0.5 * grid.B();
  const auto guess =
      static_cast<std::int64_t>(std::floor((point - origin) / grid.spacing()));
  // Scan a small window around the guess so that rounding in the division
  // cannot hide the true nearest point.
  const std::int64_t lo = std::max(grid.first_index(), guess - 1);
  const std::int64_t hi = std::min(grid.last_index(), guess + 2);
  if (lo > hi) {
    return point < grid.front() ? grid.first_index() : grid.last_index();
  }
  std::int64_t best = lo;
  double best_dist = std::abs(grid.point(lo) - point);
  for (std::int64_t m = lo + 1; m <= hi; ++m) {
    const double d = std::abs(grid.point(m) - point);
    if (d < best_dist - tol) {
      best = m;
      best_dist = d;
    } else if (std::abs(d - best_dist) <= tol) {
      // Tie between best (left) and m (right).
      const bool left_in = owner.contains(grid.point(best), tol);
      const bool right_in = owner.contains(grid.point(m), tol);
      if (right_in && !left_in) {
        best = m;
        best_dist = d;
      }
    }
  }
  return best;
}

double snap(double point, const Interval& owner, const Grid& grid) {
  if (grid.exact()) return point;
  return grid.point(snap_index(point, owner, grid));
}

double upper_median(std::span<const double> values) {
  if (values.empty()) throw ValidationError("median of an empty list");
  std::vector<double> tmp(values.begin(), values.end());
  const std::size_t k = tmp.size() / 2;
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k),
                   tmp.end());
  return tmp[k];
}

double median_of_three(double x, double y, double z) {
  return std::max(std::min(x, y), std::min(std::max(x, y), z));
}

}  // namespace mmfl
