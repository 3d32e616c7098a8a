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

#include "mmfl/mechanisms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace mmfl {
namespace {

void check_designer(double B, double delta) {
  if (!(B > 0.0)) throw ValidationError("mechanism B must be positive");
  if (!(delta >= 0.0 && delta <= B)) {
    throw ValidationError("mechanism delta must lie in [0, B]");
  }
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("bad " + std::string(what) + " '" +
                          std::string(text) + "'");
  }
  return v;
}

double phantom_half(std::span<const double> values, double B) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return median_of_three(*lo, 0.5 * B, *hi);
}

}  // namespace

MechanismSpec MechanismSpec::make_constant(double B, double delta, double c) {
  check_designer(B, delta);
  if (!(c >= 0.0 && c <= B)) {
    throw ValidationError("constant location must lie in [0, B]");
  }
  MechanismSpec s;
  s.kind = MechanismKind::Constant;
  s.B = B;
  s.delta = delta;
  s.constant = c;
  return s;
}

MechanismSpec MechanismSpec::make(MechanismKind kind, double B, double delta) {
  if (kind == MechanismKind::Constant) return make_constant(B, delta, 0.5 * B);
  if (kind == MechanismKind::FineEquispacedMedian) {
    return make_fine_median(B, delta, 0.25 * delta);
  }
  check_designer(B, delta);
  MechanismSpec s;
  s.kind = kind;
  s.B = B;
  s.delta = delta;
  return s;
}

MechanismSpec MechanismSpec::make_fine_median(double B, double delta,
                                              double spacing) {
  check_designer(B, delta);
  if (!(spacing > 0.0)) {
    throw ValidationError("fine grid spacing must be positive");
  }
  MechanismSpec s;
  s.kind = MechanismKind::FineEquispacedMedian;
  s.B = B;
  s.delta = delta;
  s.fine_spacing = spacing;
  return s;
}

bool MechanismSpec::endpoint_shortcut_valid() const {
  switch (kind) {
    case MechanismKind::ExactMedian:
    case MechanismKind::ExactPhantomHalf:
    case MechanismKind::EquispacedMedian:
    case MechanismKind::EquispacedPhantomHalf:
      return true;
    case MechanismKind::Constant:
    case MechanismKind::FineEquispacedMedian:
      return false;
  }
  return false;
}

std::optional<Grid> MechanismSpec::grid() const {
  switch (kind) {
    case MechanismKind::EquispacedMedian:
      return build_grid(B, delta, GridAnchor::Zero);
    case MechanismKind::EquispacedPhantomHalf:
      return build_grid(B, delta, GridAnchor::Half);
    case MechanismKind::FineEquispacedMedian:
      return build_grid_with_spacing(B, fine_spacing, GridAnchor::Zero);
    default:
      return std::nullopt;
  }
}

std::string MechanismSpec::name() const {
  switch (kind) {
    case MechanismKind::Constant:
      return "constant:" + shortest(constant);
    case MechanismKind::ExactMedian:
      return "exact-median";
    case MechanismKind::ExactPhantomHalf:
      return "exact-phantom-half";
    case MechanismKind::EquispacedMedian:
      return "equispaced-median";
    case MechanismKind::EquispacedPhantomHalf:
      return "equispaced-phantom-half";
    case MechanismKind::FineEquispacedMedian:
      return "fine-equispaced-median:" + shortest(fine_spacing);
  }
  return "unknown";
}

MechanismSpec parse_mechanism(std::string_view name, double B, double delta) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  if (head == "constant") {
    const double c = arg.empty() ? 0.5 * B : parse_number(arg, "constant");
    return MechanismSpec::make_constant(B, delta, c);
  }
  if (head == "fine-equispaced-median") {
    const double s = arg.empty() ? 0.25 * delta : parse_number(arg, "spacing");
    return MechanismSpec::make_fine_median(B, delta, s);
  }
  if (!arg.empty()) {
    throw ValidationError("mechanism '" + std::string(head) +
                          "' takes no parameter");
  }
  if (head == "exact-median") {
    return MechanismSpec::make(MechanismKind::ExactMedian, B, delta);
  }
  if (head == "exact-phantom-half") {
    return MechanismSpec::make(MechanismKind::ExactPhantomHalf, B, delta);
  }
  if (head == "equispaced-median") {
    return MechanismSpec::make(MechanismKind::EquispacedMedian, B, delta);
  }
  if (head == "equispaced-phantom-half") {
    return MechanismSpec::make(MechanismKind::EquispacedPhantomHalf, B, delta);
  }
  throw ValidationError("unknown mechanism '" + std::string(name) + "'");
}

std::int64_t select_representative_index(const Interval& interval,
                                         const Grid& grid, bool allow_wide) {
  const double tol = position_tolerance(grid.B());
  const std::int64_t ix = snap_index(interval.a, interval, grid);
  const std::int64_t iy = snap_index(interval.b, interval, grid);
  const std::int64_t count = iy - ix + 1;
  if (count == 1) return ix;
  if (count == 2) {
    const double x = grid.point(ix);
    const double y = grid.point(iy);
    const bool both_inside = interval.contains(x, tol) && interval.contains(y, tol);
    if (both_inside) return ix;
    return interval.a + interval.b <= x + y + tol ? ix : iy;
  }
  if (count == 3) return ix + 1;
  if (count > 3 && allow_wide) return ix + (count - 1) / 2;
  std::ostringstream os;
  os << "interval [" << interval.a << ", " << interval.b << "] spans " << count
     << " grid points; the grid is too fine for the reported width";
  throw InvariantViolation(os.str());
}

double select_representative(const Interval& interval, const Grid& grid) {
  if (grid.exact()) {
    if (!interval.is_point()) {
      throw ValidationError("exact grid requires exact reports");
    }
    return interval.a;
  }
  return grid.point(select_representative_index(interval, grid));
}

MechanismOutcome run_mechanism(const MechanismSpec& spec,
                               const Instance& instance) {
  const double tol = position_tolerance(spec.B);
  if (std::abs(instance.B() - spec.B) > tol) {
    throw ValidationError("instance B does not match the mechanism's B");
  }

  MechanismOutcome out;
  const auto& agents = instance.agents();
  switch (spec.kind) {
    case MechanismKind::Constant:
      out.p = spec.constant;
      return out;

    case MechanismKind::ExactMedian:
    case MechanismKind::ExactPhantomHalf: {
      std::vector<double> points;
      points.reserve(agents.size());
      for (std::size_t i = 0; i < agents.size(); ++i) {
        if (!agents[i].is_point()) {
          throw ValidationError("exact mechanism received an interval report", i);
        }
        points.push_back(agents[i].a);
      }
      out.p = spec.kind == MechanismKind::ExactMedian ? upper_median(points)
                                                      : phantom_half(points, spec.B);
      return out;
    }

    case MechanismKind::EquispacedMedian:
    case MechanismKind::EquispacedPhantomHalf:
    case MechanismKind::FineEquispacedMedian: {
      if (instance.delta() > spec.delta + tol) {
        throw ValidationError(
            "instance delta exceeds the delta the mechanism was designed for");
      }
      const Grid grid = *spec.grid();
      const bool wide = spec.kind == MechanismKind::FineEquispacedMedian;
      out.representatives.reserve(agents.size());
      for (const auto& iv : agents) {
        if (grid.exact()) {
          out.representatives.push_back(select_representative(iv, grid));
        } else {
          out.representatives.push_back(
              grid.point(select_representative_index(iv, grid, wide)));
        }
      }
      out.p = spec.kind == MechanismKind::EquispacedPhantomHalf
                  ? phantom_half(out.representatives, spec.B)
                  : upper_median(out.representatives);
      out.grid = grid;
      return out;
    }
  }
  throw InvariantViolation("unhandled mechanism kind");
}

}  // namespace mmfl
