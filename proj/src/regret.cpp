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

#include "mmfl/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace mmfl {
namespace {

void check_location(const Instance& instance, double p) {
  const double tol = position_tolerance(instance.B());
  if (!(p >= -tol && p <= instance.B() + tol)) {
    std::ostringstream os;
    os << "location " << p << " outside [0, " << instance.B() << "]";
    throw ValidationError(os.str());
  }
}

// Regret of p against one realization; `scratch` is clobbered.
double regret_unchecked(std::span<double> scratch, double p,
                        Objective objective) {
  const std::size_t n = scratch.size();
  if (objective == Objective::AvgCost) {
    std::sort(scratch.begin(), scratch.end());
    const double med = scratch[n / 2];
    double at_p = 0.0;
    double at_med = 0.0;
    for (double x : scratch) {
      at_p += std::abs(x - p);
      at_med += std::abs(x - med);
    }
    return std::max(0.0, (at_p - at_med) / static_cast<double>(n));
  }
  const auto [lo, hi] = std::minmax_element(scratch.begin(), scratch.end());
  const double worst = std::max(std::abs(*lo - p), std::abs(*hi - p));
  return std::max(0.0, worst - 0.5 * (*hi - *lo));
}

// Pitch-`step` walk over [a, b] that always ends exactly on b.
std::vector<double> discretize(const Interval& iv, double step, double tol) {
  std::vector<double> out;
  for (std::int64_t i = 0;; ++i) {
    const double x = iv.a + static_cast<double>(i) * step;
    if (x >= iv.b - tol) break;
    out.push_back(x);
  }
  out.push_back(iv.b);
  return out;
}

}  // namespace

std::string_view to_string(Objective objective) {
  return objective == Objective::AvgCost ? "avg" : "max";
}

Objective parse_objective(std::string_view text) {
  if (text == "avg" || text == "avgcost" || text == "AvgCost") {
    return Objective::AvgCost;
  }
  if (text == "max" || text == "maxcost" || text == "MaxCost") {
    return Objective::MaxCost;
  }
  throw ValidationError("unknown objective '" + std::string(text) + "'");
}

double regret_of(const Instance& instance, std::span<const double> locations,
                 double p, Objective objective) {
  if (locations.size() != instance.size()) {
    throw ValidationError("location vector length does not match instance");
  }
  check_location(instance, p);
  std::vector<double> scratch(locations.begin(), locations.end());
  return regret_unchecked(scratch, p, objective);
}

// ---------------------------------------------------------------------------
// avgCost closed form

AvgCostRegret::AvgCostRegret(SortedEndpoints endpoints)
    : ep_(std::move(endpoints)) {
  const std::size_t n = ep_.size();
  const std::size_t k = ep_.k;
  // For odd n both coefficients equal n - 2k = 1. For even n the right-hand
  // family measures regret against the upper median, which leaves no weight
  // on R_k, while the left-hand family picks up 2.
  c1_ = static_cast<double>(n) - 2.0 * static_cast<double>(k);
  c2_ = 2.0 * static_cast<double>(k + 1) - static_cast<double>(n);
  prefix_r_.assign(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) prefix_r_[i + 1] = prefix_r_[i] + ep_.R[i];
  prefix_l_.assign(n - k, 0.0);
  for (std::size_t i = k + 1; i < n; ++i) {
    prefix_l_[i - k] = prefix_l_[i - k - 1] + ep_.L[i];
  }
}

RegretEvaluation AvgCostRegret::evaluate(double p) const {
  const std::size_t n = ep_.size();
  const std::size_t k = ep_.k;
  const auto& L = ep_.L;
  const auto& R = ep_.R;
  const double inv_n = 1.0 / static_cast<double>(n);

  // Right family: R_i > p among i < k form a suffix of R[0, k).
  const auto j = static_cast<std::size_t>(
      std::upper_bound(R.begin(), R.begin() + static_cast<std::ptrdiff_t>(k), p) -
      R.begin());
  const double right_count = static_cast<double>(k - j);
  const double right_sum = prefix_r_[k] - prefix_r_[j];
  const double obj1 =
      inv_n * (2.0 * (right_sum - right_count * p) + c1_ * (R[k] - p));

  // Left family: L_i < p among i > k form a prefix of L(k, n).
  const auto h = static_cast<std::size_t>(
      std::lower_bound(L.begin() + static_cast<std::ptrdiff_t>(k + 1), L.end(),
                       p) -
      (L.begin() + static_cast<std::ptrdiff_t>(k + 1)));
  const double left_sum = prefix_l_[h];
  const double obj2 =
      inv_n * (2.0 * (static_cast<double>(h) * p - left_sum) + c2_ * (p - L[k]));

  RegretEvaluation out;
  out.p = p;
  out.obj1 = std::max(0.0, obj1);
  out.obj2 = std::max(0.0, obj2);
  out.value = std::max(out.obj1, out.obj2);
  return out;
}

RegretEvaluation avgcost_max_regret(const Instance& instance, double p) {
  check_location(instance, p);
  return AvgCostRegret(instance).evaluate(p);
}

RegretEvaluation maxcost_max_regret(const Instance& instance, double p) {
  check_location(instance, p);
  double l_min = std::numeric_limits<double>::infinity();
  double l_max = -l_min;
  double r_min = l_min;
  double r_max = l_max;
  for (const auto& iv : instance.agents()) {
    l_min = std::min(l_min, iv.a);
    l_max = std::max(l_max, iv.a);
    r_min = std::min(r_min, iv.b);
    r_max = std::max(r_max, iv.b);
  }
  RegretEvaluation out;
  out.p = p;
  out.obj1 = std::max(0.0, 0.5 * (r_min + r_max) - p);
  out.obj2 = std::max(0.0, p - 0.5 * (l_min + l_max));
  out.value = std::max(out.obj1, out.obj2);
  return out;
}

RegretEvaluation max_regret(const Instance& instance, double p,
                            Objective objective) {
  return objective == Objective::AvgCost ? avgcost_max_regret(instance, p)
                                         : maxcost_max_regret(instance, p);
}

// ---------------------------------------------------------------------------
// Brute-force oracle

double brute_force_max_regret(const Instance& instance, double p,
                              Objective objective,
                              const BruteForceOptions& options) {
  return brute_force_max_regret(instance, std::span<const double>(&p, 1),
                                objective, options)[0];
}

std::vector<double> brute_force_max_regret(const Instance& instance,
                                           std::span<const double> locations,
                                           Objective objective,
                                           const BruteForceOptions& options) {
  if (!(options.step > 0.0)) {
    throw ValidationError("oracle step must be positive");
  }
  for (double p : locations) check_location(instance, p);
  const double tol = position_tolerance(instance.B());
  const std::size_t n = instance.size();

  std::vector<std::vector<double>> axes;
  axes.reserve(n);
  long double total = 1.0L;
  for (const auto& iv : instance.agents()) {
    axes.push_back(discretize(iv, options.step, tol));
    total *= static_cast<long double>(axes.back().size());
    if (total > static_cast<long double>(options.max_vectors)) {
      std::ostringstream os;
      os << "oracle scale exceeded: more than " << options.max_vectors
         << " location vectors";
      throw OracleScaleExceeded(os.str());
    }
  }

  // Odometer over the cartesian product.
  std::vector<std::size_t> digit(n, 0);
  std::vector<double> current(n);
  std::vector<double> scratch(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = axes[i][0];

  std::vector<double> best(locations.size(), 0.0);
  for (;;) {
    std::copy(current.begin(), current.end(), scratch.begin());
    for (std::size_t t = 0; t < locations.size(); ++t) {
      best[t] = std::max(best[t],
                         regret_unchecked(scratch, locations[t], objective));
    }

    std::size_t pos = 0;
    while (pos < n) {
      if (++digit[pos] < axes[pos].size()) {
        current[pos] = axes[pos][digit[pos]];
        break;
      }
      digit[pos] = 0;
      current[pos] = axes[pos][0];
      ++pos;
    }
    if (pos == n) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Agent-level regret

double agent_max_regret(double outcome, const EndpointResponses& responses,
                        const Interval& interval) {
  if (!responses.at_left || !responses.at_right) {
    throw ValidationError("missing endpoint response for agent regret");
  }
  const double at_a =
      std::abs(interval.a - outcome) - std::abs(interval.a - *responses.at_left);
  const double at_b = std::abs(interval.b - outcome) -
                      std::abs(interval.b - *responses.at_right);
  return std::max({0.0, at_a, at_b});
}

double agent_max_regret_sampled(double outcome,
                                std::span<const double> reachable,
                                const Interval& interval, double step) {
  if (!(step > 0.0)) throw ValidationError("sampling step must be positive");
  std::vector<double> q(reachable.begin(), reachable.end());
  q.push_back(outcome);
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());

  auto nearest = [&](double l) {
    const auto it = std::lower_bound(q.begin(), q.end(), l);
    double d = std::numeric_limits<double>::infinity();
    if (it != q.end()) d = *it - l;
    if (it != q.begin()) d = std::min(d, l - *std::prev(it));
    return d;
  };
  auto regret_at = [&](double l) {
    return std::abs(l - outcome) - nearest(l);
  };

  double best = 0.0;
  auto consider = [&](double l) {
    if (interval.contains(l)) best = std::max(best, regret_at(l));
  };
  for (std::int64_t i = 0;; ++i) {
    const double l = interval.a + static_cast<double>(i) * step;
    if (l >= interval.b) break;
    consider(l);
  }
  consider(interval.b);
  consider(outcome);
  for (std::size_t i = 0; i < q.size(); ++i) {
    consider(q[i]);
    if (i + 1 < q.size()) consider(0.5 * (q[i] + q[i + 1]));
  }
  return best;
}

}  // namespace mmfl
