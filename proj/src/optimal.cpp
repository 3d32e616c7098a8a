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

#include "mmfl/optimal.hpp"

#include <algorithm>
#include <cmath>

namespace mmfl {

BreakpointState build_breakpoints(const SortedEndpoints& ep) {
  const std::size_t n = ep.size();
  const std::size_t k = ep.k;
  const double lo = ep.L[k];
  const double hi = ep.R[k];

  BreakpointState st;
  for (std::size_t i = 0; i <= k; ++i) {
    if (ep.R[i] > lo) st.H.push_back(ep.R[i]);
  }
  for (std::size_t j = k; j < n; ++j) {
    if (ep.L[j] < hi) st.H.push_back(ep.L[j]);
  }
  // The printed candidate set can be empty (e.g. L_k == R_k); the two ends of
  // [L_k, R_k] keep the whole interval covered.
  st.H.push_back(lo);
  st.H.push_back(hi);
  std::sort(st.H.begin(), st.H.end());
  st.H.erase(std::unique(st.H.begin(), st.H.end()), st.H.end());

  const auto r_begin = ep.R.begin();
  const auto r_end = ep.R.begin() + static_cast<std::ptrdiff_t>(k);
  const auto l_begin = ep.L.begin() + static_cast<std::ptrdiff_t>(k + 1);
  const auto l_end = ep.L.end();

  std::vector<double> r_prefix(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) r_prefix[i + 1] = r_prefix[i] + ep.R[i];
  std::vector<double> l_prefix(n - k, 0.0);
  for (std::size_t i = k + 1; i < n; ++i) {
    l_prefix[i - k] = l_prefix[i - k - 1] + ep.L[i];
  }

  const std::size_t m = st.H.size();
  st.right_count.resize(m);
  st.right_sum.resize(m);
  st.left_count.resize(m);
  st.left_sum.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double h = st.H[i];
    const auto first_ge =
        static_cast<std::size_t>(std::lower_bound(r_begin, r_end, h) - r_begin);
    st.right_count[i] = k - first_ge;
    st.right_sum[i] = r_prefix[k] - r_prefix[first_ge];
    const auto past_le =
        static_cast<std::size_t>(std::upper_bound(l_begin, l_end, h) - l_begin);
    st.left_count[i] = past_le;
    st.left_sum[i] = l_prefix[past_le];
  }
  return st;
}

SolveResult solve_minimax_avgcost(const Instance& instance) {
  const AvgCostRegret regret(instance);
  const SortedEndpoints& ep = regret.endpoints();
  const BreakpointState st = build_breakpoints(ep);
  const double c1 = regret.coeff_right();
  const double c2 = regret.coeff_left();
  const double lo = ep.L[ep.k];
  const double hi = ep.R[ep.k];

  std::vector<double> candidates;
  candidates.reserve(2 * st.H.size());
  for (std::size_t i = 0; i < st.H.size(); ++i) {
    candidates.push_back(st.H[i]);
    if (i + 1 == st.H.size()) break;
    // On (H[i], H[i+1]) both families are linear; they cross where
    //   2(S1 - x p) + c1 (R_k - p) = 2(y p - S2) + c2 (p - L_k).
    const double x = static_cast<double>(st.right_count[i + 1]);
    const double y = static_cast<double>(st.left_count[i]);
    const double num = 2.0 * (st.right_sum[i + 1] + st.left_sum[i]) +
                       c1 * hi + c2 * lo;
    const double den = 2.0 * (x + y) + c1 + c2;
    const double p = num / den;
    if (p > st.H[i] && p < st.H[i + 1]) candidates.push_back(p);
  }

  SolveResult best;
  bool have = false;
  for (double p : candidates) {
    const RegretEvaluation e = regret.evaluate(p);
    if (!have || e.value < best.omv) {
      best.p_opt = p;
      best.omv = e.value;
      best.certificate = e;
      have = true;
    }
  }
  return best;
}

SolveResult solve_minimax_maxcost(const Instance& instance) {
  const SortedEndpoints ep = sorted_endpoints(instance);
  const double raw = 0.25 * (ep.L.front() + ep.R.front() + ep.L.back() +
                             ep.R.back());
  SolveResult out;
  out.p_opt = std::clamp(raw, 0.0, instance.B());
  out.certificate = maxcost_max_regret(instance, out.p_opt);
  out.omv = out.certificate.value;
  return out;
}

SolveResult solve_minimax(const Instance& instance, Objective objective) {
  return objective == Objective::AvgCost ? solve_minimax_avgcost(instance)
                                         : solve_minimax_maxcost(instance);
}

SolveResult grid_search_minimax(const Instance& instance, Objective objective,
                                double step) {
  if (!(step > 0.0)) throw ValidationError("grid search step must be positive");
  const double B = instance.B();
  std::vector<double> points;
  const auto count = static_cast<std::int64_t>(std::floor(B / step + 1e-9));
  points.reserve(static_cast<std::size_t>(count) + 2 * instance.size() + 2);
  for (std::int64_t m = 0; m <= count; ++m) {
    points.push_back(std::min(B, static_cast<double>(m) * step));
  }
  points.push_back(B);
  for (const auto& iv : instance.agents()) {
    points.push_back(iv.a);
    points.push_back(iv.b);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::optional<AvgCostRegret> avg;
  if (objective == Objective::AvgCost) avg.emplace(instance);

  SolveResult best;
  bool have = false;
  for (double p : points) {
    const RegretEvaluation e = avg ? avg->evaluate(p)
                                   : maxcost_max_regret(instance, p);
    if (!have || e.value < best.omv) {
      best.p_opt = p;
      best.omv = e.value;
      best.certificate = e;
      have = true;
    }
  }
  return best;
}

}  // namespace mmfl
