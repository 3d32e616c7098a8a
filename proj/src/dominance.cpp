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

#include "mmfl/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mmfl/regret.hpp"

namespace mmfl {
namespace {

void sort_unique(std::vector<double>& xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  xs = std::move(out);
}

bool is_exact_kind(MechanismKind kind) {
  return kind == MechanismKind::ExactMedian ||
         kind == MechanismKind::ExactPhantomHalf;
}

// Position on the grid matching x, or x itself when none is within tol, so
// the truthful report is compared by identity below.
double nearest_position(const DeviationGrid& grid, double x, double tol) {
  const auto it = std::lower_bound(grid.positions.begin(), grid.positions.end(),
                                   x - tol);
  if (it != grid.positions.end() && std::abs(*it - x) <= tol) return *it;
  return x;
}

struct Candidate {
  Interval report;
  double outcome;
};

// All reports the agent may send: pairs of grid positions no wider than
// `max_width`, in lexicographic order.
std::vector<Interval> enumerate_reports(const DeviationGrid& grid,
                                        double max_width, double tol) {
  std::vector<Interval> out;
  const auto& pos = grid.positions;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i; j < pos.size(); ++j) {
      if (pos[j] - pos[i] > max_width + tol) break;
      out.push_back({pos[i], pos[j]});
    }
  }
  return out;
}

void check_audit_inputs(const MechanismSpec& spec, const Instance& instance,
                        std::size_t agent, const DeviationGrid& grid) {
  if (agent >= instance.size()) {
    throw ValidationError("audit agent index out of range", agent);
  }
  if (!(grid.pitch > 0.0) || grid.positions.empty()) {
    throw ValidationError("deviation grid must have positive pitch");
  }
  const double tol = position_tolerance(spec.B);
  const Interval& truth = instance.agent(agent);
  if (!grid.contains(truth.a, tol) || !grid.contains(truth.b, tol)) {
    std::ostringstream os;
    os << "deviation grid does not contain the endpoints of agent " << agent
       << "'s report [" << truth.a << ", " << truth.b << "]";
    throw ValidationError(os.str(), agent);
  }
}

}  // namespace

DeviationGrid DeviationGrid::uniform(double B, double pitch) {
  if (!(B > 0.0)) throw ValidationError("domain bound B must be positive");
  if (!(pitch > 0.0)) throw ValidationError("deviation pitch must be positive");
  DeviationGrid g;
  g.pitch = pitch;
  const auto count = static_cast<std::int64_t>(std::floor(B / pitch + 1e-9));
  for (std::int64_t m = 0; m <= count; ++m) {
    g.positions.push_back(std::min(B, static_cast<double>(m) * pitch));
  }
  g.positions.push_back(B);
  sort_unique(g.positions, position_tolerance(B));
  return g;
}

DeviationGrid DeviationGrid::for_audit(const MechanismSpec& spec,
                                       const Instance& instance, double pitch) {
  DeviationGrid g = uniform(spec.B, pitch);
  if (const auto range = spec.grid(); range && !range->exact()) {
    const auto pts = range->points();
    g.positions.insert(g.positions.end(), pts.begin(), pts.end());
  }
  if (spec.kind == MechanismKind::Constant) g.positions.push_back(spec.constant);
  for (const auto& iv : instance.agents()) {
    g.positions.push_back(iv.a);
    g.positions.push_back(iv.b);
  }
  sort_unique(g.positions, position_tolerance(spec.B));
  return g;
}

bool DeviationGrid::contains(double x, double tol) const {
  const auto it = std::lower_bound(positions.begin(), positions.end(), x - tol);
  return it != positions.end() && std::abs(*it - x) <= tol;
}

// Definition of the audit. Let Q be the set of outcomes agent i can reach by
// some report, the others fixed. For a report s,
//   maxRegret_i(s) = max_{l in [a, b]} ( |l - F(s)| - min_{q in Q} |l - q| ).
// A mixed report yields an expected distance that is linear in the mixture,
// so for every l the best mixture is no better than the best pure report and
// the worst-case regret of a mixture is at least the mixture of pure regrets.
// Searching pure deviations therefore loses nothing.
DominanceReport check_minimax_dominance(const MechanismSpec& spec,
                                        const Instance& instance,
                                        std::size_t agent,
                                        const DeviationGrid& grid,
                                        double tolerance) {
  check_audit_inputs(spec, instance, agent, grid);
  const double tol = position_tolerance(spec.B);
  const Interval truth = instance.agent(agent);
  const double max_width =
      is_exact_kind(spec.kind) ? 0.0 : std::min(instance.delta(), spec.delta);

  const Interval truth_on_grid{nearest_position(grid, truth.a, tol),
                               nearest_position(grid, truth.b, tol)};

  std::vector<Candidate> deviations;
  std::vector<double> reachable;
  for (const Interval& report : enumerate_reports(grid, max_width, tol)) {
    const double p = run_mechanism(spec, instance.with_agent(agent, report)).p;
    reachable.push_back(p);
    if (report == truth_on_grid) continue;
    deviations.push_back({report, p});
  }

  DominanceReport out;
  out.agent = agent;
  out.truthful_outcome = run_mechanism(spec, instance).p;
  reachable.push_back(out.truthful_outcome);
  out.deviations_checked = deviations.size();

  std::function<double(double)> regret_of_outcome;
  if (spec.endpoint_shortcut_valid()) {
    // Exact reports are very weakly dominant here, so the best reachable
    // distance from an endpoint is the one its own exact report achieves,
    // and the worst realization is an endpoint.
    EndpointResponses responses;
    responses.at_left =
        run_mechanism(spec, instance.with_agent(agent, {truth.a, truth.a})).p;
    responses.at_right =
        run_mechanism(spec, instance.with_agent(agent, {truth.b, truth.b})).p;
    regret_of_outcome = [responses, truth](double p) {
      return agent_max_regret(p, responses, truth);
    };
  } else {
    sort_unique(reachable, 0.0);
    const double step = grid.pitch;
    regret_of_outcome = [&reachable, truth, step](double p) {
      return agent_max_regret_sampled(p, reachable, truth, step);
    };
  }

  out.truthful_regret = regret_of_outcome(out.truthful_outcome);
  bool have = false;
  for (const Candidate& c : deviations) {
    const double r = regret_of_outcome(c.outcome);
    if (!have || r < out.best_deviation_regret) {
      out.best_deviation = c.report;
      out.best_deviation_outcome = c.outcome;
      out.best_deviation_regret = r;
      have = true;
    }
  }
  if (!have) {
    out.best_deviation_regret = out.truthful_regret;
    out.best_deviation_outcome = out.truthful_outcome;
  }
  out.gain = out.truthful_regret - out.best_deviation_regret;
  out.violated = out.gain > tolerance;
  return out;
}

DominanceReport check_very_weak_dominance_exact(const MechanismSpec& spec,
                                                std::span<const double> points,
                                                std::size_t agent,
                                                const DeviationGrid& grid,
                                                double tolerance) {
  std::vector<Interval> reports;
  reports.reserve(points.size());
  for (double x : points) reports.push_back({x, x});
  const Instance instance = validate_instance(reports, spec.B, spec.delta);
  check_audit_inputs(spec, instance, agent, grid);

  const double tol = position_tolerance(spec.B);
  const double ell = points[agent];
  const double own = nearest_position(grid, ell, tol);

  DominanceReport out;
  out.agent = agent;
  out.truthful_outcome = run_mechanism(spec, instance).p;
  double closest = std::abs(ell - out.truthful_outcome);
  bool have = false;
  for (double x : grid.positions) {
    if (x == own) continue;
    ++out.deviations_checked;
    const double p = run_mechanism(spec, instance.with_agent(agent, {x, x})).p;
    const double d = std::abs(ell - p);
    closest = std::min(closest, d);
    if (!have || d < out.best_deviation_regret) {
      out.best_deviation = Interval{x, x};
      out.best_deviation_outcome = p;
      out.best_deviation_regret = d;
      have = true;
    }
  }
  // Only one realization, so regret is the excess distance over the best
  // reachable outcome.
  out.truthful_regret = std::abs(ell - out.truthful_outcome) - closest;
  if (have) {
    out.best_deviation_regret -= closest;
  } else {
    out.best_deviation_regret = out.truthful_regret;
    out.best_deviation_outcome = out.truthful_outcome;
  }
  out.gain = out.truthful_regret - out.best_deviation_regret;
  out.violated = out.gain > tolerance;
  return out;
}

std::string to_string(AttackFamily family) {
  switch (family) {
    case AttackFamily::VwdChain:
      return "vwd-chain";
    case AttackFamily::FiniteRangeAttack:
      return "finite-range";
    case AttackFamily::OntoAttack:
      return "onto";
    case AttackFamily::FineGridAttack:
      return "fine-grid";
  }
  return "unknown";
}

AdversarialScript gen_vwd_chain(std::size_t n, double B, double delta,
                                double eps, double eps1) {
  if (n == 0) throw ValidationError("vwd chain needs at least one agent");
  if (!(eps1 > 0.0 && eps1 < eps && eps < delta && delta <= B)) {
    throw ValidationError("vwd chain needs 0 < eps1 < eps < delta <= B");
  }
  AdversarialScript s;
  s.family = AttackFamily::VwdChain;
  s.params = {{"n", static_cast<double>(n)}, {"B", B}, {"delta", delta},
              {"eps", eps}, {"eps1", eps1}};
  s.expected_property =
      "consecutive profiles differ in one agent whose old and new reports "
      "overlap in more than one point; a very weakly dominant mechanism must "
      "keep the outcome fixed along the chain, so its avgCost gap on the "
      "final profile is at least about B/2";

  std::vector<Interval> cur(n, Interval{0.0, eps});
  s.instances.push_back(validate_instance(cur, B, delta));
  for (std::size_t i = 0; i < n; ++i) {
    double prev_b = eps;
    for (std::int64_t t = 1;; ++t) {
      const double b = eps + static_cast<double>(t) * (delta - eps1);
      const Interval step{prev_b - eps1, std::min(b, B)};
      if (!(step == cur[i])) {
        cur[i] = step;
        s.instances.push_back(validate_instance(cur, B, delta));
      }
      if (b >= B) break;
      prev_b = b;
    }
    const Interval last{B - eps1, B};
    if (!(last == cur[i])) {
      cur[i] = last;
      s.instances.push_back(validate_instance(cur, B, delta));
    }
  }
  return s;
}

AdversarialScript gen_finite_range_attack(const std::array<double, 4>& g,
                                          double gamma, std::size_t n,
                                          LadderCase which, double B,
                                          double delta) {
  if (n == 0) throw ValidationError("finite-range ladder needs agents");
  for (std::size_t t = 0; t + 1 < g.size(); ++t) {
    if (!(g[t] < g[t + 1])) {
      throw ValidationError("finite-range points must be strictly increasing");
    }
  }
  if (!(g[0] >= 0.0 && g[3] <= B)) {
    throw ValidationError("finite-range points must lie in [0, B]");
  }
  // First gap that is the largest up to rounding.
  double widest = 0.0;
  for (std::size_t t = 0; t + 1 < g.size(); ++t) {
    widest = std::max(widest, g[t + 1] - g[t]);
  }
  std::size_t i = 0;
  while (g[i + 1] - g[i] < widest - position_tolerance(B)) ++i;
  const double lo = g[i];
  const double hi = g[i + 1];
  const double gap = hi - lo;
  if (!(gamma > 0.0 && gamma < 0.5 * gap && gamma < 0.5 * delta)) {
    throw ValidationError(
        "finite-range ladder needs 0 < gamma < min(gap/2, delta/2)");
  }
  if (gap - gamma > delta + position_tolerance(B)) {
    throw ValidationError("widened reports would exceed delta");
  }

  const std::size_t k = n / 2;
  AdversarialScript s;
  s.family = AttackFamily::FiniteRangeAttack;
  s.params = {{"g1", g[0]}, {"g2", g[1]}, {"g3", g[2]}, {"g4", g[3]},
              {"gamma", gamma}, {"n", static_cast<double>(n)}, {"B", B},
              {"delta", delta}, {"i", static_cast<double>(i)},
              {"g_i", g[i]}, {"g_i+1", g[i + 1]},
              {"case", which == LadderCase::One ? 1.0 : 2.0}};

  std::vector<Interval> cur(n);
  for (std::size_t a = 0; a < n; ++a) {
    cur[a] = a <= k ? Interval{lo, lo} : Interval{hi, hi};
  }
  s.instances.push_back(validate_instance(cur, B, delta));
  if (which == LadderCase::One) {
    s.expected_property =
        "the outcome stays at g_i along the ladder while the widened agents' "
        "realizations reach up to g_{i+1} - gamma";
    for (std::size_t a = 0; a <= k && a < n; ++a) {
      cur[a] = {lo, hi - gamma};
      s.focus_agents.push_back(a);
      s.instances.push_back(validate_instance(cur, B, delta));
    }
  } else {
    s.expected_property =
        "the outcome stays fixed along the mirrored ladder while the widened "
        "agents' realizations reach down to g_i + gamma";
    for (std::size_t a = k + 1; a < n; ++a) {
      cur[a] = {lo + gamma, hi};
      s.focus_agents.push_back(a);
      s.instances.push_back(validate_instance(cur, B, delta));
    }
  }
  return s;
}

AdversarialScript gen_onto_attack(double y_j, double ell, double r, double eps,
                                  std::size_t n, double B, double delta) {
  if (n < 2) throw ValidationError("onto attack needs at least two agents");
  if (!(y_j < ell && ell < r)) {
    throw ValidationError("onto attack needs y_j < ell < r");
  }
  if (!(r - ell < delta)) throw ValidationError("onto attack needs r - ell < delta");
  if (!(eps > 0.0 && eps < 0.5 * (r - ell))) {
    throw ValidationError("onto attack needs 0 < eps < (r - ell)/2");
  }
  const std::size_t j = n / 2;
  const std::size_t a = n - j - 1;  // interval agent
  const std::size_t b = a + 1;      // agent at z
  const double z = 0.5 * (ell + r) - eps;

  std::vector<Interval> prof;
  for (std::size_t t = 0; t < a; ++t) prof.push_back({y_j, y_j});
  prof.push_back({ell, r});
  prof.push_back({z, z});
  while (prof.size() < n) prof.push_back({B, B});

  AdversarialScript s;
  s.family = AttackFamily::OntoAttack;
  s.params = {{"y_j", y_j}, {"ell", ell}, {"r", r}, {"eps", eps},
              {"z", z}, {"n", static_cast<double>(n)}, {"B", B},
              {"delta", delta}};
  s.focus_agents = {a, b};
  s.expected_property =
      "an anonymous onto mechanism cannot make [ell, r] minimax dominant for "
      "the interval agent: one of the comparison profiles gives it a "
      "profitable exact report";
  const Instance base = validate_instance(prof, B, delta);
  s.instances.push_back(base);
  s.instances.push_back(base.with_agent(a, {ell, ell}));
  s.instances.push_back(base.with_agent(a, {r, r}));
  const double mirrored = 2.0 * z - ell;
  s.instances.push_back(base.with_agent(b, {mirrored, mirrored}));
  return s;
}

AdversarialScript gen_fine_grid_attack(double B, double delta, double spacing) {
  if (!(spacing > 0.0 && 3.0 * spacing <= delta + position_tolerance(B))) {
    throw ValidationError(
        "fine-grid attack needs a spacing of at most delta/3");
  }
  if (!(3.45 * spacing <= B)) {
    throw ValidationError("fine-grid attack needs B >= 3.45 * spacing");
  }
  AdversarialScript s;
  s.family = AttackFamily::FineGridAttack;
  s.params = {{"B", B}, {"delta", delta}, {"spacing", spacing}};
  s.expected_property =
      "truthfully reporting the wide interval is beaten by an exact report "
      "at the grid point two steps right of the left snap";
  s.focus_agents = {0};

  const Grid grid = build_grid_with_spacing(B, spacing, GridAnchor::Zero);
  const std::int64_t last_start =
      grid.last_index() - 4;  // keep g + 3.45s inside [0, B]
  std::vector<std::int64_t> starts{0};
  if (last_start > 0) {
    starts.push_back(last_start / 2);
    starts.push_back(last_start);
  }
  for (std::int64_t m : starts) {
    const double g = grid.point(m);
    const Interval wide{g + 0.45 * spacing, g + 3.45 * spacing};
    if (wide.b > B) continue;
    std::vector<Interval> solo{wide};
    s.instances.push_back(validate_instance(solo, B, delta));
    std::vector<Interval> trio{wide, {0.0, 0.0}, {B, B}};
    s.instances.push_back(validate_instance(trio, B, delta));
  }
  return s;
}

}  // namespace mmfl
