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

#include "mmfl/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "mmfl/optimal.hpp"

namespace mmfl {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ValidationError("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Instance random_instance(std::size_t n, double B, double delta, Rng& rng) {
  if (n == 0) throw ValidationError("random instance needs n >= 1");
  if (!(B > 0.0) || !(delta >= 0.0 && delta <= B)) {
    throw ValidationError("random instance needs B > 0 and delta in [0, B]");
  }
  std::vector<Interval> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = delta * rng.uniform01();
    const double a = (B - w) * rng.uniform01();
    agents.push_back({a, std::min(B, a + w)});
  }
  return validate_instance(agents, B, delta);
}

double approximation_bound(const MechanismSpec& spec, Objective objective) {
  const bool avg = objective == Objective::AvgCost;
  switch (spec.kind) {
    case MechanismKind::Constant:
      return std::max(spec.constant, spec.B - spec.constant);
    case MechanismKind::EquispacedMedian:
      if (avg) return 0.75 * spec.delta;
      break;
    case MechanismKind::EquispacedPhantomHalf:
      if (!avg) return 0.25 * spec.B + 0.375 * spec.delta;
      break;
    case MechanismKind::ExactMedian:
      if (avg) return 0.0;
      break;
    case MechanismKind::ExactPhantomHalf:
      if (!avg) return 0.25 * spec.B;
      break;
    case MechanismKind::FineEquispacedMedian:
      break;
  }
  return spec.B;
}

void validate_config(const ExperimentConfig& config) {
  if (config.trials < 1) throw ValidationError("config: trials must be >= 1");
  if (!(config.B > 0.0)) throw ValidationError("config: B must be positive");
  if (config.n_values.empty()) throw ValidationError("config: n_values is empty");
  if (config.delta_values.empty()) {
    throw ValidationError("config: delta_values is empty");
  }
  if (config.mechanisms.empty()) {
    throw ValidationError("config: mechanisms is empty");
  }
  for (std::size_t n : config.n_values) {
    if (n < 1) throw ValidationError("config: every n must be >= 1");
  }
  for (double d : config.delta_values) {
    if (!(d >= 0.0 && d <= config.B)) {
      throw ValidationError("config: every delta must lie in [0, B]");
    }
  }
  if (config.oracle_step && !(*config.oracle_step > 0.0)) {
    throw ValidationError("config: oracle_step must be positive");
  }
  for (const auto& name : config.mechanisms) {
    parse_mechanism(name, config.B, config.delta_values.front());
  }
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  std::vector<ExperimentRow> rows;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    for (std::size_t n : config.n_values) {
      for (std::size_t di = 0; di < config.delta_values.size(); ++di) {
        const double delta = config.delta_values[di];
        std::uint64_t s = mix_seed(config.seed);
        s = mix_seed(s ^ trial);
        s = mix_seed(s ^ n);
        s = mix_seed(s ^ di);
        Rng rng(s);
        const Instance instance = random_instance(n, config.B, delta, rng);
        const SolveResult opt = solve_minimax(instance, config.objective);
        std::optional<double> oracle;
        if (config.oracle_step) {
          oracle = grid_search_minimax(instance, config.objective,
                                       *config.oracle_step)
                       .omv;
        }
        for (const auto& name : config.mechanisms) {
          auto annotate = [&](const std::exception& e) {
            std::ostringstream os;
            os << "trial " << trial << ", n " << n << ", delta " << delta
               << ", mechanism " << name << ": " << e.what();
            return os.str();
          };
          try {
            const MechanismSpec spec = parse_mechanism(name, config.B, delta);
            ExperimentRow row;
            row.trial = trial;
            row.n = n;
            row.delta = delta;
            row.mechanism = spec.name();
            row.p = run_mechanism(spec, instance).p;
            row.max_regret = max_regret(instance, row.p, config.objective).value;
            row.omv = opt.omv;
            row.gap = row.max_regret - row.omv;
            row.bound = approximation_bound(spec, config.objective);
            row.within_bound = row.gap <= row.bound + 1e-9;
            row.oracle_omv = oracle;
            rows.push_back(std::move(row));
          } catch (const ValidationError& e) {
            throw ValidationError(annotate(e));
          } catch (const InvariantViolation& e) {
            throw InvariantViolation(annotate(e));
          }
        }
      }
    }
  }
  return rows;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  const bool oracle = std::any_of(rows.begin(), rows.end(), [](const auto& r) {
    return r.oracle_omv.has_value();
  });
  out << "trial,n,delta,mechanism,p,max_regret,omv,gap,bound,within_bound";
  if (oracle) out << ",oracle_omv";
  out << '\n';
  for (const auto& r : rows) {
    out << r.trial << ',' << r.n << ',' << format_number(r.delta) << ','
        << r.mechanism << ',' << format_number(r.p) << ','
        << format_number(r.max_regret) << ',' << format_number(r.omv) << ','
        << format_number(r.gap) << ',' << format_number(r.bound) << ','
        << (r.within_bound ? "true" : "false");
    if (oracle) {
      out << ',' << (r.oracle_omv ? format_number(*r.oracle_omv) : "");
    }
    out << '\n';
  }
}

}  // namespace mmfl
