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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "mmfl/dominance.hpp"
#include "mmfl/experiment.hpp"
#include "mmfl/io.hpp"
#include "mmfl/optimal.hpp"

namespace mmfl {
namespace {

TEST(Rng, FixedSeedStreamIsReproducible) {
  Rng a(7), b(7), c(8);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01();
    EXPECT_EQ(x, b.uniform01());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Rng(7).next(), c.next());
}

TEST(Rng, MatchesTheStandardEngine) {
  // mt19937_64's 10000th output is fixed by the C++ standard.
  Rng r(5489);
  for (int i = 0; i < 9999; ++i) r.next();
  EXPECT_EQ(r.next(), 9981545732273789042ULL);
}

TEST(Rng, UniformIntStaysInRange) {
  Rng r(1);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto x = r.uniform_int(2, 6);
    ASSERT_GE(x, 2);
    ASSERT_LE(x, 6);
    ++seen[static_cast<std::size_t>(x - 2)];
  }
  for (int s : seen) EXPECT_GT(s, 100);
}

TEST(RandomInstance, DeterministicAndValid) {
  Rng a(7), b(7);
  const Instance x = random_instance(3, 1.0, 0.2, a);
  const Instance y = random_instance(3, 1.0, 0.2, b);
  EXPECT_EQ(x.agents(), y.agents());
  for (const auto& iv : x.agents()) {
    EXPECT_LE(iv.length(), 0.2);
    EXPECT_GE(iv.a, 0.0);
    EXPECT_LE(iv.b, 1.0);
  }
  Rng c(99);
  EXPECT_TRUE(random_instance(1, 1.0, 0.0, c).is_exact());
  EXPECT_THROW(random_instance(0, 1.0, 0.2, c), ValidationError);
}

TEST(ApproximationBound, Table) {
  using K = MechanismKind;
  EXPECT_DOUBLE_EQ(approximation_bound(MechanismSpec::make(K::EquispacedMedian, 1, 0.2),
                                       Objective::AvgCost),
                   0.15);
  EXPECT_DOUBLE_EQ(approximation_bound(MechanismSpec::make(K::EquispacedPhantomHalf, 1, 0.2),
                                       Objective::MaxCost),
                   0.25 + 0.075);
  EXPECT_DOUBLE_EQ(approximation_bound(MechanismSpec::make_constant(1, 0.2, 0.3),
                                       Objective::AvgCost),
                   0.7);
  EXPECT_DOUBLE_EQ(approximation_bound(MechanismSpec::make(K::EquispacedMedian, 1, 0.2),
                                       Objective::MaxCost),
                   1.0);
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.seed = 42;
  c.trials = 50;
  c.n_values = {3, 5};
  c.B = 1.0;
  c.delta_values = {0.2};
  c.objective = Objective::AvgCost;
  c.mechanisms = {"equispaced-median"};
  return c;
}

TEST(RunExperiment, EquispacedMedianWithinBound) {
  const auto rows = run_experiment(small_config());
  ASSERT_EQ(rows.size(), 100u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.within_bound);
    EXPECT_LE(r.gap, 0.15 + 1e-9);
    EXPECT_GE(r.max_regret, r.omv - 1e-12);
    EXPECT_DOUBLE_EQ(r.gap, r.max_regret - r.omv);
  }
}

TEST(RunExperiment, RowOrderAndSharedInstances) {
  ExperimentConfig c = small_config();
  c.trials = 2;
  c.delta_values = {0.1, 0.2};
  c.mechanisms = {"equispaced-median", "constant"};
  const auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 2u * 2 * 2 * 2);
  std::size_t i = 0;
  for (std::size_t t = 0; t < 2; ++t) {
    for (std::size_t n : {3u, 5u}) {
      for (double d : {0.1, 0.2}) {
        for (const char* m : {"equispaced-median", "constant:0.5"}) {
          EXPECT_EQ(rows[i].trial, t);
          EXPECT_EQ(rows[i].n, n);
          EXPECT_EQ(rows[i].delta, d);
          EXPECT_EQ(rows[i].mechanism, m);
          ++i;
        }
        // Both mechanisms in a cell see the same instance.
        EXPECT_EQ(rows[i - 1].omv, rows[i - 2].omv);
      }
    }
  }
}

TEST(RunExperiment, MaxCostPhantomHalfWithinBound) {
  ExperimentConfig c = small_config();
  c.objective = Objective::MaxCost;
  c.mechanisms = {"equispaced-phantom-half"};
  c.delta_values = {0.1, 0.3, 0.6};
  for (const auto& r : run_experiment(c)) EXPECT_TRUE(r.within_bound);
}

TEST(RunExperiment, OracleColumn) {
  ExperimentConfig c = small_config();
  c.trials = 3;
  c.oracle_step = 0.001;
  for (const auto& r : run_experiment(c)) {
    ASSERT_TRUE(r.oracle_omv.has_value());
    EXPECT_NEAR(*r.oracle_omv, r.omv, 1e-3);
    EXPECT_GE(*r.oracle_omv, r.omv - 1e-12);
  }
}

TEST(RunExperiment, ConfigErrors) {
  ExperimentConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW(run_experiment(c), ValidationError);
  c = small_config();
  c.delta_values = {1.5};
  EXPECT_THROW(run_experiment(c), ValidationError);
  c = small_config();
  c.mechanisms = {"nope"};
  EXPECT_THROW(run_experiment(c), ValidationError);
  c = small_config();
  c.n_values = {};
  EXPECT_THROW(run_experiment(c), ValidationError);
}

TEST(RunExperiment, ErrorsCarryRowCoordinates) {
  ExperimentConfig c = small_config();
  c.delta_values = {0.2};
  c.mechanisms = {"exact-median"};  // rejects interval reports
  try {
    run_experiment(c);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("trial 0"), std::string::npos) << what;
    EXPECT_NE(what.find("exact-median"), std::string::npos) << what;
  }
}

TEST(Csv, HeaderAndFormatting) {
  ExperimentRow r;
  r.trial = 3;
  r.n = 5;
  r.delta = 0.1;
  r.mechanism = "equispaced-median";
  r.p = 1.0 / 3.0;
  r.max_regret = 0.125;
  r.omv = 0.0;
  r.gap = 0.125;
  r.bound = 0.075;
  r.within_bound = false;
  std::ostringstream os;
  write_csv(os, {r});
  EXPECT_EQ(os.str(),
            "trial,n,delta,mechanism,p,max_regret,omv,gap,bound,within_bound\n"
            "3,5,0.1,equispaced-median,0.333333333333,0.125,0,0.125,0.075,false\n");
  r.oracle_omv = 0.5;
  std::ostringstream with;
  write_csv(with, {r});
  EXPECT_NE(with.str().find("within_bound,oracle_omv\n"), std::string::npos);
  EXPECT_NE(with.str().find(",false,0.5\n"), std::string::npos);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(0.15000000000000002), "0.15");
  EXPECT_EQ(format_number(123456789.123456), "123456789.123");
}

TEST(Csv, ByteIdenticalAcrossRuns) {
  auto render = [] {
    std::ostringstream os;
    write_csv(os, run_experiment(small_config()));
    return os.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(InstanceJson, RoundTrip) {
  const Instance inst = parse_instance_json(
      R"({"B":1.0,"delta":0.2,"agents":[{"a":0.12,"b":0.28}]})");
  EXPECT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst.agent(0), (Interval{0.12, 0.28}));
  const Instance again = parse_instance_json(instance_to_json(inst));
  EXPECT_EQ(again.agents(), inst.agents());
  EXPECT_EQ(again.delta(), inst.delta());
}

TEST(InstanceJson, Errors) {
  try {
    parse_instance_json(R"({"B":1,"delta":0.2,"agents":[{"a":0.3,"b":0.2}]})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.agent().value(), 0u);
  }
  EXPECT_THROW(parse_instance_json(R"({"B":1,"delta":0.2,"agents":[]})"), ValidationError);
  EXPECT_THROW(parse_instance_json(R"({"B":1,"delta":0.2})"), ValidationError);
  EXPECT_THROW(parse_instance_json(R"({"B":1,"delta":0.2,"agents":[{"a":"x","b":1}]})"),
               ValidationError);
  EXPECT_THROW(parse_instance_json("{not json"), ValidationError);
  EXPECT_THROW(load_instance("/nonexistent/instance.json"), ValidationError);
}

TEST(ConfigJson, ParsesAllFields) {
  const ExperimentConfig c = parse_config_json(R"({
    "seed": 7, "trials": 4, "n_values": [1, 3], "B": 2.0,
    "delta_values": [0.1, 0.4], "objective": "max",
    "mechanisms": ["equispaced-phantom-half", "constant:1.5"],
    "oracle_step": 0.01})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.trials, 4u);
  EXPECT_EQ(c.n_values, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(c.B, 2.0);
  EXPECT_EQ(c.objective, Objective::MaxCost);
  EXPECT_EQ(c.mechanisms.size(), 2u);
  ASSERT_TRUE(c.oracle_step.has_value());
  EXPECT_EQ(*c.oracle_step, 0.01);
  EXPECT_THROW(parse_config_json(R"({"seed":1,"trials":0,"n_values":[1],"B":1,
      "delta_values":[0.1],"objective":"avg","mechanisms":["constant"]})"),
               ValidationError);
}

TEST(ChainExperiment, ConstantMaxCostGapNearHalf) {
  const AdversarialScript s = gen_vwd_chain(5, 1.0, 0.2, 0.05, 0.01);
  const Instance& last = s.instances.back();
  const auto spec = MechanismSpec::make_constant(1.0, 0.2, 0.5);
  const double p = run_mechanism(spec, last).p;
  const double gap = max_regret(last, p, Objective::MaxCost).value -
                     solve_minimax(last, Objective::MaxCost).omv;
  EXPECT_NEAR(gap, 0.5 - 0.005, 1e-12);
}

}  // namespace
}  // namespace mmfl
