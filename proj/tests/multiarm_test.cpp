// Copyright 2026 The Authors.
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

#include "pandora/multiarm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "pandora/oracle.hpp"
#include "pandora/stats.hpp"

namespace pandora {
namespace {

const DiscreteDist kOneTwo({{1.0, 0.5}, {2.0, 0.5}});

MultiArmInstance deterministic_pair(int rounds) {
  return {"det", rounds, {{1.0, DiscreteDist::point_mass(10.0)},
                          {1.0, DiscreteDist::point_mass(5.0)}}};
}

TEST(Validate, RejectsBadArms) {
  EXPECT_NO_THROW(validate(deterministic_pair(2)));
  EXPECT_THROW(validate(MultiArmInstance{"x", 1, {}}), std::invalid_argument);
  EXPECT_THROW(validate(MultiArmInstance{"x", 1, {{-1.0, kOneTwo}}}), std::invalid_argument);
  EXPECT_THROW(validate(MultiArmInstance{"x", -1, {{0.0, kOneTwo}}}), std::invalid_argument);
  EXPECT_THROW(validate(MultiArmInstance{"x", 1, {{0.0, DiscreteDist::point_mass(0.0)}}}),
               std::invalid_argument);
}

TEST(ProphetGreedyStep, Examples) {
  const MultiArmInstance one{"one", 3, {{0.5, kOneTwo}}};
  EXPECT_EQ(prophet_greedy_step(one, std::vector<double>{2.0}), 0u);

  const MultiArmInstance pair = deterministic_pair(2);
  EXPECT_EQ(prophet_greedy_step(pair, std::vector<double>{0.0, 0.0}), 0u);
  EXPECT_EQ(prophet_greedy_step(pair, std::vector<double>{10.0, 0.0}), 1u);

  // Arm 0 already holds its maximum: gain -0.5 beats arm 1's -1.
  const MultiArmInstance saturated{"sat", 2, {{0.5, DiscreteDist({{1.0, 0.5}, {3.0, 0.5}})},
                                              {2.0, DiscreteDist::point_mass(1.0)}}};
  EXPECT_EQ(prophet_greedy_step(saturated, std::vector<double>{3.0, 0.0}), 0u);
  // Ties go to the lower index.
  const MultiArmInstance twins{"twins", 1, {{0.0, kOneTwo}, {0.0, kOneTwo}}};
  EXPECT_EQ(prophet_greedy_step(twins, std::vector<double>{0.0, 0.0}), 0u);
}

TEST(SimulateProphet, Examples) {
  const MultiArmInstance pair = deterministic_pair(2);
  Rng rng(1);
  const MultiArmTrace trace = simulate_prophet(pair, sample_draws(pair, rng));
  EXPECT_DOUBLE_EQ(trace.utility, 13.0);
  EXPECT_EQ(trace.openings.size(), 2u);
  EXPECT_TRUE(multiarm_violations(pair, trace).empty());

  const MultiArmInstance empty = deterministic_pair(0);
  const MultiArmTrace none = simulate_prophet(empty, sample_draws(empty, rng));
  EXPECT_EQ(none.utility, 0.0);
  EXPECT_TRUE(none.openings.empty());

  EXPECT_DOUBLE_EQ(exact_prophet_value(MultiArmInstance{"m1", 2, {{0.0, kOneTwo}}}), 1.75);
}

TEST(SimulateProphet, MonteCarloMatchesExact) {
  Rng gen(61);
  for (int trial = 0; trial < 5; ++trial) {
    const MultiArmInstance inst = testing::random_multiarm(gen, 3, 4, 3, 1.0);
    std::vector<double> u(50000);
    for (std::size_t s = 0; s < u.size(); ++s) {
      Rng rng = Rng::for_trial(trial, s);
      u[s] = simulate_prophet(inst, sample_draws(inst, rng)).utility;
    }
    const Summary sum = summarize(u);
    EXPECT_LE(std::abs(sum.mean - exact_prophet_value(inst)), sum.ci_halfwidth + 1e-12);
  }
}

TEST(EstimateArmThresholds, ConvergesToHalfProphetValue) {
  const MultiArmInstance inst{"m1", 2, {{0.0, kOneTwo}}};
  const ArmThresholds th = estimate_arm_thresholds(inst, 100000, 7);
  EXPECT_EQ(th.sample_count, 100000u);
  EXPECT_EQ(th.seed, 7u);
  EXPECT_DOUBLE_EQ(th.tau[0], th.prophet_value[0] / 2.0);
  EXPECT_LE(std::abs(th.tau[0] - 0.875), th.ci_halfwidth[0] / 2.0 + 1e-12);
  EXPECT_GT(th.ci_halfwidth[0], 0.0);
}

TEST(EstimateArmThresholds, DeterministicArmsAreExact) {
  const ArmThresholds th = estimate_arm_thresholds(deterministic_pair(2), 1, 3);
  EXPECT_DOUBLE_EQ(th.tau[0], 5.0);
  EXPECT_DOUBLE_EQ(th.tau[1], 2.5);
  EXPECT_EQ(th.ci_halfwidth[0], 0.0);
  EXPECT_EQ(th.ci_halfwidth[1], 0.0);
}

TEST(EstimateArmThresholds, CiShrinksWithSamples) {
  const MultiArmInstance inst{"m1", 2, {{0.0, kOneTwo}}};
  const double a = estimate_arm_thresholds(inst, 20000, 5).ci_halfwidth[0];
  const double b = estimate_arm_thresholds(inst, 40000, 5).ci_halfwidth[0];
  EXPECT_NEAR(b / a, 1.0 / std::sqrt(2.0), 0.05);
}

TEST(EstimateArmThresholds, RejectsZeroSamples) {
  EXPECT_THROW(estimate_arm_thresholds(deterministic_pair(1), 0, 1), std::invalid_argument);
}

TEST(EstimateArmThresholds, SameSeedSameResult) {
  const MultiArmInstance inst{"m", 3, {{0.0, kOneTwo}, {0.0, DiscreteDist({{0.5, 0.5}, {4.0, 0.5}})}}};
  const ArmThresholds a = estimate_arm_thresholds(inst, 5000, 11);
  const ArmThresholds b = estimate_arm_thresholds(inst, 5000, 11);
  EXPECT_EQ(a.tau, b.tau);
  EXPECT_EQ(a.ci_halfwidth, b.ci_halfwidth);
}

TEST(RunMultiArmPolicy, Examples) {
  Rng rng(1);
  const MultiArmInstance single{"s", 1, {{1.0, DiscreteDist::point_mass(5.0)}}};
  ArmThresholds th;
  th.tau = {2.0};
  EXPECT_DOUBLE_EQ(run_multiarm_policy(single, th, sample_draws(single, rng)).utility, 4.0);

  th.tau = {7.0};
  const MultiArmTrace idle = run_multiarm_policy(single, th, sample_draws(single, rng));
  EXPECT_TRUE(idle.openings.empty());
  EXPECT_EQ(idle.utility, 0.0);

  const MultiArmInstance pair = deterministic_pair(2);
  th.tau = {4.5, 2.0};
  const MultiArmTrace both = run_multiarm_policy(pair, th, sample_draws(pair, rng));
  EXPECT_DOUBLE_EQ(both.utility, 13.0);
  ASSERT_EQ(both.openings.size(), 2u);
  EXPECT_EQ(both.openings[0].arm, 0u);
  EXPECT_EQ(both.openings[1].arm, 1u);
}

TEST(RunMultiArmPolicy, KeepsStrictlyAboveThreshold) {
  Rng rng(2);
  const MultiArmInstance inst{"s", 3, {{0.0, DiscreteDist::point_mass(2.0)}}};
  ArmThresholds th;
  th.tau = {2.0};
  const MultiArmTrace trace = run_multiarm_policy(inst, th, sample_draws(inst, rng));
  EXPECT_FALSE(trace.kept[0]);
  EXPECT_TRUE(trace.openings.empty());
}

TEST(RunMultiArmPolicy, MonteCarloMatchesExact) {
  Rng gen(62);
  for (int trial = 0; trial < 5; ++trial) {
    const MultiArmInstance inst = testing::random_multiarm(gen, 3, 5, 3, 0.5);
    ArmThresholds th;
    for (const Arm& arm : inst.arms) th.tau.push_back(expect(arm.values) / 2.0);
    std::vector<double> u(50000);
    for (std::size_t s = 0; s < u.size(); ++s) {
      Rng rng = Rng::for_trial(trial, s);
      u[s] = run_multiarm_policy(inst, th, sample_draws(inst, rng)).utility;
    }
    const Summary sum = summarize(u);
    EXPECT_LE(std::abs(sum.mean - exact_multiarm_policy_value(inst, th.tau)),
              sum.ci_halfwidth + 1e-12);
  }
}

TEST(MultiArmProperty, TracesRespectConstraints) {
  Rng gen(63);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiArmInstance inst = testing::random_multiarm(gen, 4, 8, 3, 1.0);
    const ArmThresholds th = estimate_arm_thresholds(inst, 500, trial);
    for (std::uint64_t s = 0; s < 200; ++s) {
      Rng rng = Rng::for_trial(trial, s);
      const ArmDraws draws = sample_draws(inst, rng);
      const MultiArmTrace policy = run_multiarm_policy(inst, th, draws);
      ASSERT_TRUE(multiarm_violations(inst, policy).empty());
      for (std::size_t t = 0; t < inst.arms.size(); ++t) {
        if (policy.kept[t]) {
          EXPECT_GT(policy.kept_value[t], th.tau[t]);
          for (const auto& o : policy.openings) {
            if (o.arm == t) { EXPECT_LE(o.round, policy.kept_round[t]); }
          }
        }
      }
      ASSERT_TRUE(multiarm_violations(inst, simulate_prophet(inst, draws)).empty());
    }
  }
}

TEST(MultiArmProperty, GreedyProphetIsOptimal) {
  Rng gen(64);
  for (int trial = 0; trial < 200; ++trial) {
    const MultiArmInstance inst = testing::random_multiarm(gen, 2, 3, 2, trial % 2 ? 1.0 : 0.0);
    ASSERT_NEAR(exact_prophet_value(inst), optimal_opening_value(inst), 1e-9)
        << "trial " << trial;
  }
}

TEST(MultiArmProperty, OfflineOptDominatesProphet) {
  Rng gen(65);
  for (int trial = 0; trial < 40; ++trial) {
    const MultiArmInstance inst = testing::random_multiarm(gen, 2, 3, 2, 1.0);
    EXPECT_GE(offline_opt(as_pandora_instance(inst)), optimal_opening_value(inst) - 1e-9);
  }
}

TEST(CapMultiArm, CapsAndRejectsNonPositiveSigma) {
  const MultiArmInstance pair = deterministic_pair(2);
  const std::vector<double> sigmas = arm_sigmas(pair);
  const MultiArmInstance capped = cap_multiarm(pair, sigmas);
  EXPECT_EQ(capped.arms[0].cost, 0.0);
  EXPECT_EQ(capped.arms[0].values, DiscreteDist::point_mass(9.0));
  const MultiArmInstance hopeless{"h", 1, {{6.0, DiscreteDist::point_mass(5.0)}}};
  EXPECT_THROW(cap_multiarm(hopeless, arm_sigmas(hopeless)), std::invalid_argument);
}

TEST(AsPandoraInstance, Layout) {
  const Instance inst = as_pandora_instance(deterministic_pair(3));
  ASSERT_EQ(inst.size(), 6u);
  EXPECT_EQ(std::get<OpenOnePerRound>(inst.open).rounds, 3);
  EXPECT_EQ(inst.boxes[3].branches()[0].type, 1);
  EXPECT_DOUBLE_EQ(offline_opt(inst), 13.0);
}

}  // namespace
}  // namespace pandora
