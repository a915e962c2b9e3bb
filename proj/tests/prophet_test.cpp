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

#include "pandora/prophet.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "pandora/oracle.hpp"

namespace pandora {
namespace {

const DiscreteDist kBit({{0.0, 0.5}, {1.0, 0.5}});
const DiscreteDist kUniform4({{1.0, 0.25}, {2.0, 0.25}, {3.0, 0.25}, {4.0, 0.25}});

BoxSpec free_box(const DiscreteDist& d, TypeId type = 0) {
  std::vector<JointAtom> atoms;
  for (const Atom& a : d.atoms()) atoms.push_back({a.value, 0.0, a.prob});
  return BoxSpec::single_type(JointVC(std::move(atoms)), type);
}

Instance free_instance(const std::vector<DiscreteDist>& ds, KeepConstraint keep = KeepOne{}) {
  Instance inst;
  for (const DiscreteDist& d : ds) inst.boxes.push_back(free_box(d));
  inst.keep = std::move(keep);
  return inst;
}

Realization values(std::initializer_list<double> vs) {
  Realization r;
  for (double v : vs) r.push_back({0, v, 0.0});
  return r;
}

double expected_positive_max(const Instance& inst) {
  double total = 0.0;
  for_each_realization(inst, [&](const Realization& r, double p) {
    double best = 0.0;
    for (const Outcome& o : r) best = std::max(best, o.value);
    total += p * best;
  });
  return total;
}

TEST(SingleItemThreshold, Examples) {
  EXPECT_DOUBLE_EQ(single_item_threshold(std::vector<DiscreteDist>{kUniform4}), 3.0);
  EXPECT_DOUBLE_EQ(single_item_threshold(std::vector<DiscreteDist>(
                       4, DiscreteDist::point_mass(5.0))),
                   5.0);
  EXPECT_DOUBLE_EQ(single_item_threshold(std::vector<DiscreteDist>{kBit, kBit}), 1.0);
}

TEST(SingleItemThreshold, EmptyThrows) {
  EXPECT_THROW(single_item_threshold(std::vector<DiscreteDist>{}), std::invalid_argument);
}

TEST(SingleItemThreshold, NegativeSupportClampsAtZero) {
  const DiscreteDist d({{-2.0, 0.5}, {-1.0, 0.5}});
  EXPECT_EQ(single_item_threshold(std::vector<DiscreteDist>{d}), 0.0);
}

TEST(SingleItemPlan, MixesWhenMedianPointIsTooHigh) {
  // Pr[v >= 10] = 0.41 is the level closest to 1/2, but keeping only 10 is
  // worth 4.1 < E[v] / 2 = 4.9705. The plan mixes 9.9 (weight 9/59) and 10
  // (weight 50/59) so that Pr[keep] = 1/2, worth 294.469 / 59 = 4.991.
  const std::vector<DiscreteDist> ds{DiscreteDist({{9.9, 0.59}, {10.0, 0.41}})};
  EXPECT_DOUBLE_EQ(single_item_threshold(ds), 10.0);
  const Instance inst = free_instance(ds);
  const ThresholdPlan plan = single_item_plan(inst);
  ASSERT_EQ(plan.branches().size(), 2u);
  EXPECT_EQ(plan.branches()[0].label, "lower");
  EXPECT_EQ(plan.threshold(0, 0, 0), 9.9);
  EXPECT_NEAR(plan.branches()[0].weight, 9.0 / 59.0, 1e-12);
  EXPECT_EQ(plan.threshold(1, 0, 0), 10.0);
  EXPECT_NEAR(plan.branches()[1].weight, 50.0 / 59.0, 1e-12);
  EXPECT_NEAR(exact_policy_value(ThresholdPolicy(inst, plan)), 294.469 / 59.0, 1e-12);
}

TEST(SingleItemPlan, DeterministicWhenMedianPointSuffices) {
  const Instance inst = free_instance({kBit, kBit});
  const ThresholdPlan plan = single_item_plan(inst);
  ASSERT_EQ(plan.branches().size(), 1u);
  EXPECT_EQ(plan.threshold(0, 1, 0), 1.0);
}

TEST(PartitionPlan, MixedGroupsYieldProductBranches) {
  const DiscreteDist d({{9.9, 0.59}, {10.0, 0.41}});
  Instance inst;
  inst.boxes = {free_box(d, 0), free_box(d, 1)};
  inst.keep = KeepPartition{{{0, 0}, {1, 1}}, {1, 1}};
  const ThresholdPlan plan = partition_matroid_thresholds(inst);
  ASSERT_EQ(plan.branches().size(), 4u);
  double total = 0.0;
  for (const auto& b : plan.branches()) total += b.weight;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(plan.branches()[0].weight, (9.0 / 59.0) * (9.0 / 59.0), 1e-12);
  EXPECT_EQ(plan.branches()[0].label, "partition:g0lower:g1lower");
  EXPECT_NEAR(exact_policy_value(ThresholdPolicy(inst, plan)), 2.0 * 294.469 / 59.0, 1e-12);
}

TEST(RunThresholdPolicy, SingleKeepsFirstPassage) {
  const Instance inst = free_instance({kUniform4, kUniform4, kUniform4});
  const ThresholdPlan plan = ThresholdPlan::uniform(PlanMode::kSingle, inst, 3.0, KeepOne{});
  const PolicyTrace trace = run_threshold_policy(inst, plan, values({2, 4, 5}), 0);
  ASSERT_EQ(trace.kept.size(), 1u);
  EXPECT_EQ(trace.kept[0], 1u);
  EXPECT_DOUBLE_EQ(trace.utility, 4.0);
  EXPECT_EQ(trace.opened.size(), 3u);

  const PolicyTrace none = run_threshold_policy(inst, plan, values({1, 2, 2}), 0);
  EXPECT_TRUE(none.kept.empty());
  EXPECT_EQ(none.utility, 0.0);
}

TEST(RunThresholdPolicy, KUniformFillsToCapacity) {
  const Instance inst =
      free_instance({kUniform4, kUniform4, kUniform4}, KeepCardinality{2});
  const ThresholdPlan plan =
      ThresholdPlan::uniform(PlanMode::kKUniform, inst, 1.0, KeepCardinality{2});
  const PolicyTrace trace = run_threshold_policy(inst, plan, values({1, 1, 1}), 0);
  EXPECT_EQ(trace.kept, (std::vector<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(trace.utility, 2.0);
}

TEST(ThresholdPlan, Validation) {
  const Instance inst = free_instance({kBit});
  EXPECT_THROW(ThresholdPlan::uniform(PlanMode::kSingle, inst, -1.0, KeepOne{}),
               std::invalid_argument);
  ThresholdBranch b;
  b.thresholds = {{{0, 1.0}}};
  b.weight = 0.5;
  EXPECT_THROW(ThresholdPlan(PlanMode::kCustom, {b}), std::invalid_argument);
  EXPECT_THROW(ThresholdPlan(PlanMode::kCustom, {}), std::invalid_argument);
  b.weight = 1.0;
  const ThresholdPlan ok(PlanMode::kCustom, {b});
  EXPECT_TRUE(ok.covers(inst));
  EXPECT_THROW(ok.threshold(0, 0, 3), std::out_of_range);
  EXPECT_FALSE(ok.covers(free_instance({kBit, kBit})));
}

TEST(KUniformThreshold, Examples) {
  const std::vector<DiscreteDist> four(4, kBit);
  EXPECT_DOUBLE_EQ(k_uniform_threshold(four, 2), 1.0);
  // k = n keeps everything nonnegative.
  EXPECT_DOUBLE_EQ(k_uniform_threshold(four, 4), 0.0);
  const std::vector<DiscreteDist> shifted{DiscreteDist({{2.0, 0.5}, {3.0, 0.5}}),
                                          DiscreteDist({{1.0, 0.5}, {4.0, 0.5}})};
  EXPECT_DOUBLE_EQ(k_uniform_threshold(shifted, 2), 1.0);
}

TEST(KUniformThreshold, RejectsBadK) {
  const std::vector<DiscreteDist> two(2, kBit);
  EXPECT_THROW(k_uniform_threshold(two, 0), std::invalid_argument);
  EXPECT_THROW(k_uniform_threshold(two, 3), std::invalid_argument);
}

TEST(KUniformThreshold, MeetsTargetAtLargestBreakpoint) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    std::vector<DiscreteDist> ds;
    for (std::size_t i = 0; i < n; ++i) ds.push_back(testing::random_dist(rng, 3, 0.5, 5.0));
    const int k = 1 + static_cast<int>(rng.below(n - 1));  // k < n
    const double kd = k;
    const double target = std::max(kd - std::sqrt(2.0 * kd * std::log(kd)), kd / 2.0);
    auto count = [&](double b) {
      double c = 0.0;
      for (const auto& d : ds) c += tail(d, b);
      return c;
    };
    const double tau = k_uniform_threshold(ds, k);
    EXPECT_GE(count(tau), target - 1e-12);
    for (const auto& d : ds) {
      for (const Atom& a : d.atoms()) {
        if (a.value > tau) { EXPECT_LT(count(a.value), target - 1e-12); }
      }
    }
  }
}

TEST(KUniformThreshold, KEqualsOneOnIidMatchesSingleItem) {
  const std::vector<DiscreteDist> two{kBit, kBit};
  EXPECT_DOUBLE_EQ(k_uniform_threshold(two, 1), single_item_threshold(two));
}

TEST(KnapsackThresholds, AllLargeIsSingleItem) {
  KeepKnapsack k{{{0, 1.0}}, 1.0};
  const Instance inst = free_instance({kUniform4, kBit, kUniform4}, k);
  const ThresholdPlan plan = knapsack_thresholds(inst);
  ASSERT_EQ(plan.branches().size(), 1u);
  EXPECT_EQ(plan.branches()[0].label, "large");
  EXPECT_DOUBLE_EQ(plan.branches()[0].weight, 1.0);
  const double tau =
      single_item_threshold(std::vector<DiscreteDist>{kUniform4, kBit, kUniform4});
  for (std::size_t i = 0; i < inst.size(); ++i) EXPECT_EQ(plan.threshold(0, i, 0), tau);
}

TEST(KnapsackThresholds, EqualSmallSizesCapAtHalf) {
  const std::size_t n = 4;
  KeepKnapsack k{{{0, 0.25}}, 1.0};
  const Instance inst = free_instance(std::vector<DiscreteDist>(n, kUniform4), k);
  const ThresholdPlan plan = knapsack_thresholds(inst);
  ASSERT_EQ(plan.branches().size(), 1u);
  EXPECT_EQ(plan.branches()[0].label, "small");
  const PolicyTrace trace = run_threshold_policy(inst, plan, values({4, 4, 4, 4}), 0);
  EXPECT_EQ(trace.kept.size(), n / 2);
}

TEST(KnapsackThresholds, MixedRegimesStayFeasible) {
  Instance inst;
  inst.boxes = {free_box(kUniform4, 0), free_box(kUniform4, 1)};
  inst.keep = KeepKnapsack{{{0, 1.0}, {1, 0.4}}, 1.0};
  const ThresholdPlan plan = knapsack_thresholds(inst);
  ASSERT_EQ(plan.branches().size(), 2u);
  EXPECT_DOUBLE_EQ(plan.branches()[0].weight, 0.5);
  EXPECT_EQ(plan.threshold(0, 1, 1), kNeverKeep);
  EXPECT_EQ(plan.threshold(1, 0, 0), kNeverKeep);
  const ThresholdPolicy policy(inst, plan);
  const auto weights = policy.branch_weights();
  for (std::uint64_t s = 0; s < 100000; ++s) {
    Rng rng = Rng::for_trial(4, s);
    const std::size_t branch = draw_branch(weights, rng);
    const Realization r = sample_realization(inst, rng);
    const PolicyTrace trace = policy.run(r, branch);
    ASSERT_TRUE(trace_violations(inst, r, trace).empty());
  }
}

TEST(KnapsackThresholds, RequiresKnapsack) {
  EXPECT_THROW(knapsack_thresholds(free_instance({kBit})), std::invalid_argument);
  EXPECT_THROW(k_uniform_thresholds(free_instance({kBit})), std::invalid_argument);
  EXPECT_THROW(partition_matroid_thresholds(free_instance({kBit})), std::invalid_argument);
}

TEST(PartitionThresholds, SingleGroupCapOneIsSingleItem) {
  KeepPartition p{{{0, 0}}, {1}};
  const Instance inst = free_instance({kUniform4, kBit}, p);
  const ThresholdPlan plan = partition_matroid_thresholds(inst);
  const double tau = single_item_threshold(std::vector<DiscreteDist>{kUniform4, kBit});
  EXPECT_EQ(plan.threshold(0, 0, 0), tau);
  EXPECT_EQ(plan.threshold(0, 1, 0), tau);
}

TEST(PartitionThresholds, OwnGroupsUseOwnThresholds) {
  Instance inst;
  inst.boxes = {free_box(kUniform4, 0), free_box(kBit, 1)};
  inst.keep = KeepPartition{{{0, 0}, {1, 1}}, {1, 1}};
  const ThresholdPlan plan = partition_matroid_thresholds(inst);
  EXPECT_EQ(plan.threshold(0, 0, 0), single_item_threshold(std::vector<DiscreteDist>{kUniform4}));
  EXPECT_EQ(plan.threshold(0, 1, 1), single_item_threshold(std::vector<DiscreteDist>{kBit}));
  const PolicyTrace trace = run_threshold_policy(inst, plan, {{0, 4.0, 0.0}, {1, 1.0, 0.0}}, 0);
  EXPECT_EQ(trace.kept.size(), 2u);
}

TEST(PartitionThresholds, TwoIidGroups) {
  Instance inst;
  inst.boxes = {free_box(kBit, 0), free_box(kBit, 0), free_box(kBit, 1), free_box(kBit, 1)};
  inst.keep = KeepPartition{{{0, 0}, {1, 1}}, {1, 1}};
  const ThresholdPlan plan = partition_matroid_thresholds(inst);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(plan.threshold(0, i, i < 2 ? 0 : 1), 1.0);
  }
}

TEST(PartitionThresholds, ZeroCapNeverKeeps) {
  Instance inst;
  inst.boxes = {free_box(kBit, 0), free_box(kBit, 1)};
  inst.keep = KeepPartition{{{0, 0}, {1, 1}}, {0, 1}};
  const ThresholdPlan plan = partition_matroid_thresholds(inst);
  EXPECT_EQ(plan.threshold(0, 0, 0), kNeverKeep);
}

TEST(RoundsGating, OpensOnlyOnePerRound) {
  Instance inst = free_instance({kUniform4, kUniform4, kUniform4, kUniform4},
                                KeepCardinality{2});
  inst.open = OpenOnePerRound{2};
  const ThresholdPlan plan =
      ThresholdPlan::uniform(PlanMode::kKUniform, inst, 2.0, KeepCardinality{2});
  const PolicyTrace trace = run_threshold_policy(inst, plan, values({1, 4, 3, 3}), 0);
  EXPECT_EQ(trace.opened, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(trace.kept, (std::vector<std::size_t>{2}));
}

// Samuel-Cahn: the single-item plan keeps at least half of E[max(0, max v)].
TEST(SingleItemProperty, HalfOfExpectedMaximum) {
  Rng rng(32);
  testing::Shape shape;
  shape.max_boxes = 6;
  shape.max_types = 2;
  shape.max_support = 2;
  shape.max_cost = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = testing::random_instance(rng, shape);
    const ThresholdPolicy policy(inst, single_item_plan(inst));
    EXPECT_GE(exact_policy_value(policy), 0.5 * expected_positive_max(inst) - 1e-9);
  }
}

TEST(SingleItemProperty, ShiftingUpDoesNotLowerThreshold) {
  Rng rng(33);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<DiscreteDist> ds, up;
    const double delta = 0.25 * static_cast<double>(1 + rng.below(8));
    for (std::size_t i = 0; i < n; ++i) {
      ds.push_back(testing::random_dist(rng, 3));
      std::vector<Atom> shifted;
      for (const Atom& a : ds.back().atoms()) shifted.push_back({a.value + delta, a.prob});
      up.emplace_back(shifted);
    }
    EXPECT_GE(single_item_threshold(up), single_item_threshold(ds) - 1e-12);
  }
}

}  // namespace
}  // namespace pandora
