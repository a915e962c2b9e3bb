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

#include "pandora/reservation.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "generators.hpp"
#include "pandora/oracle.hpp"

namespace pandora {
namespace {

const DiscreteDist kCoin({{0.0, 0.5}, {2.0, 0.5}});

BoxSpec costly_coin(double cost) {
  return BoxSpec::single_type(JointVC({{0.0, cost, 0.5}, {2.0, cost, 0.5}}));
}

TEST(SolveSigma, Examples) {
  EXPECT_DOUBLE_EQ(solve_sigma(kCoin, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(solve_sigma(kCoin, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(solve_sigma(kCoin, 0.5), 1.0);
}

TEST(SolveSigma, BelowSupportIsLinear) {
  EXPECT_DOUBLE_EQ(solve_sigma(kCoin, 1.5), -0.5);
  EXPECT_DOUBLE_EQ(solve_sigma(DiscreteDist::point_mass(3.0), 4.0), -1.0);
}

TEST(SolveSigma, RejectsBadCost) {
  EXPECT_THROW(solve_sigma(kCoin, -0.1), std::invalid_argument);
  EXPECT_THROW(solve_sigma(kCoin, NAN), std::invalid_argument);
  EXPECT_THROW(solve_sigma(kCoin, INFINITY), std::invalid_argument);
}

TEST(SolveSigma, RoundTripAndMonotone) {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const DiscreteDist d = testing::random_dist(rng, 5, 0.0, 10.0, 0.25);
    const double range = expect_excess(d, d.min_value());
    const double c = range * rng.uniform();
    const double sigma = solve_sigma(d, c);
    EXPECT_NEAR(expect_excess(d, sigma), c, 1e-9);
    EXPECT_GE(sigma, d.min_value() - 1e-12);
    EXPECT_LE(sigma, d.max_value());
    EXPECT_GE(sigma, solve_sigma(d, c + 0.1) - 1e-12);
    EXPECT_EQ(solve_sigma(d, 0.0), d.max_value());
  }
}

TEST(CapBox, Examples) {
  const BoxSpec box = costly_coin(0.5);
  const BoxSpec capped = cap_box(box, {{0, 1.0}});
  const TypeBranch& b = capped.branch(0);
  EXPECT_EQ(value_marginal(b.law), DiscreteDist({{0.0, 0.5}, {1.0, 0.5}}));
  EXPECT_EQ(expect_cost(b.law), 0.0);

  const BoxSpec above = cap_box(box, {{0, 3.0}});
  EXPECT_EQ(value_marginal(above.branch(0).law), kCoin);
  EXPECT_EQ(expect_cost(above.branch(0).law), 0.0);

  const BoxSpec below = cap_box(costly_coin(0.1), {{0, -0.0}});
  EXPECT_EQ(value_marginal(below.branch(0).law), DiscreteDist::point_mass(0.0));
}

TEST(CapBox, MissingSigmaThrows) {
  EXPECT_THROW(cap_box(costly_coin(0.5), {{7, 1.0}}), std::invalid_argument);
}

TEST(CapInstance, ValuesBoundedAndFree) {
  Rng rng(22);
  testing::Shape shape;
  shape.max_types = 2;
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = testing::random_instance(rng, shape);
    const SigmaTable sigmas = compute_sigmas(inst);
    ASSERT_TRUE(sigmas.covers(inst));
    const Instance capped = cap_instance(inst, sigmas);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (const TypeBranch& t : capped.boxes[i].branches()) {
        EXPECT_EQ(expect_cost(t.law), 0.0);
        EXPECT_EQ(t.prob, inst.boxes[i].branch(t.type).prob);
        for (const JointAtom& a : t.law.atoms()) {
          EXPECT_LE(a.value, sigmas.at(i, t.type));
        }
      }
    }
  }
}

TEST(Weitzman, SingleBoxExamples) {
  Instance indifferent;
  indifferent.boxes = {costly_coin(1.0)};
  const WeitzmanPolicy skip(indifferent);
  EXPECT_DOUBLE_EQ(exact_policy_value(skip), 0.0);
  Rng rng(1);
  const PolicyTrace trace = skip.run(sample_realization(indifferent, rng), 0);
  EXPECT_TRUE(trace.opened.empty());

  Instance worth;
  worth.boxes = {costly_coin(0.5)};
  EXPECT_DOUBLE_EQ(exact_policy_value(WeitzmanPolicy(worth)), 0.5);
}

TEST(Weitzman, TwoBoxes) {
  Instance inst;
  inst.boxes = {BoxSpec::single_type(JointVC({{1.0, 0.0, 1.0}})), costly_coin(0.5)};
  const WeitzmanPolicy policy(inst);
  EXPECT_DOUBLE_EQ(policy.sigmas().at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(policy.sigmas().at(1, 0), 1.0);
  // Box A (sigma 1) opens first on the tie; then best = 1 >= sigma_B stops.
  const double value = exact_policy_value(policy);
  EXPECT_DOUBLE_EQ(value, 1.0);
  EXPECT_DOUBLE_EQ(value, offline_opt(inst));
}

TEST(Weitzman, RejectsOtherConstraints) {
  Instance inst;
  inst.boxes = {costly_coin(0.5), costly_coin(0.5)};
  inst.keep = KeepCardinality{2};
  EXPECT_THROW(WeitzmanPolicy{inst}, std::invalid_argument);
  inst.keep = KeepOne{};
  inst.open = OpenOnePerRound{2};
  EXPECT_THROW(WeitzmanPolicy{inst}, std::invalid_argument);
}

TEST(Weitzman, OpensInDecreasingSigma) {
  Instance inst;
  inst.boxes = {costly_coin(1.0), costly_coin(0.25), costly_coin(0.5)};
  const WeitzmanPolicy policy(inst);
  Realization r{{0, 0.0, 1.0}, {0, 0.0, 0.25}, {0, 0.0, 0.5}};
  const PolicyTrace trace = policy.run(r, 0);
  ASSERT_EQ(trace.opened.size(), 2u);
  EXPECT_EQ(trace.opened[0], 1u);
  EXPECT_EQ(trace.opened[1], 2u);
  EXPECT_TRUE(trace.kept.empty());
  EXPECT_DOUBLE_EQ(trace.utility, -0.75);
}

}  // namespace
}  // namespace pandora
