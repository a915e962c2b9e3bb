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

#ifndef PANDORA_PROPHET_HPP_
#define PANDORA_PROPHET_HPP_

// Threshold policies for zero-cost boxes (prophet-inequality policies).
//
// A plan assigns every (box, type) a threshold tau >= 0 (or +infinity, "never
// keep") and keeps an arriving value v iff v >= tau and keeping is feasible
// under the plan's gate. Randomized plans (knapsack) are finite mixtures of
// such deterministic branches.

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pandora/dist.hpp"
#include "pandora/model.hpp"

namespace pandora {

inline constexpr double kNeverKeep = std::numeric_limits<double>::infinity();

enum class PlanMode { kSingle, kKUniform, kKnapsack, kPartition, kCustom };

std::string_view plan_mode_name(PlanMode mode);

struct ThresholdBranch {
  std::string label;
  double weight = 1.0;
  // thresholds[i][t] = tau_i(t).
  std::vector<std::map<TypeId, double>> thresholds;
  // Feasibility gate applied on top of the instance's keeping constraint.
  KeepConstraint gate = KeepOne{};
};

class ThresholdPlan {
 public:
  // Branch weights must sum to 1; thresholds must be >= 0 (or +inf).
  ThresholdPlan(PlanMode mode, std::vector<ThresholdBranch> branches);

  // One common threshold for every box and type of `instance`.
  static ThresholdPlan uniform(PlanMode mode, const Instance& instance,
                               double tau, KeepConstraint gate);

  PlanMode mode() const { return mode_; }
  std::span<const ThresholdBranch> branches() const { return branches_; }
  std::vector<double> weights() const;

  // Throws std::out_of_range for an unknown (box, type).
  double threshold(std::size_t branch, std::size_t box, TypeId type) const;

  // Every branch has a threshold for every (box, type) of `instance`.
  bool covers(const Instance& instance) const;

 private:
  PlanMode mode_;
  std::vector<ThresholdBranch> branches_;
};

// Median-type threshold for keeping one prize, computed on capped value laws.
//
// Candidates are the support points b; with P(b) = Pr[max_i v_i >= b] the rule
// picks the b maximizing min(P(b), 1 - P(b)), larger b on ties, clamped at 0.
// Throws std::invalid_argument on an empty list.
double single_item_threshold(std::span<const DiscreteDist> capped);

// Common threshold for keeping at most k prizes: the largest support point b
// whose expected clearing count sum_i Pr[v_i >= b] reaches
// max(k - sqrt(2 k ln k), k / 2), clamped at 0. With k == n the cardinality
// never binds and the smallest support point (clamped at 0) is returned.
// Throws std::invalid_argument unless 1 <= k <= n.
double k_uniform_threshold(std::span<const DiscreteDist> capped, int k);

// Plans over a capped instance. Each throws std::invalid_argument when the
// instance constraint does not match (k_uniform needs a cardinality
// constraint, knapsack a knapsack, partition a partition matroid).
//
// Single-item levels: the median threshold above as one branch when its exact
// kept value reaches E[max(0, max_i v_i)] / 2. Otherwise an exact 1/2 level
// does not exist and the bracketing point falls short; the plan then mixes
// two branches, "lower" at the largest positive support point lo with
// P(lo) >= 1/2 and "upper" at the next support point hi (or never keep),
// weighted q = (1/2 - P(hi)) / (P(lo) - P(hi)) and 1 - q so that the
// probability of keeping is exactly 1/2.
ThresholdPlan single_item_plan(const Instance& capped);
ThresholdPlan k_uniform_thresholds(const Instance& capped);

// Two regimes, each with weight 1/2 (or weight 1 if the other is empty).
// Large types (size > C/2) use the single-item levels computed on large types
// only (split into "large:lower" and "large:upper" when mixed). Small types
// keep values whose price v / size(t) is at least rho while the used size
// stays within C/2, with rho the largest candidate price v / size(t) whose
// expected clearing size sum_{i, small t} Pr[t] size(t) Pr[v / size(t) >= rho | t]
// reaches C/2 (rho = 0 if none does). The threshold of small type t is its
// smallest support value clearing rho, so prices are compared exactly.
ThresholdPlan knapsack_thresholds(const Instance& capped);

// Independently per group: single-item levels when the cap is 1, the
// k-uniform threshold over the group's boxes when the cap is larger, never
// keep when the cap is 0. Mixed groups yield one branch per combination.
ThresholdPlan partition_matroid_thresholds(const Instance& capped);

// Runs a plan over zero-cost boxes in arrival order.
//
// Without an opening constraint every box is opened (for free). With one box
// per round a box is opened only when its round is still free, keeping it
// would be feasible and its type's largest value clears the threshold.
PolicyTrace run_threshold_policy(const Instance& capped,
                                 const ThresholdPlan& plan,
                                 const Realization& realization,
                                 std::size_t branch);

class ThresholdPolicy final : public Policy {
 public:
  ThresholdPolicy(Instance capped, ThresholdPlan plan);

  std::string name() const override;
  const Instance& instance() const override { return capped_; }
  const ThresholdPlan& plan() const { return plan_; }
  std::vector<double> branch_weights() const override { return plan_.weights(); }

  PolicyTrace run(const Realization& realization,
                  std::size_t branch) const override {
    return run_threshold_policy(capped_, plan_, realization, branch);
  }

 private:
  Instance capped_;
  ThresholdPlan plan_;
};

}  // namespace pandora

#endif  // PANDORA_PROPHET_HPP_
