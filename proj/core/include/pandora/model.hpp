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

#ifndef PANDORA_MODEL_HPP_
#define PANDORA_MODEL_HPP_

// Boxes, instances, feasibility constraints, realizations and traces.
//
// A box reveals its type on arrival; (value, cost) are drawn from a law that
// depends on the type and are revealed only if the box is opened. Boxes are
// independent of each other and arrive in list order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pandora/dist.hpp"
#include "pandora/rng.hpp"

namespace pandora {

using TypeId = int;

struct TypeBranch {
  TypeId type;
  double prob;
  JointVC law;
};

class BoxSpec {
 public:
  // Type ids must be distinct and their probabilities must sum to 1.
  explicit BoxSpec(std::vector<TypeBranch> branches);

  // A box whose type is always `type`.
  static BoxSpec single_type(JointVC law, TypeId type = 0);

  std::span<const TypeBranch> branches() const { return branches_; }

  // nullptr when the box never has type `type`.
  const TypeBranch* find(TypeId type) const;
  // Throws std::out_of_range when absent.
  const TypeBranch& branch(TypeId type) const;

  // Value law with the type marginalized out.
  DiscreteDist value_marginal() const;

  // Number of distinct (type, value, cost) outcomes.
  std::size_t outcome_count() const;

 private:
  std::vector<TypeBranch> branches_;
};

// Keeping constraints.
struct KeepOne {};
struct KeepCardinality {
  int k = 1;
};
struct KeepKnapsack {
  std::map<TypeId, double> sizes;
  double capacity = 1.0;
};
struct KeepPartition {
  std::map<TypeId, int> groups;  // type -> group index
  std::vector<int> caps;         // per group
};
using KeepConstraint =
    std::variant<KeepOne, KeepCardinality, KeepKnapsack, KeepPartition>;

// Opening constraints. With OpenOnePerRound the boxes are split into `rounds`
// consecutive blocks of equal length and at most one box per block is opened.
struct OpenUnconstrained {};
struct OpenOnePerRound {
  int rounds = 1;
};
using OpenConstraint = std::variant<OpenUnconstrained, OpenOnePerRound>;

std::string_view keep_kind(const KeepConstraint& c);

struct Instance {
  std::string id;
  std::vector<BoxSpec> boxes;
  KeepConstraint keep = KeepOne{};
  OpenConstraint open = OpenUnconstrained{};

  std::size_t size() const { return boxes.size(); }
};

// Checks that the constraints are consistent with the boxes: positive k,
// every type sized with 0 < s <= C, every type grouped, rounds dividing n.
// Throws std::invalid_argument.
void validate(const Instance& instance);

// Round index of `box` (0 when the instance has no opening constraint).
std::size_t round_of(const Instance& instance, std::size_t box);

// Slack on knapsack capacity comparisons, relative to the capacity.
inline constexpr double kCapacityTolerance = 1e-9;

// Adaptive feasibility state for a keeping constraint.
class KeepState {
 public:
  explicit KeepState(const KeepConstraint& constraint);

  bool can_keep(TypeId type) const;
  // Throws std::logic_error if keeping is infeasible.
  void keep(TypeId type);

 private:
  const KeepConstraint* constraint_;
  int kept_ = 0;
  double used_ = 0.0;
  std::vector<int> group_counts_;
};

// Adaptive feasibility state for an opening constraint.
class OpenState {
 public:
  explicit OpenState(const Instance& instance);

  bool can_open(std::size_t box) const;
  void open(std::size_t box);

 private:
  const Instance* instance_;
  std::vector<bool> round_used_;
};

// Realized (type, value, cost) of one box.
struct Outcome {
  TypeId type;
  double value;
  double cost;
};
using Realization = std::vector<Outcome>;

// Draws each box in order: type first, then (value, cost) given the type.
// Consumes exactly two uniforms per box.
Realization sample_realization(const Instance& instance, Rng& rng);

// Number of points in the product support (saturates at UINT64_MAX).
std::uint64_t realization_count(const Instance& instance);

// Calls `visit(realization, probability)` for every point of the product
// support, in lexicographic order of per-box outcomes.
void for_each_realization(
    const Instance& instance,
    const std::function<void(const Realization&, double)>& visit);

// Opened set S, kept set R (both in arrival order), the revealed outcomes of
// opened boxes and the realized utility sum_{R} v - sum_{S} c.
struct PolicyTrace {
  std::vector<std::size_t> opened;
  std::vector<std::size_t> kept;
  std::vector<Outcome> revealed;  // aligned with `opened`
  double utility = 0.0;
};

// Returns a description of every violated invariant: R not a subset of S,
// R infeasible under the keeping constraint, S infeasible under the opening
// constraint, utility inconsistent with the realization. Empty when the trace
// is valid.
std::vector<std::string> trace_violations(const Instance& instance,
                                          const Realization& realization,
                                          const PolicyTrace& trace);

// A policy that is deterministic given a realization and a branch index.
// Randomized policies expose their randomization as a finite mixture of
// deterministic branches.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual const Instance& instance() const = 0;

  // Mixing weights, summing to 1.
  virtual std::vector<double> branch_weights() const { return {1.0}; }

  virtual PolicyTrace run(const Realization& realization,
                          std::size_t branch) const = 0;
};

// Picks a branch with one uniform from `rng`; consumes nothing when there is
// a single branch.
std::size_t draw_branch(std::span<const double> weights, Rng& rng);

}  // namespace pandora

#endif  // PANDORA_MODEL_HPP_
