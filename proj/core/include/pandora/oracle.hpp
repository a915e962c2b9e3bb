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

#ifndef PANDORA_ORACLE_HPP_
#define PANDORA_ORACLE_HPP_

// Exact benchmarks on small instances, by enumeration of the product support.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "pandora/model.hpp"

namespace pandora {

struct OracleLimits {
  std::size_t max_boxes = 10;
  std::size_t max_outcomes_per_box = 4;  // distinct (type, value, cost)
  std::uint64_t max_realizations = std::uint64_t{1} << 22;
};

class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws OracleLimitError naming the first exceeded limit.
void check_oracle_limits(const Instance& instance, const OracleLimits& limits = {});

// Expected utility of the optimal non-clairvoyant offline policy: it sees all
// types, opens boxes adaptively in any order (respecting the opening
// constraint), pays realized costs and keeps the best feasible subset of the
// opened boxes at the end.
double offline_opt(const Instance& instance, const OracleLimits& limits = {});

// E[max over feasible (R, S) of sum_R v - sum_S c] with all outcomes known in
// advance.
double clairvoyant_value(const Instance& instance, const OracleLimits& limits = {});

// Clairvoyant benchmark when exactly one box must be accepted (keep-one
// instances without opening constraints): E[max_i (v_i - c_i)].
double clairvoyant_exactly_one(const Instance& instance,
                               const OracleLimits& limits = {});

// E[best feasible kept value] with all values known and costs ignored.
double prophet_value(const Instance& instance, const OracleLimits& limits = {});

// Expected utility of `policy` over the realizations of `instance` (which
// defaults to the policy's own). Only the realization-count limit applies.
double exact_policy_value(const Policy& policy, const OracleLimits& limits = {});
double exact_policy_value(const Policy& policy, const Instance& instance,
                          const OracleLimits& limits = {});

struct KeepItem {
  TypeId type;
  double value;
};

// Largest total value of a subset of `items` feasible under `keep`.
double best_keep_value(const KeepConstraint& keep, std::span<const KeepItem> items);

// Largest sum_R (v - c) (or sum_R v when `net_of_cost` is false) over R
// feasible under both the keeping and the opening constraint.
double ex_post_best(const Instance& instance, const Realization& realization,
                    bool net_of_cost);

}  // namespace pandora

#endif  // PANDORA_ORACLE_HPP_
