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

#ifndef PANDORA_RESERVATION_HPP_
#define PANDORA_RESERVATION_HPP_

// Reservation prices and capped boxes.
//
// For a value law F and expected opening cost c, the reservation price sigma
// solves E[(v - sigma)^+] = c. It is both Weitzman's index and the cap that
// turns a costly box into the zero-cost box min(v, sigma).

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pandora/dist.hpp"
#include "pandora/model.hpp"

namespace pandora {

// Exact inversion of E[(v - y)^+] = expected_cost over the sorted support.
//
// cost == 0 returns the largest support value. Costs above E[(v - min v)^+]
// land on the linear piece below the support, sigma = E[v] - cost, which may
// be negative. Throws std::invalid_argument for a negative or non-finite cost.
double solve_sigma(const DiscreteDist& values, double expected_cost);

// sigma_i(t) for every box i and every type t the box can take.
class SigmaTable {
 public:
  SigmaTable() = default;
  explicit SigmaTable(std::vector<std::map<TypeId, double>> per_box)
      : per_box_(std::move(per_box)) {}

  std::size_t size() const { return per_box_.size(); }
  // Throws std::out_of_range when (box, type) is missing.
  double at(std::size_t box, TypeId type) const;
  const std::map<TypeId, double>& box(std::size_t i) const {
    return per_box_.at(i);
  }
  bool covers(const Instance& instance) const;

 private:
  std::vector<std::map<TypeId, double>> per_box_;
};

SigmaTable compute_sigmas(const Instance& instance);

// Zero-cost box whose value given type t is min(v, sigmas[t]).
BoxSpec cap_box(const BoxSpec& box, const std::map<TypeId, double>& sigmas);

// Caps every box; constraints are carried over unchanged.
Instance cap_instance(const Instance& instance, const SigmaTable& sigmas);

// Classic Pandora's box search with free ordering and one kept prize:
// open boxes in decreasing sigma (lower index first on ties) and stop as soon
// as the best revealed value (starting from the outside option 0) is at least
// every remaining sigma. Used as an exact oracle; it sees the type profile up
// front, values only once opened.
class WeitzmanPolicy final : public Policy {
 public:
  // Requires a keep-one instance without opening constraints.
  explicit WeitzmanPolicy(Instance instance);

  std::string name() const override { return "weitzman_oracle"; }
  const Instance& instance() const override { return instance_; }
  const SigmaTable& sigmas() const { return sigmas_; }

  PolicyTrace run(const Realization& realization,
                  std::size_t branch) const override;

 private:
  Instance instance_;
  SigmaTable sigmas_;
};

}  // namespace pandora

#endif  // PANDORA_RESERVATION_HPP_
