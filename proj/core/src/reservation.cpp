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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pandora {

double solve_sigma(const DiscreteDist& values, double expected_cost) {
  if (!(expected_cost >= 0.0) || !std::isfinite(expected_cost)) {
    throw std::invalid_argument("expected cost must be finite and >= 0");
  }
  const auto atoms = values.atoms();
  if (expected_cost == 0.0) return values.max_value();

  // On [v_j, v_{j+1}] the excess is sum_{l>j} p_l (v_l - y); walk down from
  // the top piece accumulating the mass and first moment above y.
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t j = atoms.size() - 1; j > 0; --j) {
    mass += atoms[j].prob;
    moment += atoms[j].prob * atoms[j].value;
    const double excess_at_lower = moment - mass * atoms[j - 1].value;
    if (excess_at_lower >= expected_cost) {
      const double sigma = (moment - expected_cost) / mass;
      return std::clamp(sigma, atoms[j - 1].value, atoms[j].value);
    }
  }
  // Below the support the excess is E[v] - y.
  return expect(values) - expected_cost;
}

double SigmaTable::at(std::size_t box, TypeId type) const {
  const auto& m = per_box_.at(box);
  auto it = m.find(type);
  if (it == m.end()) {
    throw std::out_of_range("no sigma for box " + std::to_string(box) +
                            ", type " + std::to_string(type));
  }
  return it->second;
}

bool SigmaTable::covers(const Instance& instance) const {
  if (per_box_.size() != instance.size()) return false;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    for (const TypeBranch& b : instance.boxes[i].branches()) {
      auto it = per_box_[i].find(b.type);
      if (it == per_box_[i].end() || !std::isfinite(it->second)) return false;
    }
  }
  return true;
}

SigmaTable compute_sigmas(const Instance& instance) {
  std::vector<std::map<TypeId, double>> table;
  table.reserve(instance.size());
  for (const BoxSpec& box : instance.boxes) {
    auto& row = table.emplace_back();
    for (const TypeBranch& b : box.branches()) {
      row[b.type] = solve_sigma(value_marginal(b.law), expect_cost(b.law));
    }
  }
  return SigmaTable(std::move(table));
}

BoxSpec cap_box(const BoxSpec& box, const std::map<TypeId, double>& sigmas) {
  std::vector<TypeBranch> branches;
  for (const TypeBranch& b : box.branches()) {
    auto it = sigmas.find(b.type);
    if (it == sigmas.end()) {
      throw std::invalid_argument("cap_box: no sigma for type " +
                                  std::to_string(b.type));
    }
    std::vector<JointAtom> atoms;
    for (const JointAtom& a : b.law.atoms()) {
      atoms.push_back({std::min(a.value, it->second), 0.0, a.prob});
    }
    branches.push_back({b.type, b.prob, JointVC(std::move(atoms))});
  }
  return BoxSpec(std::move(branches));
}

Instance cap_instance(const Instance& instance, const SigmaTable& sigmas) {
  if (sigmas.size() != instance.size()) {
    throw std::invalid_argument("sigma table does not match the instance");
  }
  Instance capped;
  capped.id = instance.id;
  capped.keep = instance.keep;
  capped.open = instance.open;
  capped.boxes.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    capped.boxes.push_back(cap_box(instance.boxes[i], sigmas.box(i)));
  }
  return capped;
}

WeitzmanPolicy::WeitzmanPolicy(Instance instance)
    : instance_(std::move(instance)), sigmas_(compute_sigmas(instance_)) {
  if (!std::holds_alternative<KeepOne>(instance_.keep) ||
      !std::holds_alternative<OpenUnconstrained>(instance_.open)) {
    throw std::invalid_argument(
        "weitzman_oracle needs a keep-one instance without opening limits");
  }
}

PolicyTrace WeitzmanPolicy::run(const Realization& realization,
                                std::size_t /*branch*/) const {
  const std::size_t n = instance_.size();
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = sigmas_.at(i, realization[i].type);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sigma[a] > sigma[b];
  });

  PolicyTrace trace;
  double best = 0.0;
  std::size_t best_box = n;
  for (std::size_t i : order) {
    // Indifference (sigma == best) stops.
    if (!(sigma[i] > best)) break;
    trace.opened.push_back(i);
    trace.revealed.push_back(realization[i]);
    trace.utility -= realization[i].cost;
    if (realization[i].value > best) {
      best = realization[i].value;
      best_box = i;
    }
  }
  if (best_box < n) {
    trace.kept.push_back(best_box);
    trace.utility += best;
  }
  return trace;
}

}  // namespace pandora
