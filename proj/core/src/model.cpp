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

#include "pandora/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pandora {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::set<TypeId> all_types(const Instance& instance) {
  std::set<TypeId> types;
  for (const BoxSpec& box : instance.boxes) {
    for (const TypeBranch& b : box.branches()) types.insert(b.type);
  }
  return types;
}

}  // namespace

BoxSpec::BoxSpec(std::vector<TypeBranch> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("box has no types");
  std::set<TypeId> seen;
  double total = 0.0;
  for (const TypeBranch& b : branches_) {
    if (!seen.insert(b.type).second) {
      throw std::invalid_argument("duplicate type " + std::to_string(b.type));
    }
    if (!(b.prob > 0.0 && b.prob <= 1.0)) {
      throw std::invalid_argument("type probability outside (0, 1]");
    }
    total += b.prob;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw std::invalid_argument("type probabilities sum to " +
                                std::to_string(total));
  }
}

BoxSpec BoxSpec::single_type(JointVC law, TypeId type) {
  std::vector<TypeBranch> branches;
  branches.push_back({type, 1.0, std::move(law)});
  return BoxSpec(std::move(branches));
}

const TypeBranch* BoxSpec::find(TypeId type) const {
  for (const TypeBranch& b : branches_) {
    if (b.type == type) return &b;
  }
  return nullptr;
}

const TypeBranch& BoxSpec::branch(TypeId type) const {
  const TypeBranch* b = find(type);
  if (b == nullptr) {
    throw std::out_of_range("box has no type " + std::to_string(type));
  }
  return *b;
}

DiscreteDist BoxSpec::value_marginal() const {
  std::vector<Atom> atoms;
  for (const TypeBranch& b : branches_) {
    for (const JointAtom& a : b.law.atoms()) {
      atoms.push_back({a.value, b.prob * a.prob});
    }
  }
  return DiscreteDist(std::move(atoms));
}

std::size_t BoxSpec::outcome_count() const {
  std::size_t n = 0;
  for (const TypeBranch& b : branches_) n += b.law.size();
  return n;
}

std::string_view keep_kind(const KeepConstraint& c) {
  return std::visit(Overloaded{
                        [](const KeepOne&) { return std::string_view("one"); },
                        [](const KeepCardinality&) {
                          return std::string_view("k");
                        },
                        [](const KeepKnapsack&) {
                          return std::string_view("knapsack");
                        },
                        [](const KeepPartition&) {
                          return std::string_view("partition");
                        },
                    },
                    c);
}

void validate(const Instance& instance) {
  const std::set<TypeId> types = all_types(instance);
  std::visit(
      Overloaded{
          [](const KeepOne&) {},
          [](const KeepCardinality& c) {
            if (c.k < 1) throw std::invalid_argument("cardinality k must be >= 1");
          },
          [&](const KeepKnapsack& c) {
            if (!(c.capacity > 0.0) || !std::isfinite(c.capacity)) {
              throw std::invalid_argument("knapsack capacity must be positive");
            }
            for (TypeId t : types) {
              auto it = c.sizes.find(t);
              if (it == c.sizes.end()) {
                throw std::invalid_argument("knapsack: type " +
                                            std::to_string(t) + " has no size");
              }
              if (!(it->second > 0.0 && it->second <= c.capacity)) {
                throw std::invalid_argument(
                    "knapsack: size of type " + std::to_string(t) +
                    " must lie in (0, C]");
              }
            }
          },
          [&](const KeepPartition& c) {
            for (int cap : c.caps) {
              if (cap < 0) throw std::invalid_argument("partition cap < 0");
            }
            for (TypeId t : types) {
              auto it = c.groups.find(t);
              if (it == c.groups.end()) {
                throw std::invalid_argument("partition: type " +
                                            std::to_string(t) + " has no group");
              }
              if (it->second < 0 ||
                  it->second >= static_cast<int>(c.caps.size())) {
                throw std::invalid_argument("partition: type " +
                                            std::to_string(t) +
                                            " maps to an unknown group");
              }
            }
          },
      },
      instance.keep);
  if (const auto* r = std::get_if<OpenOnePerRound>(&instance.open)) {
    if (r->rounds < 1 || instance.size() % static_cast<std::size_t>(r->rounds) != 0) {
      throw std::invalid_argument(
          "rounds must be positive and divide the number of boxes");
    }
  }
}

std::size_t round_of(const Instance& instance, std::size_t box) {
  if (const auto* r = std::get_if<OpenOnePerRound>(&instance.open)) {
    const std::size_t per_round = instance.size() / static_cast<std::size_t>(r->rounds);
    return box / per_round;
  }
  return 0;
}

KeepState::KeepState(const KeepConstraint& constraint)
    : constraint_(&constraint) {
  if (const auto* p = std::get_if<KeepPartition>(constraint_)) {
    group_counts_.assign(p->caps.size(), 0);
  }
}

bool KeepState::can_keep(TypeId type) const {
  return std::visit(
      Overloaded{
          [&](const KeepOne&) { return kept_ == 0; },
          [&](const KeepCardinality& c) { return kept_ < c.k; },
          [&](const KeepKnapsack& c) {
            auto it = c.sizes.find(type);
            if (it == c.sizes.end()) return false;
            return used_ + it->second <=
                   c.capacity * (1.0 + kCapacityTolerance);
          },
          [&](const KeepPartition& c) {
            auto it = c.groups.find(type);
            if (it == c.groups.end()) return false;
            const auto g = static_cast<std::size_t>(it->second);
            return group_counts_[g] < c.caps[g];
          },
      },
      *constraint_);
}

void KeepState::keep(TypeId type) {
  if (!can_keep(type)) {
    throw std::logic_error("infeasible keep of type " + std::to_string(type));
  }
  ++kept_;
  if (const auto* k = std::get_if<KeepKnapsack>(constraint_)) {
    used_ += k->sizes.at(type);
  } else if (const auto* p = std::get_if<KeepPartition>(constraint_)) {
    ++group_counts_[static_cast<std::size_t>(p->groups.at(type))];
  }
}

OpenState::OpenState(const Instance& instance) : instance_(&instance) {
  if (const auto* r = std::get_if<OpenOnePerRound>(&instance.open)) {
    round_used_.assign(static_cast<std::size_t>(r->rounds), false);
  }
}

bool OpenState::can_open(std::size_t box) const {
  if (round_used_.empty()) return true;
  return !round_used_[round_of(*instance_, box)];
}

void OpenState::open(std::size_t box) {
  if (!can_open(box)) {
    throw std::logic_error("second opening in round of box " +
                           std::to_string(box));
  }
  if (!round_used_.empty()) round_used_[round_of(*instance_, box)] = true;
}

Realization sample_realization(const Instance& instance, Rng& rng) {
  Realization r;
  r.reserve(instance.size());
  for (const BoxSpec& box : instance.boxes) {
    const double u = rng.uniform();
    const auto branches = box.branches();
    const TypeBranch* chosen = &branches.back();
    double acc = 0.0;
    for (const TypeBranch& b : branches) {
      acc += b.prob;
      if (u < acc) {
        chosen = &b;
        break;
      }
    }
    const JointAtom& a = sample(chosen->law, rng);
    r.push_back({chosen->type, a.value, a.cost});
  }
  return r;
}

std::uint64_t realization_count(const Instance& instance) {
  std::uint64_t count = 1;
  for (const BoxSpec& box : instance.boxes) {
    const std::uint64_t k = box.outcome_count();
    if (count > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= k;
  }
  return count;
}

void for_each_realization(
    const Instance& instance,
    const std::function<void(const Realization&, double)>& visit) {
  // Flatten each box into its list of (outcome, probability).
  std::vector<std::vector<std::pair<Outcome, double>>> outcomes;
  outcomes.reserve(instance.size());
  for (const BoxSpec& box : instance.boxes) {
    auto& list = outcomes.emplace_back();
    for (const TypeBranch& b : box.branches()) {
      for (const JointAtom& a : b.law.atoms()) {
        list.push_back({{b.type, a.value, a.cost}, b.prob * a.prob});
      }
    }
  }
  const std::size_t n = instance.size();
  Realization r(n);
  std::vector<double> prefix(n + 1, 1.0);
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (i == n) {
      visit(r, prefix[n]);
      return;
    }
    for (const auto& [outcome, p] : outcomes[i]) {
      r[i] = outcome;
      prefix[i + 1] = prefix[i] * p;
      recurse(i + 1);
    }
  };
  recurse(0);
}

std::vector<std::string> trace_violations(const Instance& instance,
                                          const Realization& realization,
                                          const PolicyTrace& trace) {
  std::vector<std::string> out;
  std::set<std::size_t> opened(trace.opened.begin(), trace.opened.end());
  if (opened.size() != trace.opened.size()) out.push_back("box opened twice");
  if (trace.revealed.size() != trace.opened.size()) {
    out.push_back("revealed outcomes not aligned with opened boxes");
  }
  for (std::size_t i : trace.kept) {
    if (!opened.contains(i)) {
      out.push_back("kept box " + std::to_string(i) + " was never opened");
    }
  }
  std::set<std::size_t> kept(trace.kept.begin(), trace.kept.end());
  if (kept.size() != trace.kept.size()) out.push_back("box kept twice");

  // Keeping feasibility (order independent for all supported constraints).
  KeepState keep_state(instance.keep);
  for (std::size_t i : trace.kept) {
    if (i >= realization.size()) {
      out.push_back("kept index out of range");
      continue;
    }
    if (!keep_state.can_keep(realization[i].type)) {
      std::ostringstream msg;
      msg << "keeping constraint '" << keep_kind(instance.keep)
          << "' violated at box " << i;
      out.push_back(msg.str());
      break;
    }
    keep_state.keep(realization[i].type);
  }

  OpenState open_state(instance);
  for (std::size_t i : trace.opened) {
    if (i >= instance.size()) {
      out.push_back("opened index out of range");
      continue;
    }
    if (!open_state.can_open(i)) {
      out.push_back("opening constraint violated at box " + std::to_string(i));
      break;
    }
    open_state.open(i);
  }

  double utility = 0.0;
  for (std::size_t i : trace.kept) {
    if (i < realization.size()) utility += realization[i].value;
  }
  for (std::size_t i : trace.opened) {
    if (i < realization.size()) utility -= realization[i].cost;
  }
  if (std::abs(utility - trace.utility) > 1e-9 * (1.0 + std::abs(utility))) {
    out.push_back("utility does not match the realization");
  }
  return out;
}

std::size_t draw_branch(std::span<const double> weights, Rng& rng) {
  if (weights.size() <= 1) return 0;
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    acc += weights[b];
    if (u < acc) return b;
  }
  return weights.size() - 1;
}

}  // namespace pandora
