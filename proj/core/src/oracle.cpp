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

#include "pandora/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace pandora {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sum_top_positive(std::vector<double> values, std::size_t count) {
  std::sort(values.begin(), values.end(), std::greater<>());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size() && i < count; ++i) {
    if (values[i] <= 0.0) break;
    total += values[i];
  }
  return total;
}

double knapsack_brute_force(const KeepKnapsack& c, std::span<const KeepItem> items) {
  std::vector<KeepItem> useful;
  for (const KeepItem& it : items) {
    if (it.value > 0.0) useful.push_back(it);
  }
  if (useful.size() > 24) throw OracleLimitError("too many knapsack items");
  const double limit = c.capacity * (1.0 + kCapacityTolerance);
  double best = 0.0;
  const std::uint32_t subsets = std::uint32_t{1} << useful.size();
  for (std::uint32_t s = 1; s < subsets; ++s) {
    double size = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < useful.size(); ++i) {
      if ((s >> i) & 1u) {
        size += c.sizes.at(useful[i].type);
        value += useful[i].value;
      }
    }
    if (size <= limit) best = std::max(best, value);
  }
  return best;
}

// Sufficient statistic of the opened values for the final keep decision.
std::vector<double> keep_statistic(const KeepConstraint& keep,
                                   std::span<const KeepItem> opened) {
  return std::visit(
      Overloaded{
          [&](const KeepOne&) {
            double best = 0.0;
            for (const KeepItem& it : opened) best = std::max(best, it.value);
            return std::vector<double>{best};
          },
          [&](const KeepCardinality& c) {
            std::vector<double> v;
            for (const KeepItem& it : opened) {
              if (it.value > 0.0) v.push_back(it.value);
            }
            std::sort(v.begin(), v.end(), std::greater<>());
            if (v.size() > static_cast<std::size_t>(c.k)) v.resize(static_cast<std::size_t>(c.k));
            return v;
          },
          [&](const KeepPartition& c) {
            std::vector<double> out;
            for (std::size_t g = 0; g < c.caps.size(); ++g) {
              std::vector<double> v;
              for (const KeepItem& it : opened) {
                if (it.value > 0.0 && c.groups.at(it.type) == static_cast<int>(g)) {
                  v.push_back(it.value);
                }
              }
              std::sort(v.begin(), v.end(), std::greater<>());
              v.resize(static_cast<std::size_t>(c.caps[g]), 0.0);
              out.insert(out.end(), v.begin(), v.end());
            }
            return out;
          },
          [&](const KeepKnapsack&) {
            // Uncompressed: (type, value) of every opened positive prize.
            std::vector<double> v;
            for (const KeepItem& it : opened) {
              if (it.value > 0.0) {
                v.push_back(static_cast<double>(it.type));
                v.push_back(it.value);
              }
            }
            return v;
          },
      },
      keep);
}

class OfflineSolver {
 public:
  OfflineSolver(const Instance& instance, std::vector<const TypeBranch*> profile)
      : instance_(instance), profile_(std::move(profile)) {}

  double solve() {
    std::vector<KeepItem> opened;
    return value(0, opened);
  }

 private:
  using Key = std::pair<std::uint32_t, std::vector<double>>;

  double value(std::uint32_t mask, std::vector<KeepItem>& opened) {
    std::vector<double> stat = keep_statistic(instance_.keep, opened);
    Key key{mask, stat};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    double best = best_keep_value(instance_.keep, opened);
    const std::size_t n = instance_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) continue;
      if (!round_free(mask, i)) continue;
      const JointVC& law = profile_[i]->law;
      double v = 0.0;
      for (const JointAtom& a : law.atoms()) {
        opened.push_back({profile_[i]->type, a.value});
        v += a.prob * (value(mask | (1u << i), opened) - a.cost);
        opened.pop_back();
      }
      best = std::max(best, v);
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  bool round_free(std::uint32_t mask, std::size_t box) const {
    if (!std::holds_alternative<OpenOnePerRound>(instance_.open)) return true;
    const std::size_t r = round_of(instance_, box);
    for (std::size_t j = 0; j < instance_.size(); ++j) {
      if (((mask >> j) & 1u) && round_of(instance_, j) == r) return false;
    }
    return true;
  }

  const Instance& instance_;
  std::vector<const TypeBranch*> profile_;
  std::map<Key, double> memo_;
};

}  // namespace

void check_oracle_limits(const Instance& instance, const OracleLimits& limits) {
  if (instance.size() > limits.max_boxes) {
    throw OracleLimitError("oracle limit exceeded: " + std::to_string(instance.size()) +
                           " boxes > " + std::to_string(limits.max_boxes));
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const std::size_t k = instance.boxes[i].outcome_count();
    if (k > limits.max_outcomes_per_box) {
      throw OracleLimitError("oracle limit exceeded: box " + std::to_string(i) +
                             " has " + std::to_string(k) + " outcomes > " +
                             std::to_string(limits.max_outcomes_per_box));
    }
  }
  const std::uint64_t count = realization_count(instance);
  if (count > limits.max_realizations) {
    throw OracleLimitError("oracle limit exceeded: " + std::to_string(count) +
                           " realizations > " +
                           std::to_string(limits.max_realizations));
  }
}

double best_keep_value(const KeepConstraint& keep, std::span<const KeepItem> items) {
  return std::visit(
      Overloaded{
          [&](const KeepOne&) {
            double best = 0.0;
            for (const KeepItem& it : items) best = std::max(best, it.value);
            return best;
          },
          [&](const KeepCardinality& c) {
            std::vector<double> v;
            for (const KeepItem& it : items) v.push_back(it.value);
            return sum_top_positive(std::move(v), static_cast<std::size_t>(c.k));
          },
          [&](const KeepPartition& c) {
            double total = 0.0;
            for (std::size_t g = 0; g < c.caps.size(); ++g) {
              std::vector<double> v;
              for (const KeepItem& it : items) {
                if (c.groups.at(it.type) == static_cast<int>(g)) v.push_back(it.value);
              }
              total += sum_top_positive(std::move(v), static_cast<std::size_t>(c.caps[g]));
            }
            return total;
          },
          [&](const KeepKnapsack& c) { return knapsack_brute_force(c, items); },
      },
      keep);
}

double ex_post_best(const Instance& instance, const Realization& realization,
                    bool net_of_cost) {
  const std::size_t n = instance.size();
  auto item = [&](std::size_t i) {
    const Outcome& o = realization[i];
    return KeepItem{o.type, net_of_cost ? o.value - o.cost : o.value};
  };
  const auto* rounds = std::get_if<OpenOnePerRound>(&instance.open);
  if (rounds == nullptr) {
    std::vector<KeepItem> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back(item(i));
    return best_keep_value(instance.keep, items);
  }
  if (std::holds_alternative<KeepOne>(instance.keep) ||
      std::holds_alternative<KeepCardinality>(instance.keep)) {
    // Best box of each round, then the keeping rule over those.
    std::vector<KeepItem> items;
    for (std::size_t i = 0; i < n; ++i) {
      const KeepItem it = item(i);
      const std::size_t r = round_of(instance, i);
      if (items.size() <= r) items.resize(r + 1, KeepItem{it.type, -1e300});
      if (it.value > items[r].value) items[r] = it;
    }
    return best_keep_value(instance.keep, items);
  }
  // Choose at most one box per round, brute force.
  const std::size_t per_round = n / static_cast<std::size_t>(rounds->rounds);
  double best = 0.0;
  std::vector<KeepItem> chosen;
  std::function<void(std::size_t)> recurse = [&](std::size_t r) {
    if (r == static_cast<std::size_t>(rounds->rounds)) {
      best = std::max(best, best_keep_value(instance.keep, chosen));
      return;
    }
    recurse(r + 1);
    for (std::size_t i = r * per_round; i < (r + 1) * per_round; ++i) {
      chosen.push_back(item(i));
      recurse(r + 1);
      chosen.pop_back();
    }
  };
  recurse(0);
  return best;
}

double offline_opt(const Instance& instance, const OracleLimits& limits) {
  validate(instance);
  check_oracle_limits(instance, limits);
  if (instance.size() > 31) throw OracleLimitError("too many boxes for the opener DP");
  const std::size_t n = instance.size();
  std::vector<const TypeBranch*> profile(n);
  double total = 0.0;
  std::function<void(std::size_t, double)> recurse = [&](std::size_t i, double prob) {
    if (i == n) {
      OfflineSolver solver(instance, profile);
      total += prob * solver.solve();
      return;
    }
    for (const TypeBranch& b : instance.boxes[i].branches()) {
      profile[i] = &b;
      recurse(i + 1, prob * b.prob);
    }
  };
  recurse(0, 1.0);
  return total;
}

double clairvoyant_value(const Instance& instance, const OracleLimits& limits) {
  validate(instance);
  check_oracle_limits(instance, limits);
  double total = 0.0;
  for_each_realization(instance, [&](const Realization& r, double p) {
    total += p * ex_post_best(instance, r, true);
  });
  return total;
}

double clairvoyant_exactly_one(const Instance& instance, const OracleLimits& limits) {
  validate(instance);
  if (!std::holds_alternative<KeepOne>(instance.keep) ||
      !std::holds_alternative<OpenUnconstrained>(instance.open)) {
    throw std::invalid_argument(
        "clairvoyant_exactly_one needs keep-one without opening constraints");
  }
  check_oracle_limits(instance, limits);
  double total = 0.0;
  for_each_realization(instance, [&](const Realization& r, double p) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Outcome& o : r) best = std::max(best, o.value - o.cost);
    total += p * best;
  });
  return total;
}

double prophet_value(const Instance& instance, const OracleLimits& limits) {
  validate(instance);
  check_oracle_limits(instance, limits);
  double total = 0.0;
  for_each_realization(instance, [&](const Realization& r, double p) {
    total += p * ex_post_best(instance, r, false);
  });
  return total;
}

double exact_policy_value(const Policy& policy, const OracleLimits& limits) {
  return exact_policy_value(policy, policy.instance(), limits);
}

double exact_policy_value(const Policy& policy, const Instance& instance,
                          const OracleLimits& limits) {
  const std::uint64_t count = realization_count(instance);
  if (count > limits.max_realizations) {
    throw OracleLimitError("oracle limit exceeded: " + std::to_string(count) +
                           " realizations > " +
                           std::to_string(limits.max_realizations));
  }
  const std::vector<double> weights = policy.branch_weights();
  double total = 0.0;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    double branch_total = 0.0;
    for_each_realization(instance, [&](const Realization& r, double p) {
      branch_total += p * policy.run(r, b).utility;
    });
    total += weights[b] * branch_total;
  }
  return total;
}

}  // namespace pandora
