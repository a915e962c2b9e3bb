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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "pandora/reservation.hpp"
#include "pandora/stats.hpp"

namespace pandora {

void validate(const MultiArmInstance& instance) {
  if (instance.rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (instance.arms.empty()) throw std::invalid_argument("no arms");
  for (std::size_t t = 0; t < instance.arms.size(); ++t) {
    const Arm& arm = instance.arms[t];
    if (!(arm.cost >= 0.0) || !std::isfinite(arm.cost)) {
      throw std::invalid_argument("arm " + std::to_string(t) +
                                  ": cost must be >= 0");
    }
    if (!(arm.values.min_value() > 0.0)) {
      throw std::invalid_argument("arm " + std::to_string(t) +
                                  ": values must be strictly positive");
    }
  }
}

ArmDraws sample_draws(const MultiArmInstance& instance, Rng& rng) {
  ArmDraws draws(instance.arms.size());
  for (std::size_t t = 0; t < instance.arms.size(); ++t) {
    draws[t].reserve(static_cast<std::size_t>(instance.rounds));
    for (int k = 0; k < instance.rounds; ++k) {
      draws[t].push_back(sample(instance.arms[t].values, rng));
    }
  }
  return draws;
}

void MultiArmTrace::record_open(int round, std::size_t arm, double value,
                                double cost) {
  openings.push_back({round, arm, value});
  ++opens[arm];
  utility -= cost;
}

void MultiArmTrace::record_keep(std::size_t arm, double value) {
  if (kept[arm]) throw std::logic_error("second prize kept for an arm");
  kept[arm] = true;
  kept_value[arm] = value;
  for (const Opening& o : openings) {
    if (o.arm == arm && o.value == value) {
      kept_round[arm] = o.round;
      break;
    }
  }
  utility += value;
}

PolicyTrace MultiArmTrace::as_policy_trace() const {
  const std::size_t m = opens.size();
  PolicyTrace trace;
  for (const Opening& o : openings) {
    trace.opened.push_back(static_cast<std::size_t>(o.round) * m + o.arm);
  }
  for (std::size_t t = 0; t < m; ++t) {
    if (kept[t]) {
      trace.kept.push_back(static_cast<std::size_t>(kept_round[t]) * m + t);
    }
  }
  trace.utility = utility;
  return trace;
}

std::size_t prophet_greedy_step(const MultiArmInstance& instance,
                                std::span<const double> best) {
  std::size_t choice = 0;
  double best_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < instance.arms.size(); ++t) {
    const double gain =
        expect_excess(instance.arms[t].values, best[t]) - instance.arms[t].cost;
    if (gain > best_gain) {
      best_gain = gain;
      choice = t;
    }
  }
  return choice;
}

MultiArmTrace simulate_prophet(const MultiArmInstance& instance,
                               const ArmDraws& draws) {
  const std::size_t m = instance.arms.size();
  MultiArmTrace trace(m);
  std::vector<double> best(m, 0.0);
  for (int j = 0; j < instance.rounds; ++j) {
    const std::size_t t = prophet_greedy_step(instance, best);
    const double v = draws.at(t).at(static_cast<std::size_t>(trace.opens[t]));
    trace.record_open(j, t, v, instance.arms[t].cost);
    best[t] = std::max(best[t], v);
  }
  for (std::size_t t = 0; t < m; ++t) {
    if (trace.opens[t] > 0) trace.record_keep(t, best[t]);
  }
  return trace;
}

ArmThresholds estimate_arm_thresholds(const MultiArmInstance& instance,
                                      std::size_t n_samples,
                                      std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  const std::size_t m = instance.arms.size();
  // per_arm[t][s]: value the prophet keeps from arm t in sample s.
  std::vector<std::vector<double>> per_arm(m, std::vector<double>(n_samples));
  parallel_for(n_samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      Rng rng = Rng::for_trial(seed, s);
      const MultiArmTrace run = simulate_prophet(instance, sample_draws(instance, rng));
      for (std::size_t t = 0; t < m; ++t) per_arm[t][s] = run.kept_value[t];
    }
  });
  ArmThresholds out;
  out.sample_count = n_samples;
  out.seed = seed;
  for (std::size_t t = 0; t < m; ++t) {
    const Summary s = summarize(per_arm[t]);
    out.prophet_value.push_back(s.mean);
    out.ci_halfwidth.push_back(s.ci_halfwidth);
    out.tau.push_back(s.mean / 2.0);
  }
  return out;
}

std::vector<double> arm_scores(const MultiArmInstance& instance,
                               std::span<const double> tau) {
  std::vector<double> score(instance.arms.size(), 0.0);
  for (std::size_t t = 0; t < instance.arms.size(); ++t) {
    for (const Atom& a : instance.arms[t].values.atoms()) {
      if (a.value > tau[t]) score[t] += a.prob * a.value;
    }
  }
  return score;
}

std::size_t best_eligible_arm(std::span<const double> score,
                              const std::vector<bool>& retired) {
  std::size_t choice = score.size();
  double best = 0.0;
  for (std::size_t t = 0; t < score.size(); ++t) {
    if (retired[t]) continue;
    if (score[t] > best) {
      best = score[t];
      choice = t;
    }
  }
  return choice;
}

MultiArmTrace run_multiarm_policy(const MultiArmInstance& instance,
                                  const ArmThresholds& thresholds,
                                  const ArmDraws& draws) {
  const std::size_t m = instance.arms.size();
  if (thresholds.tau.size() != m) {
    throw std::invalid_argument("thresholds do not match the arms");
  }
  const std::vector<double> score = arm_scores(instance, thresholds.tau);
  MultiArmTrace trace(m);
  std::vector<bool> retired(m, false);
  for (int j = 0; j < instance.rounds; ++j) {
    const std::size_t t = best_eligible_arm(score, retired);
    if (t == m) break;
    const double v = draws.at(t).at(static_cast<std::size_t>(trace.opens[t]));
    trace.record_open(j, t, v, instance.arms[t].cost);
    if (v > thresholds.tau[t]) {
      trace.record_keep(t, v);
      retired[t] = true;
    }
  }
  return trace;
}

std::vector<double> arm_sigmas(const MultiArmInstance& instance) {
  std::vector<double> out;
  out.reserve(instance.arms.size());
  for (const Arm& arm : instance.arms) {
    out.push_back(solve_sigma(arm.values, arm.cost));
  }
  return out;
}

MultiArmInstance cap_multiarm(const MultiArmInstance& instance,
                              std::span<const double> sigmas) {
  if (sigmas.size() != instance.arms.size()) {
    throw std::invalid_argument("one sigma per arm required");
  }
  MultiArmInstance capped;
  capped.id = instance.id;
  capped.rounds = instance.rounds;
  for (std::size_t t = 0; t < instance.arms.size(); ++t) {
    if (!(sigmas[t] > 0.0)) {
      throw std::invalid_argument("arm " + std::to_string(t) +
                                  " has reservation price <= 0");
    }
    std::vector<Atom> atoms;
    for (const Atom& a : instance.arms[t].values.atoms()) {
      atoms.push_back({std::min(a.value, sigmas[t]), a.prob});
    }
    capped.arms.push_back({0.0, DiscreteDist(std::move(atoms))});
  }
  return capped;
}

Instance as_pandora_instance(const MultiArmInstance& instance) {
  validate(instance);
  const std::size_t m = instance.arms.size();
  std::vector<BoxSpec> arm_boxes;
  KeepPartition keep;
  for (std::size_t t = 0; t < m; ++t) {
    std::vector<JointAtom> atoms;
    for (const Atom& a : instance.arms[t].values.atoms()) {
      atoms.push_back({a.value, instance.arms[t].cost, a.prob});
    }
    const auto type = static_cast<TypeId>(t);
    arm_boxes.push_back(BoxSpec::single_type(JointVC(std::move(atoms)), type));
    keep.groups[type] = type;
    keep.caps.push_back(1);
  }
  Instance out;
  out.id = instance.id;
  for (int j = 0; j < instance.rounds; ++j) {
    out.boxes.insert(out.boxes.end(), arm_boxes.begin(), arm_boxes.end());
  }
  out.keep = std::move(keep);
  out.open = OpenOnePerRound{instance.rounds};
  return out;
}

namespace {

// Expected value over the remaining rounds of a prophet that opens `choose`
// given the per-arm best values; terminal value is the sum of bests.
double prophet_recursion(
    const MultiArmInstance& instance,
    const std::function<std::vector<std::size_t>(const std::vector<double>&)>& candidates,
    int round, std::vector<double>& best,
    std::map<std::pair<int, std::vector<double>>, double>& memo) {
  if (round == instance.rounds) {
    double total = 0.0;
    for (double b : best) total += b;
    return total;
  }
  auto key = std::make_pair(round, best);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  double value = -std::numeric_limits<double>::infinity();
  for (std::size_t t : candidates(best)) {
    const double saved = best[t];
    double v = -instance.arms[t].cost;
    for (const Atom& a : instance.arms[t].values.atoms()) {
      best[t] = std::max(saved, a.value);
      v += a.prob * prophet_recursion(instance, candidates, round + 1, best, memo);
    }
    best[t] = saved;
    value = std::max(value, v);
  }
  memo.emplace(std::move(key), value);
  return value;
}

}  // namespace

double exact_prophet_value(const MultiArmInstance& instance) {
  std::vector<double> best(instance.arms.size(), 0.0);
  std::map<std::pair<int, std::vector<double>>, double> memo;
  return prophet_recursion(
      instance,
      [&](const std::vector<double>& b) {
        return std::vector<std::size_t>{prophet_greedy_step(instance, b)};
      },
      0, best, memo);
}

double optimal_opening_value(const MultiArmInstance& instance) {
  std::vector<double> best(instance.arms.size(), 0.0);
  std::map<std::pair<int, std::vector<double>>, double> memo;
  std::vector<std::size_t> all(instance.arms.size());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
  return prophet_recursion(
      instance, [&](const std::vector<double>&) { return all; }, 0, best, memo);
}

double exact_multiarm_policy_value(const MultiArmInstance& instance,
                                   std::span<const double> tau) {
  const std::size_t m = instance.arms.size();
  if (m > 30) throw std::invalid_argument("too many arms for exact evaluation");
  const std::vector<double> score = arm_scores(instance, tau);
  std::map<std::pair<int, std::uint32_t>, double> memo;
  std::function<double(int, std::uint32_t)> value = [&](int round,
                                                        std::uint32_t retired) {
    if (round == instance.rounds) return 0.0;
    auto key = std::make_pair(round, retired);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<bool> flags(m);
    for (std::size_t t = 0; t < m; ++t) flags[t] = (retired >> t) & 1u;
    const std::size_t t = best_eligible_arm(score, flags);
    double v = 0.0;
    if (t < m) {
      v = -instance.arms[t].cost;
      for (const Atom& a : instance.arms[t].values.atoms()) {
        if (a.value > tau[t]) {
          v += a.prob * (a.value + value(round + 1, retired | (1u << t)));
        } else {
          v += a.prob * value(round + 1, retired);
        }
      }
    }
    memo.emplace(key, v);
    return v;
  };
  return value(0, 0);
}

std::vector<std::string> multiarm_violations(const MultiArmInstance& instance,
                                             const MultiArmTrace& trace) {
  std::vector<std::string> out;
  const std::size_t m = instance.arms.size();
  std::vector<int> per_round(static_cast<std::size_t>(std::max(instance.rounds, 0)), 0);
  std::vector<int> opens(m, 0);
  double utility = 0.0;
  for (const auto& o : trace.openings) {
    if (o.round < 0 || o.round >= instance.rounds || o.arm >= m) {
      out.push_back("opening out of range");
      continue;
    }
    if (++per_round[static_cast<std::size_t>(o.round)] > 1) {
      out.push_back("two boxes opened in round " + std::to_string(o.round));
    }
    ++opens[o.arm];
    utility -= instance.arms[o.arm].cost;
  }
  for (std::size_t t = 0; t < m; ++t) {
    if (trace.kept[t]) {
      if (opens[t] == 0) out.push_back("arm " + std::to_string(t) + " kept but never opened");
      bool seen = false;
      for (const auto& o : trace.openings) {
        seen = seen || (o.arm == t && o.value == trace.kept_value[t]);
      }
      if (!seen) out.push_back("kept value of arm " + std::to_string(t) + " was never revealed");
      utility += trace.kept_value[t];
    }
  }
  if (opens != trace.opens) out.push_back("open counts inconsistent");
  if (std::abs(utility - trace.utility) > 1e-9 * (1.0 + std::abs(utility))) {
    out.push_back("utility does not match the openings");
  }
  return out;
}

}  // namespace pandora
