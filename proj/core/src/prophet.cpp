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

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pandora {

namespace {

// Sub-probability atoms of one box: the part of its law a rule may keep.
using Eligible = std::vector<Atom>;

double mass_at_least(const Eligible& e, double y) {
  double sum = 0.0;
  for (const Atom& a : e) {
    if (a.value >= y) sum += a.prob;
  }
  return std::min(sum, 1.0);
}

double prob_max_at_least(std::span<const Eligible> es, double y) {
  double none = 1.0;
  for (const Eligible& e : es) none *= 1.0 - mass_at_least(e, y);
  return 1.0 - none;
}

std::vector<double> breakpoints(std::span<const Eligible> es) {
  std::vector<double> out;
  for (const Eligible& e : es) {
    for (const Atom& a : e) out.push_back(a.value);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// E[max(0, max_i v_i)] where an ineligible draw counts as 0.
double expected_positive_max(std::span<const Eligible> es) {
  double sum = 0.0;
  double prev = 0.0;
  for (double b : breakpoints(es)) {
    if (b <= 0.0) continue;
    sum += (b - prev) * prob_max_at_least(es, b);
    prev = b;
  }
  return sum;
}

// Expected value kept by "keep the first eligible v >= tau".
double first_passage_value(std::span<const Eligible> es, double tau) {
  double none_yet = 1.0;
  double total = 0.0;
  for (const Eligible& e : es) {
    double clear = 0.0;
    double clear_value = 0.0;
    for (const Atom& a : e) {
      if (a.value >= tau) {
        clear += a.prob;
        clear_value += a.prob * a.value;
      }
    }
    total += none_yet * clear_value;
    none_yet *= 1.0 - std::min(clear, 1.0);
  }
  return total;
}

bool all_empty(std::span<const Eligible> es) {
  return std::all_of(es.begin(), es.end(),
                     [](const Eligible& e) { return e.empty(); });
}

double median_rule(std::span<const Eligible> es) {
  double best_b = kNeverKeep;
  double best_score = -1.0;
  for (double b : breakpoints(es)) {
    const double p = prob_max_at_least(es, b);
    const double score = std::min(p, 1.0 - p);
    if (score >= best_score) {
      best_score = score;
      best_b = b;
    }
  }
  return best_b;
}

double median_point(std::span<const Eligible> es) {
  if (all_empty(es)) return kNeverKeep;
  return std::max(median_rule(es), 0.0);
}

struct Level {
  double tau;
  double weight;
};

// Threshold levels of the single-item rule: the median point alone when its
// kept value reaches E[max^+]/2, otherwise the two positive support points
// bracketing the 1/2 level, mixed so that Pr[stop] is exactly 1/2.
std::vector<Level> single_levels(std::span<const Eligible> es) {
  const double tau = median_point(es);
  if (tau == kNeverKeep) return {{kNeverKeep, 1.0}};
  const double half_max = 0.5 * expected_positive_max(es);
  if (first_passage_value(es, tau) >= half_max - 1e-12 * std::max(1.0, half_max)) {
    return {{tau, 1.0}};
  }
  std::vector<double> bps;
  for (double b : breakpoints(es)) {
    if (b > 0.0) bps.push_back(b);
  }
  std::size_t j = bps.size();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (prob_max_at_least(es, bps[i]) >= 0.5) j = i;
  }
  if (j == bps.size()) return {{bps.front(), 1.0}};
  const double lo = bps[j];
  const double hi = j + 1 < bps.size() ? bps[j + 1] : kNeverKeep;
  const double p_lo = prob_max_at_least(es, lo);
  const double p_hi = hi == kNeverKeep ? 0.0 : prob_max_at_least(es, hi);
  const double q = (0.5 - p_hi) / (p_lo - p_hi);
  if (q >= 1.0) return {{lo, 1.0}};
  if (q <= 0.0) return {{hi, 1.0}};
  return {{lo, q}, {hi, 1.0 - q}};
}

double k_rule(std::span<const Eligible> es, int k) {
  const auto active = static_cast<int>(std::count_if(
      es.begin(), es.end(), [](const Eligible& e) { return !e.empty(); }));
  if (active == 0) return kNeverKeep;
  const std::vector<double> bps = breakpoints(es);
  const double bottom = std::max(bps.front(), 0.0);
  if (k >= active) return bottom;
  const double kd = k;
  const double target = std::max(kd - std::sqrt(2.0 * kd * std::log(kd)), kd / 2.0);
  for (auto it = bps.rbegin(); it != bps.rend(); ++it) {
    double count = 0.0;
    for (const Eligible& e : es) count += mass_at_least(e, *it);
    if (count >= target - 1e-12) return std::max(*it, 0.0);
  }
  return bottom;
}

std::vector<Eligible> to_eligible(std::span<const DiscreteDist> ds) {
  std::vector<Eligible> es;
  es.reserve(ds.size());
  for (const DiscreteDist& d : ds) es.emplace_back(d.atoms().begin(), d.atoms().end());
  return es;
}

// Per-box eligible atoms restricted to types accepted by `pred`.
std::vector<Eligible> to_eligible(const Instance& capped,
                                  const std::function<bool(TypeId)>& pred) {
  std::vector<Eligible> es(capped.size());
  for (std::size_t i = 0; i < capped.size(); ++i) {
    for (const TypeBranch& b : capped.boxes[i].branches()) {
      if (!pred(b.type)) continue;
      for (const JointAtom& a : b.law.atoms()) {
        es[i].push_back({a.value, b.prob * a.prob});
      }
    }
  }
  return es;
}

std::vector<std::map<TypeId, double>> thresholds_by_type(
    const Instance& capped, const std::function<double(TypeId)>& tau_of) {
  std::vector<std::map<TypeId, double>> out(capped.size());
  for (std::size_t i = 0; i < capped.size(); ++i) {
    for (const TypeBranch& b : capped.boxes[i].branches()) {
      out[i][b.type] = tau_of(b.type);
    }
  }
  return out;
}

}  // namespace

std::string_view plan_mode_name(PlanMode mode) {
  switch (mode) {
    case PlanMode::kSingle:
      return "single";
    case PlanMode::kKUniform:
      return "k_uniform";
    case PlanMode::kKnapsack:
      return "knapsack";
    case PlanMode::kPartition:
      return "partition";
    case PlanMode::kCustom:
      return "custom";
  }
  return "unknown";
}

ThresholdPlan::ThresholdPlan(PlanMode mode, std::vector<ThresholdBranch> branches)
    : mode_(mode), branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("plan has no branches");
  double total = 0.0;
  for (const ThresholdBranch& b : branches_) {
    if (!(b.weight > 0.0)) throw std::invalid_argument("branch weight must be > 0");
    total += b.weight;
    for (const auto& row : b.thresholds) {
      for (const auto& [type, tau] : row) {
        if (!(tau >= 0.0)) {
          throw std::invalid_argument("threshold for type " +
                                      std::to_string(type) + " is negative");
        }
      }
    }
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw std::invalid_argument("branch weights do not sum to 1");
  }
}

ThresholdPlan ThresholdPlan::uniform(PlanMode mode, const Instance& instance,
                                     double tau, KeepConstraint gate) {
  ThresholdBranch b;
  b.label = "uniform";
  b.thresholds = thresholds_by_type(instance, [tau](TypeId) { return tau; });
  b.gate = std::move(gate);
  return ThresholdPlan(mode, {std::move(b)});
}

std::vector<double> ThresholdPlan::weights() const {
  std::vector<double> w;
  w.reserve(branches_.size());
  for (const ThresholdBranch& b : branches_) w.push_back(b.weight);
  return w;
}

double ThresholdPlan::threshold(std::size_t branch, std::size_t box,
                                TypeId type) const {
  const auto& row = branches_.at(branch).thresholds.at(box);
  auto it = row.find(type);
  if (it == row.end()) {
    throw std::out_of_range("no threshold for box " + std::to_string(box) +
                            ", type " + std::to_string(type));
  }
  return it->second;
}

bool ThresholdPlan::covers(const Instance& instance) const {
  for (const ThresholdBranch& b : branches_) {
    if (b.thresholds.size() != instance.size()) return false;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      for (const TypeBranch& t : instance.boxes[i].branches()) {
        if (!b.thresholds[i].contains(t.type)) return false;
      }
    }
  }
  return true;
}

double single_item_threshold(std::span<const DiscreteDist> capped) {
  if (capped.empty()) throw std::invalid_argument("no boxes");
  const auto es = to_eligible(capped);
  return median_point(es);
}

double k_uniform_threshold(std::span<const DiscreteDist> capped, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (static_cast<std::size_t>(k) > capped.size()) {
    throw std::invalid_argument("k exceeds the number of boxes");
  }
  const auto es = to_eligible(capped);
  return k_rule(es, k);
}

ThresholdPlan single_item_plan(const Instance& capped) {
  if (capped.boxes.empty()) throw std::invalid_argument("no boxes");
  const auto es = to_eligible(capped, [](TypeId) { return true; });
  const auto levels = single_levels(es);
  std::vector<ThresholdBranch> branches;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    ThresholdBranch b;
    b.label = levels.size() == 1 ? "uniform" : (l == 0 ? "lower" : "upper");
    b.weight = levels[l].weight;
    const double tau = levels[l].tau;
    b.thresholds = thresholds_by_type(capped, [tau](TypeId) { return tau; });
    b.gate = KeepOne{};
    branches.push_back(std::move(b));
  }
  return ThresholdPlan(PlanMode::kSingle, std::move(branches));
}

ThresholdPlan k_uniform_thresholds(const Instance& capped) {
  const auto* card = std::get_if<KeepCardinality>(&capped.keep);
  if (card == nullptr) {
    throw std::invalid_argument("k_uniform needs a cardinality constraint");
  }
  std::vector<DiscreteDist> marginals;
  for (const BoxSpec& box : capped.boxes) marginals.push_back(box.value_marginal());
  const double tau = k_uniform_threshold(marginals, card->k);
  return ThresholdPlan::uniform(PlanMode::kKUniform, capped, tau, *card);
}

ThresholdPlan knapsack_thresholds(const Instance& capped) {
  const auto* knap = std::get_if<KeepKnapsack>(&capped.keep);
  if (knap == nullptr) {
    throw std::invalid_argument("knapsack policy needs a knapsack constraint");
  }
  validate(capped);
  const double half = knap->capacity / 2.0;
  auto is_large = [&](TypeId t) { return knap->sizes.at(t) > half; };

  const auto large = to_eligible(capped, is_large);
  const bool has_large = !all_empty(large);
  const auto small = to_eligible(capped, [&](TypeId t) { return !is_large(t); });
  const bool has_small = !all_empty(small);

  std::vector<ThresholdBranch> branches;
  const double weight = has_large && has_small ? 0.5 : 1.0;
  if (has_large) {
    const auto levels = single_levels(large);
    for (std::size_t l = 0; l < levels.size(); ++l) {
      ThresholdBranch b;
      b.label = levels.size() == 1 ? "large" : (l == 0 ? "large:lower" : "large:upper");
      b.weight = weight * levels[l].weight;
      const double tau = levels[l].tau;
      b.thresholds = thresholds_by_type(
          capped, [&](TypeId t) { return is_large(t) ? tau : kNeverKeep; });
      b.gate = *knap;
      branches.push_back(std::move(b));
    }
  }
  if (has_small) {
    // An atom clears price rho iff value / size >= rho.
    auto clears = [&](double value, TypeId t, double rho) {
      return value / knap->sizes.at(t) >= rho;
    };
    // Expected size of small items clearing price rho.
    auto clearing_size = [&](double rho) {
      double total = 0.0;
      for (const BoxSpec& box : capped.boxes) {
        for (const TypeBranch& tb : box.branches()) {
          if (is_large(tb.type)) continue;
          const double s = knap->sizes.at(tb.type);
          for (const JointAtom& a : tb.law.atoms()) {
            if (clears(a.value, tb.type, rho)) total += s * tb.prob * a.prob;
          }
        }
      }
      return total;
    };
    std::vector<double> prices;
    std::map<TypeId, std::vector<double>> support;
    for (const BoxSpec& box : capped.boxes) {
      for (const TypeBranch& tb : box.branches()) {
        if (is_large(tb.type)) continue;
        for (const JointAtom& a : tb.law.atoms()) {
          support[tb.type].push_back(a.value);
          if (a.value >= 0.0) prices.push_back(a.value / knap->sizes.at(tb.type));
        }
      }
    }
    std::sort(prices.begin(), prices.end());
    double rho = 0.0;
    for (auto it = prices.rbegin(); it != prices.rend(); ++it) {
      if (clearing_size(*it) >= half - 1e-12 * knap->capacity) {
        rho = *it;
        break;
      }
    }
    // Smallest support value of each small type clearing rho.
    std::map<TypeId, double> small_tau;
    for (const auto& [t, values] : support) {
      double tau = kNeverKeep;
      for (double v : values) {
        if (clears(v, t, rho)) tau = std::min(tau, v);
      }
      small_tau[t] = tau;
    }
    ThresholdBranch b;
    b.label = "small";
    b.weight = weight;
    b.thresholds = thresholds_by_type(capped, [&](TypeId t) {
      return is_large(t) ? kNeverKeep : small_tau.at(t);
    });
    b.gate = KeepKnapsack{knap->sizes, half};
    branches.push_back(std::move(b));
  }
  return ThresholdPlan(PlanMode::kKnapsack, std::move(branches));
}

ThresholdPlan partition_matroid_thresholds(const Instance& capped) {
  const auto* part = std::get_if<KeepPartition>(&capped.keep);
  if (part == nullptr) {
    throw std::invalid_argument("partition policy needs a partition constraint");
  }
  validate(capped);
  std::vector<std::vector<Level>> levels(part->caps.size(), {{kNeverKeep, 1.0}});
  for (std::size_t g = 0; g < part->caps.size(); ++g) {
    const int cap = part->caps[g];
    if (cap == 0) continue;
    const auto es = to_eligible(capped, [&](TypeId t) {
      return part->groups.at(t) == static_cast<int>(g);
    });
    if (cap == 1) {
      levels[g] = single_levels(es);
    } else {
      levels[g] = {{k_rule(es, cap), 1.0}};
    }
  }
  // One branch per combination of group levels.
  std::vector<ThresholdBranch> branches;
  std::vector<std::size_t> pick(levels.size(), 0);
  while (true) {
    ThresholdBranch b;
    b.label = "partition";
    for (std::size_t g = 0; g < levels.size(); ++g) {
      b.weight *= levels[g][pick[g]].weight;
      if (levels[g].size() > 1) {
        b.label += ":g" + std::to_string(g) + (pick[g] == 0 ? "lower" : "upper");
      }
    }
    b.thresholds = thresholds_by_type(capped, [&](TypeId t) {
      const auto g = static_cast<std::size_t>(part->groups.at(t));
      return levels[g][pick[g]].tau;
    });
    b.gate = *part;
    branches.push_back(std::move(b));
    std::size_t g = 0;
    while (g < levels.size() && ++pick[g] == levels[g].size()) pick[g++] = 0;
    if (g == levels.size()) break;
  }
  return ThresholdPlan(PlanMode::kPartition, std::move(branches));
}

PolicyTrace run_threshold_policy(const Instance& capped,
                                 const ThresholdPlan& plan,
                                 const Realization& realization,
                                 std::size_t branch) {
  const ThresholdBranch& b = plan.branches()[branch];
  KeepState gate(b.gate);
  KeepState keep(capped.keep);
  OpenState open(capped);
  const bool rounds = std::holds_alternative<OpenOnePerRound>(capped.open);

  PolicyTrace trace;
  for (std::size_t i = 0; i < capped.size(); ++i) {
    const Outcome& o = realization[i];
    const double tau = plan.threshold(branch, i, o.type);
    const bool feasible = gate.can_keep(o.type) && keep.can_keep(o.type);
    if (rounds) {
      const double top = capped.boxes[i].branch(o.type).law.atoms().back().value;
      if (!open.can_open(i) || !feasible || !(top >= tau)) continue;
      open.open(i);
    }
    trace.opened.push_back(i);
    trace.revealed.push_back(o);
    trace.utility -= o.cost;
    if (feasible && o.value >= tau) {
      gate.keep(o.type);
      keep.keep(o.type);
      trace.kept.push_back(i);
      trace.utility += o.value;
    }
  }
  return trace;
}

ThresholdPolicy::ThresholdPolicy(Instance capped, ThresholdPlan plan)
    : capped_(std::move(capped)), plan_(std::move(plan)) {
  if (!plan_.covers(capped_)) {
    throw std::invalid_argument("plan does not cover every (box, type)");
  }
}

std::string ThresholdPolicy::name() const {
  return std::string(plan_mode_name(plan_.mode()));
}

}  // namespace pandora
