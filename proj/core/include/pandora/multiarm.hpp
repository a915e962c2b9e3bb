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

#ifndef PANDORA_MULTIARM_HPP_
#define PANDORA_MULTIARM_HPP_

// Multi-arm Pandora's boxes: J rounds, m arms (types), one box of each arm per
// round, at most one box opened per round and at most one prize kept per arm.
//
// By deferred randomness a run is driven by ArmDraws: draws[t][k] is the value
// found in the k-th box of arm t that gets opened, whenever that happens.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pandora/dist.hpp"
#include "pandora/model.hpp"
#include "pandora/rng.hpp"

namespace pandora {

struct Arm {
  double cost = 0.0;
  DiscreteDist values;
};

struct MultiArmInstance {
  std::string id;
  int rounds = 0;
  std::vector<Arm> arms;
};

// Throws std::invalid_argument unless rounds >= 0, there is at least one arm,
// costs are >= 0 and every support value is strictly positive.
void validate(const MultiArmInstance& instance);

using ArmDraws = std::vector<std::vector<double>>;

// rounds draws per arm, arm-major. Consumes m * rounds uniforms.
ArmDraws sample_draws(const MultiArmInstance& instance, Rng& rng);

// Openings, revealed values and kept prizes of one multi-arm run.
struct MultiArmTrace {
  explicit MultiArmTrace(std::size_t arms)
      : opens(arms, 0), kept(arms, false), kept_value(arms, 0.0),
        kept_round(arms, -1) {}

  struct Opening {
    int round;
    std::size_t arm;
    double value;
  };
  std::vector<Opening> openings;
  std::vector<int> opens;
  std::vector<bool> kept;
  std::vector<double> kept_value;
  std::vector<int> kept_round;
  double utility = 0.0;

  void record_open(int round, std::size_t arm, double value, double cost);
  void record_keep(std::size_t arm, double value);

  // Same run as a PolicyTrace over boxes numbered round * m + arm.
  PolicyTrace as_policy_trace() const;
};

// One round of the greedy prophet: the arm maximizing
// E[(v - best[t])^+] - cost_t, lowest index on ties. `best[t]` is the largest
// value seen on arm t so far (0 if none).
std::size_t prophet_greedy_step(const MultiArmInstance& instance,
                                std::span<const double> best);

// Greedy prophet: opens one box every round, then keeps the largest value of
// each arm. Utility is sum_t (max value of t) - c_t * opens_t.
MultiArmTrace simulate_prophet(const MultiArmInstance& instance,
                               const ArmDraws& draws);

struct ArmThresholds {
  std::vector<double> tau;             // tau_t = prophet_value[t] / 2
  std::vector<double> prophet_value;   // mean per-arm value kept by the prophet
  std::vector<double> ci_halfwidth;    // 3 sigma of that mean
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of the prophet's per-arm kept value; sample s uses
// Rng::for_trial(seed, s). Throws std::invalid_argument for n_samples == 0.
ArmThresholds estimate_arm_thresholds(const MultiArmInstance& instance,
                                      std::size_t n_samples, std::uint64_t seed);

// Score E[v 1{v > tau_t}] of each arm.
std::vector<double> arm_scores(const MultiArmInstance& instance,
                               std::span<const double> tau);

// Eligible arm with the largest positive score, lowest index on ties; returns
// score.size() if none is positive.
std::size_t best_eligible_arm(std::span<const double> score,
                              const std::vector<bool>& retired);

// Greedy threshold policy: each round opens the best eligible arm (an arm is
// retired once a prize of it is kept), keeps v iff v > tau_t strictly, and
// stops opening when no eligible arm has a positive score.
MultiArmTrace run_multiarm_policy(const MultiArmInstance& instance,
                                  const ArmThresholds& thresholds,
                                  const ArmDraws& draws);

// Per-arm reservation prices.
std::vector<double> arm_sigmas(const MultiArmInstance& instance);

// Zero-cost arms with values min(v, sigma_t). Throws std::invalid_argument if
// some sigma_t <= 0 (that arm would have no positive capped value).
MultiArmInstance cap_multiarm(const MultiArmInstance& instance,
                              std::span<const double> sigmas);

// The same model as an Instance: box round * m + t has type t, one box is
// opened per round and at most one prize is kept per type.
Instance as_pandora_instance(const MultiArmInstance& instance);

// Exact expectations by recursion over the support (tiny instances only).
double exact_prophet_value(const MultiArmInstance& instance);
double optimal_opening_value(const MultiArmInstance& instance);
double exact_multiarm_policy_value(const MultiArmInstance& instance,
                                   std::span<const double> tau);

// Violations of one-open-per-round, one-prize-per-arm, kept-implies-opened
// and utility accounting.
std::vector<std::string> multiarm_violations(const MultiArmInstance& instance,
                                             const MultiArmTrace& trace);

}  // namespace pandora

#endif  // PANDORA_MULTIARM_HPP_
