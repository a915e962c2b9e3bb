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

#include "pandora/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace pandora {

PandoraPolicy::PandoraPolicy(Instance costly, SigmaTable sigmas,
                             ThresholdPlan plan)
    : costly_(std::move(costly)),
      sigmas_(std::move(sigmas)),
      plan_(std::move(plan)) {
  if (!sigmas_.covers(costly_)) {
    throw std::invalid_argument("sigma table misses a (box, type) of the instance");
  }
  if (!plan_.covers(costly_)) {
    throw std::invalid_argument("threshold plan misses a (box, type) of the instance");
  }
  capped_ = cap_instance(costly_, sigmas_);
}

std::string PandoraPolicy::name() const {
  return std::string(plan_mode_name(plan_.mode()));
}

PandoraPolicy reduce(const ThresholdPlan& plan, const SigmaTable& sigmas,
                     const Instance& costly) {
  return PandoraPolicy(costly, sigmas, plan);
}

PolicyTrace PandoraPolicy::run(const Realization& realization,
                               std::size_t branch) const {
  const ThresholdBranch& b = plan_.branches()[branch];
  KeepState gate(b.gate);
  KeepState keep(costly_.keep);
  OpenState open(costly_);

  PolicyTrace trace;
  for (std::size_t i = 0; i < costly_.size(); ++i) {
    const Outcome& o = realization[i];
    const double tau = plan_.threshold(branch, i, o.type);
    const double sigma = sigmas_.at(i, o.type);
    if (!(sigma >= tau) || !open.can_open(i) || !gate.can_keep(o.type) ||
        !keep.can_keep(o.type)) {
      continue;
    }
    open.open(i);
    trace.opened.push_back(i);
    trace.revealed.push_back(o);
    trace.utility -= o.cost;
    if (std::min(o.value, sigma) >= tau) {
      gate.keep(o.type);
      keep.keep(o.type);
      trace.kept.push_back(i);
      trace.utility += o.value;
    }
  }
  return trace;
}

PolicyTrace run_pandora(const PandoraPolicy& policy,
                        const Realization& realization, std::size_t branch) {
  return policy.run(realization, branch);
}

Realization cap_realization(const Realization& realization,
                            const SigmaTable& sigmas) {
  Realization out = realization;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].value = std::min(out[i].value, sigmas.at(i, out[i].type));
    out[i].cost = 0.0;
  }
  return out;
}

MultiArmTrace run_multiarm_pandora(const MultiArmInstance& costly,
                                   std::span<const double> sigmas,
                                   const ArmThresholds& thresholds,
                                   const ArmDraws& draws) {
  const std::size_t m = costly.arms.size();
  if (sigmas.size() != m || thresholds.tau.size() != m) {
    throw std::invalid_argument("sigmas/thresholds do not match the arms");
  }
  std::vector<double> score(m, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    for (const Atom& a : costly.arms[t].values.atoms()) {
      const double capped = std::min(a.value, sigmas[t]);
      if (capped > thresholds.tau[t]) score[t] += a.prob * capped;
    }
  }
  MultiArmTrace trace(m);
  std::vector<bool> retired(m, false);
  for (int j = 0; j < costly.rounds; ++j) {
    const std::size_t t = best_eligible_arm(score, retired);
    if (t == m) break;
    const double v = draws.at(t).at(trace.opens[t]);
    trace.record_open(j, t, v, costly.arms[t].cost);
    if (std::min(v, sigmas[t]) > thresholds.tau[t]) {
      trace.record_keep(t, v);
      retired[t] = true;
    }
  }
  return trace;
}

}  // namespace pandora
