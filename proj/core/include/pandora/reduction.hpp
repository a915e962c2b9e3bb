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

#ifndef PANDORA_REDUCTION_HPP_
#define PANDORA_REDUCTION_HPP_

// Online Pandora's box policies built from threshold policies on capped boxes.
//
// On arrival of box i with type t: open iff sigma_i(t) >= tau_i(t) and keeping
// (and opening) the box is feasible; once opened, keep iff
// min(v_i, sigma_i(t)) >= tau_i(t). A box whose value reaches its cap is
// therefore always kept, and the expected utility on the costly boxes equals
// the expected kept value of the same plan on the capped boxes.

#include <cstddef>
#include <string>
#include <vector>

#include "pandora/model.hpp"
#include "pandora/multiarm.hpp"
#include "pandora/prophet.hpp"
#include "pandora/reservation.hpp"

namespace pandora {

class PandoraPolicy final : public Policy {
 public:
  // `plan` must be defined on cap_instance(costly, sigmas); the capped
  // instance is re-derived here. Throws std::invalid_argument when a sigma or
  // threshold is missing for some (box, type).
  PandoraPolicy(Instance costly, SigmaTable sigmas, ThresholdPlan plan);

  std::string name() const override;
  const Instance& instance() const override { return costly_; }
  const Instance& capped_instance() const { return capped_; }
  const SigmaTable& sigmas() const { return sigmas_; }
  const ThresholdPlan& plan() const { return plan_; }
  std::vector<double> branch_weights() const override { return plan_.weights(); }

  PolicyTrace run(const Realization& realization,
                  std::size_t branch) const override;

 private:
  Instance costly_;
  Instance capped_;
  SigmaTable sigmas_;
  ThresholdPlan plan_;
};

PandoraPolicy reduce(const ThresholdPlan& plan, const SigmaTable& sigmas,
                     const Instance& costly);

// Pays realized costs, so utility = sum_R v - sum_S c.
PolicyTrace run_pandora(const PandoraPolicy& policy,
                        const Realization& realization, std::size_t branch);

// Maps a realization of the costly instance to the coupled realization of the
// capped instance: same types, values min(v, sigma), zero costs.
Realization cap_realization(const Realization& realization,
                            const SigmaTable& sigmas);

// Multi-arm variant. Scores and the keep test use the capped laws
// min(v, sigma_t); the opened box pays its realized cost and a kept prize
// contributes its uncapped value. `thresholds` must be computed on the capped
// instance.
MultiArmTrace run_multiarm_pandora(const MultiArmInstance& costly,
                                   std::span<const double> sigmas,
                                   const ArmThresholds& thresholds,
                                   const ArmDraws& draws);

}  // namespace pandora

#endif  // PANDORA_REDUCTION_HPP_
