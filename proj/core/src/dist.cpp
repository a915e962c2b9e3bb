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

#include "pandora/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pandora {

namespace {

void check_prob(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("atom probability " + std::to_string(p) +
                                " outside (0, 1]");
  }
}

void check_total(double total) {
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw std::invalid_argument("probabilities sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("distribution has no atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value)) {
      throw std::invalid_argument("atom value is not finite");
    }
    check_prob(a.prob);
    total += a.prob;
  }
  check_total(total);
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().value == a.value) {
      atoms_.back().prob += a.prob;
    } else {
      atoms_.push_back(a);
    }
  }
}

DiscreteDist DiscreteDist::point_mass(double value) {
  return DiscreteDist({{value, 1.0}});
}

bool operator==(const DiscreteDist& a, const DiscreteDist& b) {
  return std::equal(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(),
                    b.atoms_.end(), [](const Atom& x, const Atom& y) {
                      return x.value == y.value && x.prob == y.prob;
                    });
}

double expect(const DiscreteDist& d) {
  double sum = 0.0;
  for (const Atom& a : d.atoms()) sum += a.prob * a.value;
  return sum;
}

double expect_excess(const DiscreteDist& d, double y) {
  double sum = 0.0;
  for (const Atom& a : d.atoms()) {
    if (a.value > y) sum += a.prob * (a.value - y);
  }
  return sum;
}

double tail(const DiscreteDist& d, double y) {
  double sum = 0.0;
  for (const Atom& a : d.atoms()) {
    if (a.value >= y) sum += a.prob;
  }
  return std::min(sum, 1.0);
}

double max_tail(std::span<const DiscreteDist> ds, double y) {
  if (ds.empty()) return 0.0;
  double none = 1.0;
  for (const DiscreteDist& d : ds) none *= 1.0 - tail(d, y);
  return 1.0 - none;
}

double sample(const DiscreteDist& d, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (const Atom& a : d.atoms()) {
    acc += a.prob;
    if (u < acc) return a.value;
  }
  return d.max_value();
}

JointVC::JointVC(std::vector<JointAtom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("joint law has no atoms");
  double total = 0.0;
  for (const JointAtom& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.cost)) {
      throw std::invalid_argument("joint atom is not finite");
    }
    if (a.cost < 0.0) {
      throw std::invalid_argument("negative cost " + std::to_string(a.cost));
    }
    check_prob(a.prob);
    total += a.prob;
  }
  check_total(total);
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const JointAtom& a, const JointAtom& b) {
                     return a.value < b.value ||
                            (a.value == b.value && a.cost < b.cost);
                   });
  atoms_.reserve(atoms.size());
  for (const JointAtom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().value == a.value &&
        atoms_.back().cost == a.cost) {
      atoms_.back().prob += a.prob;
    } else {
      atoms_.push_back(a);
    }
  }
}

DiscreteDist value_marginal(const JointVC& j) {
  std::vector<Atom> atoms;
  atoms.reserve(j.size());
  for (const JointAtom& a : j.atoms()) atoms.push_back({a.value, a.prob});
  return DiscreteDist(std::move(atoms));
}

double expect_cost(const JointVC& j) {
  double sum = 0.0;
  for (const JointAtom& a : j.atoms()) sum += a.prob * a.cost;
  return sum;
}

const JointAtom& sample(const JointVC& j, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (const JointAtom& a : j.atoms()) {
    acc += a.prob;
    if (u < acc) return a;
  }
  return j.atoms().back();
}

}  // namespace pandora
