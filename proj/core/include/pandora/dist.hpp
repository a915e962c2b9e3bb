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

#ifndef PANDORA_DIST_HPP_
#define PANDORA_DIST_HPP_

// Finite-support distributions. Every exact quantity in the library (reservation
// prices, thresholds, oracle values) is computed from these atoms.

#include <cstddef>
#include <span>
#include <vector>

#include "pandora/rng.hpp"

namespace pandora {

// Tolerance on the total probability mass accepted at construction.
inline constexpr double kProbTolerance = 1e-12;

struct Atom {
  double value;
  double prob;
};

// Distribution over finitely many real values. Atoms are sorted ascending by
// value with duplicates merged; immutable once built.
class DiscreteDist {
 public:
  // Throws std::invalid_argument on empty input, non-finite values,
  // probabilities outside (0, 1], or a total mass off 1 by more than
  // kProbTolerance.
  explicit DiscreteDist(std::vector<Atom> atoms);

  static DiscreteDist point_mass(double value);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }

  friend bool operator==(const DiscreteDist& a, const DiscreteDist& b);

 private:
  std::vector<Atom> atoms_;
};

// E[v].
double expect(const DiscreteDist& d);

// E[(v - y)^+]. Nonincreasing, convex and piecewise linear in y with kinks at
// the support points.
double expect_excess(const DiscreteDist& d, double y);

// Pr[v >= y].
double tail(const DiscreteDist& d, double y);

// Pr[max_i v_i >= y] for independent v_i ~ ds[i]. Zero for an empty list.
double max_tail(std::span<const DiscreteDist> ds, double y);

// Draws one atom value. Consumes exactly one uniform from `rng`.
double sample(const DiscreteDist& d, Rng& rng);

// One outcome of a box's (value, cost) law given its type.
struct JointAtom {
  double value;
  double cost;
  double prob;
};

// Joint law of (value, cost). Costs must be nonnegative. Atoms are sorted by
// (value, cost) and merged.
class JointVC {
 public:
  explicit JointVC(std::vector<JointAtom> atoms);

  std::span<const JointAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<JointAtom> atoms_;
};

// Value marginal of a joint law.
DiscreteDist value_marginal(const JointVC& j);

// E[c].
double expect_cost(const JointVC& j);

// Draws one (value, cost) atom. Consumes exactly one uniform from `rng`.
const JointAtom& sample(const JointVC& j, Rng& rng);

}  // namespace pandora

#endif  // PANDORA_DIST_HPP_
