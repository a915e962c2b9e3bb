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

#ifndef PANDORA_STATS_HPP_
#define PANDORA_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>

namespace pandora {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;        // sample standard deviation
  double ci_halfwidth = 0.0;  // 3 * stddev / sqrt(count)
};

// Sums in index order, so the result does not depend on how `values` was
// filled.
Summary summarize(std::span<const double> values);

// Calls body(begin, end) on contiguous chunks of [0, n) across worker
// threads (at most `max_workers`, 0 for one per hardware thread, and never
// fewer than 1024 indices per worker). Callers write results by index.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t max_workers = 0);

}  // namespace pandora

#endif  // PANDORA_STATS_HPP_
