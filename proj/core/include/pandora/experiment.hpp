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

#ifndef PANDORA_EXPERIMENT_HPP_
#define PANDORA_EXPERIMENT_HPP_

// Seeded Monte Carlo experiments, exact benchmarks and report formatting.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pandora/instance_io.hpp"
#include "pandora/model.hpp"
#include "pandora/stats.hpp"

namespace pandora {

enum class PolicyKind { kSingle, kKUniform, kKnapsack, kPartition, kMultiArm, kWeitzman };

// "single", "k_uniform", "knapsack", "partition", "multiarm", "weitzman_oracle".
std::string_view policy_name(PolicyKind kind);
PolicyKind parse_policy(std::string_view name);
// Comma-separated names, or "all" for every policy applicable to `instance`.
std::vector<PolicyKind> parse_policy_list(std::string_view list,
                                          const AnyInstance& instance);
// The threshold policy matching the instance's keeping constraint.
PolicyKind default_policy(const AnyInstance& instance);
std::vector<PolicyKind> applicable_policies(const AnyInstance& instance);

enum class Benchmark { kOfflineOpt, kClairvoyant, kProphet, kCappedProphet };

// "offline_opt", "clairvoyant", "prophet", "capped_prophet".
std::string_view benchmark_name(Benchmark b);
Benchmark parse_benchmark(std::string_view name);
// Comma-separated; "all" for every benchmark; "" or "none" for none.
std::vector<Benchmark> parse_benchmark_list(std::string_view list);

// Arrival order used for a Pandora instance. With an opening constraint the
// order applies to whole rounds.
enum class Order { kGiven, kReverse, kRandom, kWorst };
std::string_view order_name(Order order);
Order parse_order(std::string_view name);

// Stream indices (under the master seed) reserved for things other than
// trials. Trial s uses stream s.
inline constexpr std::uint64_t kOrderStream = ~std::uint64_t{0};
inline constexpr std::uint64_t kThresholdStream = ~std::uint64_t{0} - 1;

struct ExperimentConfig {
  std::filesystem::path instance_path;
  std::vector<PolicyKind> policies;  // empty: default_policy
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::vector<Benchmark> benchmarks;
  std::optional<std::filesystem::path> out;
  Order order = Order::kGiven;
  std::size_t threshold_samples = 100000;  // multi-arm threshold estimation
  std::size_t workers = 0;                 // 0: one per hardware thread
};

struct BenchmarkValue {
  Benchmark kind;
  double value = 0.0;
  double ci_halfwidth = 0.0;  // 0 for exact benchmarks
};

struct ReportRow {
  std::string instance_id;
  std::string policy;
  std::string order;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Summary utility;
  std::optional<double> exact;  // exact expected utility, when enumerable
  std::optional<BenchmarkValue> benchmark;
  std::optional<double> ratio;  // mean / benchmark; absent when benchmark <= 0
  std::size_t violations = 0;
};

// One row per (policy, benchmark), or one row per policy without benchmarks.
// Throws std::invalid_argument for inapplicable policies or benchmarks and
// OracleLimitError when an exact benchmark is requested beyond the limits.
std::vector<ReportRow> run_experiment(const AnyInstance& instance,
                                      const ExperimentConfig& config);
// Loads config.instance_path and, when config.out is set, writes the CSV.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

// Builds the online policy `kind` for a costly instance.
std::unique_ptr<Policy> make_policy(const Instance& costly, PolicyKind kind);

// Box order: result box i is instance box perm[i]. Throws
// std::invalid_argument unless perm is a permutation compatible with the
// opening constraint (whole rounds move together).
Instance permute_instance(const Instance& instance,
                          std::span<const std::size_t> perm);

// "%.9g" with negative zero printed as 0.
std::string format_number(double x);

std::string csv_header();
std::string format_csv(std::span<const ReportRow> rows);
// Aligned human-readable table.
std::string format_table(std::span<const ReportRow> rows);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

// CSV listing of the reservation prices and thresholds `kind` would use.
std::string describe_thresholds(const AnyInstance& instance, PolicyKind kind,
                                std::uint64_t seed, std::size_t samples);

// CSV "instance,benchmark,value" with exact benchmark values.
std::string describe_benchmarks(const AnyInstance& instance,
                                std::span<const Benchmark> benchmarks);

// n iid boxes with value 0 or 2 (probability 1/2 each) and cost 1, keep one.
Instance clairvoyant_gap_instance(int n);

// CSV "n,clairvoyant,closed_form,offline_opt,gap,clairvoyant_may_decline" for
// n = 2..max_n. `clairvoyant` must accept exactly one box and matches
// closed_form = 1 - 2^(1-n); `clairvoyant_may_decline` may keep nothing.
std::string clairvoyant_demo(int max_n);

}  // namespace pandora

#endif  // PANDORA_EXPERIMENT_HPP_
