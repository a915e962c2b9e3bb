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

#include "pandora/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "pandora/multiarm.hpp"
#include "pandora/oracle.hpp"
#include "pandora/prophet.hpp"
#include "pandora/reduction.hpp"
#include "pandora/reservation.hpp"

namespace pandora {

namespace {

constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::kSingle,   PolicyKind::kKUniform, PolicyKind::kKnapsack,
    PolicyKind::kPartition, PolicyKind::kMultiArm, PolicyKind::kWeitzman};
constexpr Benchmark kAllBenchmarks[] = {Benchmark::kOfflineOpt, Benchmark::kClairvoyant,
                                        Benchmark::kProphet, Benchmark::kCappedProphet};
constexpr Order kAllOrders[] = {Order::kGiven, Order::kReverse, Order::kRandom,
                                Order::kWorst};

// Exact policy values are reported only below this many realizations.
constexpr std::uint64_t kExactColumnLimit = std::uint64_t{1} << 20;
// Worst-order search: at most this many units and this much total work.
constexpr std::size_t kWorstMaxUnits = 7;
constexpr double kWorstMaxWork = 2e7;

std::vector<std::string_view> split(std::string_view list) {
  std::vector<std::string_view> out;
  while (!list.empty()) {
    const std::size_t comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

template <class T, std::size_t N, class F>
T parse_name(std::string_view name, const T (&all)[N], F&& to_name, const char* what) {
  std::string known;
  for (T x : all) {
    if (to_name(x) == name) return x;
    known += known.empty() ? "" : ", ";
    known += to_name(x);
  }
  throw std::invalid_argument("unknown " + std::string(what) + " '" +
                              std::string(name) + "' (expected one of: " + known + ")");
}

// Units permuted by an order: boxes, or whole rounds.
std::size_t order_units(const Instance& instance) {
  if (const auto* r = std::get_if<OpenOnePerRound>(&instance.open)) {
    return static_cast<std::size_t>(r->rounds);
  }
  return instance.size();
}

std::vector<std::size_t> expand_units(const Instance& instance,
                                      std::span<const std::size_t> units) {
  const std::size_t block = instance.size() / order_units(instance);
  std::vector<std::size_t> perm;
  for (std::size_t u : units) {
    for (std::size_t k = 0; k < block; ++k) perm.push_back(u * block + k);
  }
  return perm;
}

std::string join_perm(std::span<const std::size_t> units) {
  std::string s;
  for (std::size_t u : units) s += (s.empty() ? "" : "-") + std::to_string(u);
  return s;
}

struct OrderedInstance {
  Instance instance;
  std::string label;
};

OrderedInstance apply_order(const Instance& instance, Order order, PolicyKind kind,
                            std::uint64_t seed) {
  const std::size_t n = order_units(instance);
  std::vector<std::size_t> units(n);
  std::iota(units.begin(), units.end(), std::size_t{0});
  switch (order) {
    case Order::kGiven:
      return {instance, "given"};
    case Order::kReverse:
      std::reverse(units.begin(), units.end());
      return {permute_instance(instance, expand_units(instance, units)), "reverse"};
    case Order::kRandom: {
      Rng rng(derive_seed(seed, kOrderStream));
      for (std::size_t i = n; i > 1; --i) std::swap(units[i - 1], units[rng.below(i)]);
      return {permute_instance(instance, expand_units(instance, units)),
              "random:" + join_perm(units)};
    }
    case Order::kWorst: {
      double factorial = 1.0;
      for (std::size_t i = 2; i <= n; ++i) factorial *= static_cast<double>(i);
      const double work = factorial * static_cast<double>(realization_count(instance));
      if (n > kWorstMaxUnits || work > kWorstMaxWork) {
        throw std::invalid_argument(
            "worst-case order search needs at most " + std::to_string(kWorstMaxUnits) +
            " boxes (or rounds) and at most 2e7 permutation-realization pairs");
      }
      std::vector<std::size_t> best_units = units;
      double best = std::numeric_limits<double>::infinity();
      do {
        Instance permuted = permute_instance(instance, expand_units(instance, units));
        const double v = exact_policy_value(*make_policy(permuted, kind));
        if (v < best - 1e-12) {
          best = v;
          best_units = units;
        }
      } while (std::next_permutation(units.begin(), units.end()));
      return {permute_instance(instance, expand_units(instance, best_units)),
              "worst:" + join_perm(best_units)};
    }
  }
  throw std::logic_error("unreachable order");
}

void check_policy(const AnyInstance& instance, PolicyKind kind) {
  const auto applicable = applicable_policies(instance);
  if (std::find(applicable.begin(), applicable.end(), kind) == applicable.end()) {
    throw std::invalid_argument("policy '" + std::string(policy_name(kind)) +
                                "' does not apply to this instance");
  }
}

double exact_benchmark(const Instance& costly, Benchmark b) {
  switch (b) {
    case Benchmark::kOfflineOpt:
      return offline_opt(costly);
    case Benchmark::kClairvoyant:
      return clairvoyant_value(costly);
    case Benchmark::kProphet:
      return prophet_value(costly);
    case Benchmark::kCappedProphet:
      return prophet_value(cap_instance(costly, compute_sigmas(costly)));
  }
  throw std::logic_error("unreachable benchmark");
}

ReportRow base_row(const std::string& id, PolicyKind kind, const std::string& order,
                   const ExperimentConfig& config, const Summary& utility) {
  ReportRow row;
  row.instance_id = id;
  row.policy = std::string(policy_name(kind));
  row.order = order;
  row.trials = config.trials;
  row.seed = config.seed;
  row.utility = utility;
  return row;
}

void append_rows(std::vector<ReportRow>& rows, ReportRow row,
                 std::span<const BenchmarkValue> benchmarks) {
  if (benchmarks.empty()) {
    rows.push_back(std::move(row));
    return;
  }
  for (const BenchmarkValue& b : benchmarks) {
    ReportRow r = row;
    r.benchmark = b;
    if (b.value > 0.0) r.ratio = r.utility.mean / b.value;
    rows.push_back(std::move(r));
  }
}

std::vector<ReportRow> run_pandora(const Instance& instance,
                                   const ExperimentConfig& config,
                                   std::span<const PolicyKind> policies) {
  if (config.order != Order::kGiven) check_oracle_limits(instance);
  std::vector<BenchmarkValue> benchmarks;
  if (!config.benchmarks.empty()) check_oracle_limits(instance);
  for (Benchmark b : config.benchmarks) {
    benchmarks.push_back({b, exact_benchmark(instance, b), 0.0});
  }
  std::vector<ReportRow> rows;
  for (PolicyKind kind : policies) {
    const OrderedInstance ordered = apply_order(instance, config.order, kind, config.seed);
    const std::unique_ptr<Policy> policy = make_policy(ordered.instance, kind);
    const std::vector<double> weights = policy->branch_weights();
    std::vector<double> utility(config.trials);
    std::vector<std::size_t> violations(config.trials);
    parallel_for(config.trials, [&](std::size_t begin, std::size_t end) {
      for (std::size_t s = begin; s < end; ++s) {
        Rng rng = Rng::for_trial(config.seed, s);
        const std::size_t branch = draw_branch(weights, rng);
        const Realization r = sample_realization(ordered.instance, rng);
        const PolicyTrace trace = policy->run(r, branch);
        utility[s] = trace.utility;
        violations[s] = trace_violations(ordered.instance, r, trace).size();
      }
    }, config.workers);
    ReportRow row = base_row(instance.id, kind, ordered.label, config, summarize(utility));
    row.violations = std::accumulate(violations.begin(), violations.end(), std::size_t{0});
    if (realization_count(ordered.instance) <= kExactColumnLimit) {
      row.exact = exact_policy_value(*policy);
    }
    append_rows(rows, std::move(row), benchmarks);
  }
  return rows;
}

std::vector<ReportRow> run_multiarm(const MultiArmInstance& instance,
                                    const ExperimentConfig& config) {
  if (config.order != Order::kGiven) {
    throw std::invalid_argument("arrival orders apply to Pandora instances only");
  }
  const std::vector<double> sigmas = arm_sigmas(instance);
  const MultiArmInstance capped = cap_multiarm(instance, sigmas);
  const ArmThresholds thresholds = estimate_arm_thresholds(
      capped, config.threshold_samples, derive_seed(config.seed, kThresholdStream));

  const std::size_t n = config.trials;
  std::vector<double> utility(n), prophet(n), capped_prophet(n);
  std::vector<std::size_t> violations(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      Rng rng = Rng::for_trial(config.seed, s);
      const ArmDraws draws = sample_draws(instance, rng);
      ArmDraws capped_draws = draws;
      for (std::size_t t = 0; t < draws.size(); ++t) {
        for (double& v : capped_draws[t]) v = std::min(v, sigmas[t]);
      }
      const MultiArmTrace trace = run_multiarm_pandora(instance, sigmas, thresholds, draws);
      utility[s] = trace.utility;
      violations[s] = multiarm_violations(instance, trace).size();
      prophet[s] = simulate_prophet(instance, draws).utility;
      capped_prophet[s] = simulate_prophet(capped, capped_draws).utility;
    }
  }, config.workers);

  std::vector<BenchmarkValue> benchmarks;
  for (Benchmark b : config.benchmarks) {
    if (b == Benchmark::kProphet || b == Benchmark::kCappedProphet) {
      const Summary s = summarize(b == Benchmark::kProphet ? prophet : capped_prophet);
      benchmarks.push_back({b, s.mean, s.ci_halfwidth});
    } else {
      benchmarks.push_back({b, exact_benchmark(as_pandora_instance(instance), b), 0.0});
    }
  }
  ReportRow row = base_row(instance.id, PolicyKind::kMultiArm, "given", config,
                           summarize(utility));
  row.violations = std::accumulate(violations.begin(), violations.end(), std::size_t{0});
  std::vector<ReportRow> rows;
  append_rows(rows, std::move(row), benchmarks);
  return rows;
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

}  // namespace

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kSingle:
      return "single";
    case PolicyKind::kKUniform:
      return "k_uniform";
    case PolicyKind::kKnapsack:
      return "knapsack";
    case PolicyKind::kPartition:
      return "partition";
    case PolicyKind::kMultiArm:
      return "multiarm";
    case PolicyKind::kWeitzman:
      return "weitzman_oracle";
  }
  return "?";
}

PolicyKind parse_policy(std::string_view name) {
  return parse_name(name, kAllPolicies, policy_name, "policy");
}

std::vector<PolicyKind> parse_policy_list(std::string_view list,
                                          const AnyInstance& instance) {
  if (list == "all") return applicable_policies(instance);
  std::vector<PolicyKind> out;
  for (std::string_view name : split(list)) out.push_back(parse_policy(name));
  if (out.empty()) throw std::invalid_argument("empty policy list");
  return out;
}

PolicyKind default_policy(const AnyInstance& instance) {
  if (const auto* inst = std::get_if<Instance>(&instance)) {
    if (std::holds_alternative<KeepCardinality>(inst->keep)) return PolicyKind::kKUniform;
    if (std::holds_alternative<KeepKnapsack>(inst->keep)) return PolicyKind::kKnapsack;
    if (std::holds_alternative<KeepPartition>(inst->keep)) return PolicyKind::kPartition;
    return PolicyKind::kSingle;
  }
  return PolicyKind::kMultiArm;
}

std::vector<PolicyKind> applicable_policies(const AnyInstance& instance) {
  const auto* inst = std::get_if<Instance>(&instance);
  if (inst == nullptr) return {PolicyKind::kMultiArm};
  std::vector<PolicyKind> out{PolicyKind::kSingle};
  const PolicyKind matching = default_policy(instance);
  if (matching != PolicyKind::kSingle) out.push_back(matching);
  if (std::holds_alternative<KeepOne>(inst->keep) &&
      std::holds_alternative<OpenUnconstrained>(inst->open)) {
    out.push_back(PolicyKind::kWeitzman);
  }
  return out;
}

std::string_view benchmark_name(Benchmark b) {
  switch (b) {
    case Benchmark::kOfflineOpt:
      return "offline_opt";
    case Benchmark::kClairvoyant:
      return "clairvoyant";
    case Benchmark::kProphet:
      return "prophet";
    case Benchmark::kCappedProphet:
      return "capped_prophet";
  }
  return "?";
}

Benchmark parse_benchmark(std::string_view name) {
  return parse_name(name, kAllBenchmarks, benchmark_name, "benchmark");
}

std::vector<Benchmark> parse_benchmark_list(std::string_view list) {
  if (list == "all") return {std::begin(kAllBenchmarks), std::end(kAllBenchmarks)};
  std::vector<Benchmark> out;
  if (list == "none") return out;
  for (std::string_view name : split(list)) out.push_back(parse_benchmark(name));
  return out;
}

std::string_view order_name(Order order) {
  switch (order) {
    case Order::kGiven:
      return "given";
    case Order::kReverse:
      return "reverse";
    case Order::kRandom:
      return "random";
    case Order::kWorst:
      return "worst";
  }
  return "?";
}

Order parse_order(std::string_view name) {
  return parse_name(name, kAllOrders, order_name, "order");
}

std::unique_ptr<Policy> make_policy(const Instance& costly, PolicyKind kind) {
  if (kind == PolicyKind::kWeitzman) return std::make_unique<WeitzmanPolicy>(costly);
  SigmaTable sigmas = compute_sigmas(costly);
  const Instance capped = cap_instance(costly, sigmas);
  std::optional<ThresholdPlan> plan;
  switch (kind) {
    case PolicyKind::kSingle:
      plan = single_item_plan(capped);
      break;
    case PolicyKind::kKUniform:
      plan = k_uniform_thresholds(capped);
      break;
    case PolicyKind::kKnapsack:
      plan = knapsack_thresholds(capped);
      break;
    case PolicyKind::kPartition:
      plan = partition_matroid_thresholds(capped);
      break;
    default:
      throw std::invalid_argument("policy '" + std::string(policy_name(kind)) +
                                  "' does not apply to Pandora instances");
  }
  return std::make_unique<PandoraPolicy>(costly, std::move(sigmas), std::move(*plan));
}

Instance permute_instance(const Instance& instance, std::span<const std::size_t> perm) {
  const std::size_t n = instance.size();
  if (perm.size() != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  if (std::holds_alternative<OpenOnePerRound>(instance.open)) {
    const std::size_t block = instance.size() / order_units(instance);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t head = perm[i - i % block];
      if (perm[i] / block != head / block) {
        throw std::invalid_argument("permutation splits a round");
      }
    }
  }
  Instance out = instance;
  for (std::size_t i = 0; i < n; ++i) out.boxes[i] = instance.boxes[perm[i]];
  return out;
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string csv_header() {
  return "instance,policy,order,trials,seed,mean,ci_halfwidth,exact,benchmark,"
         "benchmark_value,benchmark_ci,ratio,violations\n";
}

std::string format_csv(std::span<const ReportRow> rows) {
  std::string out = csv_header();
  for (const ReportRow& r : rows) {
    out += r.instance_id + "," + r.policy + "," + r.order + "," +
           std::to_string(r.trials) + "," + std::to_string(r.seed) + "," +
           format_number(r.utility.mean) + "," + format_number(r.utility.ci_halfwidth) +
           "," + format_optional(r.exact) + ",";
    if (r.benchmark) {
      out += std::string(benchmark_name(r.benchmark->kind)) + "," +
             format_number(r.benchmark->value) + "," +
             format_number(r.benchmark->ci_halfwidth) + ",";
      out += r.ratio ? format_number(*r.ratio) : std::string("n/a");
    } else {
      out += "none,,,n/a";
    }
    out += "," + std::to_string(r.violations) + "\n";
  }
  return out;
}

std::string format_table(std::span<const ReportRow> rows) {
  std::vector<std::vector<std::string>> cells{
      {"policy", "order", "mean", "+/-", "exact", "benchmark", "value", "ratio"}};
  for (const ReportRow& r : rows) {
    cells.push_back({r.policy, r.order, format_number(r.utility.mean),
                     format_number(r.utility.ci_halfwidth), format_optional(r.exact),
                     r.benchmark ? std::string(benchmark_name(r.benchmark->kind)) : "-",
                     r.benchmark ? format_number(r.benchmark->value) : "-",
                     r.ratio ? format_number(*r.ratio) : "n/a"});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  if (!rows.empty()) {
    out += "instance " + rows[0].instance_id + ", " + std::to_string(rows[0].trials) +
           " trials, seed " + std::to_string(rows[0].seed) + "\n";
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += line[c];
      if (c + 1 < line.size()) out += std::string(width[c] - line[c].size() + 2, ' ');
    }
    out += "\n";
  }
  std::size_t violations = 0;
  for (const ReportRow& r : rows) violations += r.violations;
  if (violations > 0) {
    out += "WARNING: " + std::to_string(violations) + " constraint violations\n";
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::vector<ReportRow> run_experiment(const AnyInstance& instance,
                                      const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<PolicyKind> policies = config.policies;
  if (policies.empty()) policies.push_back(default_policy(instance));
  for (PolicyKind kind : policies) check_policy(instance, kind);
  if (const auto* multi = std::get_if<MultiArmInstance>(&instance)) {
    return run_multiarm(*multi, config);
  }
  return run_pandora(std::get<Instance>(instance), config, policies);
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
  const AnyInstance instance = load_instance(config.instance_path);
  std::vector<ReportRow> rows = run_experiment(instance, config);
  if (config.out) write_file_atomic(*config.out, format_csv(rows));
  return rows;
}

std::string describe_thresholds(const AnyInstance& instance, PolicyKind kind,
                                std::uint64_t seed, std::size_t samples) {
  check_policy(instance, kind);
  std::string out;
  if (const auto* multi = std::get_if<MultiArmInstance>(&instance)) {
    const std::vector<double> sigmas = arm_sigmas(*multi);
    const ArmThresholds th = estimate_arm_thresholds(
        cap_multiarm(*multi, sigmas), samples, derive_seed(seed, kThresholdStream));
    out = "arm,cost,sigma,tau,prophet_value,ci_halfwidth,samples,seed\n";
    for (std::size_t t = 0; t < multi->arms.size(); ++t) {
      out += std::to_string(t) + "," + format_number(multi->arms[t].cost) + "," +
             format_number(sigmas[t]) + "," + format_number(th.tau[t]) + "," +
             format_number(th.prophet_value[t]) + "," + format_number(th.ci_halfwidth[t]) +
             "," + std::to_string(th.sample_count) + "," + std::to_string(seed) + "\n";
    }
    return out;
  }
  const Instance& costly = std::get<Instance>(instance);
  const SigmaTable sigmas = compute_sigmas(costly);
  out = "box,type,sigma,branch,label,weight,tau\n";
  if (kind == PolicyKind::kWeitzman) {
    for (std::size_t i = 0; i < costly.size(); ++i) {
      for (const auto& [type, sigma] : sigmas.box(i)) {
        out += std::to_string(i) + "," + std::to_string(type) + "," +
               format_number(sigma) + ",,,,\n";
      }
    }
    return out;
  }
  const std::unique_ptr<Policy> policy = make_policy(costly, kind);
  const auto& pandora = static_cast<const PandoraPolicy&>(*policy);
  const auto branches = pandora.plan().branches();
  for (std::size_t b = 0; b < branches.size(); ++b) {
    for (std::size_t i = 0; i < costly.size(); ++i) {
      for (const auto& [type, sigma] : sigmas.box(i)) {
        out += std::to_string(i) + "," + std::to_string(type) + "," +
               format_number(sigma) + "," + std::to_string(b) + "," +
               branches[b].label + "," + format_number(branches[b].weight) + "," +
               format_number(pandora.plan().threshold(b, i, type)) + "\n";
      }
    }
  }
  return out;
}

std::string describe_benchmarks(const AnyInstance& instance,
                                std::span<const Benchmark> benchmarks) {
  std::string out = "instance,benchmark,value\n";
  if (const auto* multi = std::get_if<MultiArmInstance>(&instance)) {
    for (Benchmark b : benchmarks) {
      double v = 0.0;
      if (b == Benchmark::kProphet) {
        v = exact_prophet_value(*multi);
      } else if (b == Benchmark::kCappedProphet) {
        v = exact_prophet_value(cap_multiarm(*multi, arm_sigmas(*multi)));
      } else {
        v = exact_benchmark(as_pandora_instance(*multi), b);
      }
      out += multi->id + "," + std::string(benchmark_name(b)) + "," + format_number(v) + "\n";
    }
    return out;
  }
  const Instance& costly = std::get<Instance>(instance);
  check_oracle_limits(costly);
  for (Benchmark b : benchmarks) {
    out += costly.id + "," + std::string(benchmark_name(b)) + "," +
           format_number(exact_benchmark(costly, b)) + "\n";
  }
  return out;
}

Instance clairvoyant_gap_instance(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Instance inst;
  inst.id = "clairvoyant_gap_n" + std::to_string(n);
  const BoxSpec box = BoxSpec::single_type(JointVC({{0.0, 1.0, 0.5}, {2.0, 1.0, 0.5}}));
  inst.boxes.assign(static_cast<std::size_t>(n), box);
  return inst;
}

std::string clairvoyant_demo(int max_n) {
  if (max_n < 2) throw std::invalid_argument("n must be >= 2");
  std::string out = "n,clairvoyant,closed_form,offline_opt,gap,clairvoyant_may_decline\n";
  for (int n = 2; n <= max_n; ++n) {
    const Instance inst = clairvoyant_gap_instance(n);
    const double clair = clairvoyant_exactly_one(inst);
    const double opt = offline_opt(inst);
    out += std::to_string(n) + "," + format_number(clair) + "," +
           format_number(1.0 - std::ldexp(1.0, 1 - n)) + "," + format_number(opt) + "," +
           format_number(clair - opt) + "," + format_number(clairvoyant_value(inst)) + "\n";
  }
  return out;
}

}  // namespace pandora
