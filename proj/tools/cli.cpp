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

#include "cli.hpp"

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "pandora/experiment.hpp"
#include "pandora/instance_io.hpp"

namespace pandora {

namespace {

struct Options {
  std::string instance;
  std::string policy;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string benchmarks;
  std::string out;
  std::string permute;
  std::size_t samples = 100000;
  int max_n = 10;
};

void add_instance(CLI::App* cmd, Options& o) {
  cmd->add_option("--instance", o.instance, "Instance file (JSON)")->required();
}
void add_seed(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
}
void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Write the CSV output here");
}
void add_samples(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "Multi-arm threshold samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}
void add_run(CLI::App* cmd, Options& o, const char* policy_help) {
  add_instance(cmd, o);
  cmd->add_option("--policy", o.policy, policy_help);
  cmd->add_option("--trials", o.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_seed(cmd, o);
  cmd->add_option("--benchmarks", o.benchmarks,
                  "Comma-separated: offline_opt, clairvoyant, prophet, "
                  "capped_prophet, all, none");
  add_out(cmd, o);
  cmd->add_option("--permute", o.permute, "Arrival order")
      ->check(CLI::IsMember({"worst", "random", "reverse"}));
  add_samples(cmd, o);
}

// Writes `text` to --out if given, else to `out`.
void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_file_atomic(o.out, text);
  }
}

ExperimentConfig make_config(const Options& o, const AnyInstance& instance,
                             const char* default_policies) {
  ExperimentConfig config;
  config.instance_path = o.instance;
  const std::string policies = o.policy.empty() ? default_policies : o.policy;
  if (!policies.empty()) config.policies = parse_policy_list(policies, instance);
  config.trials = o.trials;
  config.seed = o.seed;
  config.benchmarks = parse_benchmark_list(o.benchmarks);
  config.order = o.permute.empty() ? Order::kGiven : parse_order(o.permute);
  config.threshold_samples = o.samples;
  return config;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online Pandora's box policies, thresholds and exact benchmarks", "pandora"};
  app.require_subcommand(1);
  Options o;

  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Print reservation prices and the threshold plan");
  add_instance(thresholds, o);
  thresholds->add_option("--policy", o.policy, "Policy (default: matches the constraint)");
  add_seed(thresholds, o);
  add_samples(thresholds, o);
  add_out(thresholds, o);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of one policy");
  add_run(simulate, o, "Policy (default: matches the constraint)");

  CLI::App* oracle = app.add_subcommand("oracle", "Exact benchmark values");
  add_instance(oracle, o);
  oracle->add_option("--benchmarks", o.benchmarks, "Benchmarks (default: all)");
  add_out(oracle, o);

  CLI::App* demo = app.add_subcommand(
      "demo-clairvoyant", "Clairvoyant vs offline optimum for n = 2..N iid boxes");
  demo->add_option("n", o.max_n, "Largest n")->required()->check(CLI::Range(2, 10));
  add_out(demo, o);

  CLI::App* compare = app.add_subcommand("compare", "Monte Carlo run of several policies");
  add_run(compare, o, "Comma-separated policies (default: all applicable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*demo) {
      emit(o, clairvoyant_demo(o.max_n), out);
      return 0;
    }
    const AnyInstance instance = load_instance(o.instance);
    if (*thresholds) {
      const PolicyKind kind =
          o.policy.empty() ? default_policy(instance) : parse_policy(o.policy);
      emit(o, describe_thresholds(instance, kind, o.seed, o.samples), out);
    } else if (*oracle) {
      const auto benchmarks =
          parse_benchmark_list(o.benchmarks.empty() ? "all" : o.benchmarks);
      emit(o, describe_benchmarks(instance, benchmarks), out);
    } else {
      const bool is_compare = static_cast<bool>(*compare);
      const ExperimentConfig config =
          make_config(o, instance, is_compare ? "all" : "");
      const std::vector<ReportRow> rows = run_experiment(instance, config);
      if (o.out.empty() && !is_compare) {
        out << format_csv(rows);
      } else {
        if (!o.out.empty()) write_file_atomic(o.out, format_csv(rows));
        out << format_table(rows);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pandora
