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

// Benchmark and utility CLI for unconstrained non-negative submodular
// maximization. Exit codes: 0 success, 1 verification failure, 2 bad
// configuration or input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submax/submax.hpp"

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw submax::ValidationError("cannot open file: " + path.string());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw submax::ValidationError("cannot write file: " + out_path);
  out << text;
}

submax::Instance load_instance(const std::string& path) {
  try {
    return submax::parse_instance(read_file(path));
  } catch (const submax::Error& e) {
    throw submax::ValidationError(path + ": " + e.what());
  }
}

int cmd_run(const std::string& config_path, const std::string& out_path) {
  const auto base_dir = std::filesystem::path(config_path).parent_path();
  const submax::BenchConfig config =
      submax::parse_bench_config(read_file(config_path), base_dir.empty() ? "." : base_dir);
  const submax::RunReport report = submax::run(config);
  write_output(out_path, submax::emit(report, config.format));
  return submax::exit_code_for(report);
}

int cmd_solve(const std::string& instance_path, const std::string& algo, int depth,
              double epsilon, std::uint64_t seed, int trials) {
  const submax::Instance inst = load_instance(instance_path);
  const submax::OraclePtr oracle = submax::build_oracle(inst);

  double value = 0.0;
  std::string set_text;
  std::uint64_t moves = 0;
  if (algo == "alg") {
    const submax::RecursionResult res = submax::recursive_maximize(oracle, {epsilon, depth});
    value = res.value;
    set_text = res.set.to_string();
    moves = res.trace.subtree_ls_moves();
  } else if (algo == "ls") {
    const submax::OraclePtr shifted = submax::shift(oracle);
    const submax::LocalSearchResult res = submax::local_search(*shifted, {epsilon, std::nullopt});
    value = oracle->evaluate(res.set);
    set_text = res.set.to_string();
    moves = res.moves;
  } else if (algo == "dg-det") {
    const submax::Subset set = submax::double_greedy_det(*oracle);
    value = oracle->evaluate(set);
    set_text = set.to_string();
  } else if (algo == "dg-rand") {
    submax::SplitMix64 seeds(seed);
    double sum = 0.0;
    submax::Subset last;
    for (int t = 0; t < trials; ++t) {
      submax::SplitMix64 rng(seeds.next());
      last = submax::double_greedy_rand(*oracle, rng);
      sum += oracle->evaluate(last);
    }
    value = sum / trials;
    set_text = last.to_string() + " (last of " + std::to_string(trials) + " trials)";
  } else if (algo == "brute") {
    const submax::ExactResult res = submax::brute_force_opt(*oracle);
    value = res.opt_value;
    set_text = res.opt_set.to_string();
  } else {
    throw submax::ValidationError("unknown algorithm: " + algo);
  }

  std::cout << "instance: " << instance_path << "\n";
  std::cout << "algorithm: " << algo;
  if (algo == "alg") std::cout << " (depth " << depth << ", epsilon " << epsilon << ")";
  std::cout << "\n";
  std::cout << "set: " << set_text << "\n";
  std::cout << "value: " << submax::format_double(value) << "\n";
  std::cout << "queries: " << oracle->ledger()->count() << "\n";
  if (moves > 0) std::cout << "moves: " << moves << "\n";
  if (inst.m <= submax::brute_force_cap() && algo != "brute") {
    const submax::ExactResult exact = submax::brute_force_opt(*submax::build_oracle(inst));
    std::cout << "opt: " << submax::format_double(exact.opt_value) << "\n";
    std::cout << "ratio: " << submax::format_double(submax::ratio(value, exact)) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& instance_path, int trials, std::uint64_t seed) {
  const submax::Instance inst = load_instance(instance_path);
  const submax::OraclePtr oracle = submax::build_oracle(inst);
  submax::CheckReport report;
  if (inst.m <= 12) {
    report = submax::check_submodular(*oracle);
    std::cout << "mode: exhaustive (" << report.checks << " inequalities)\n";
  } else {
    submax::SplitMix64 rng(seed);
    report = submax::check_submodular_sampled(*oracle, trials, rng);
    std::cout << "mode: sampled (" << report.checks << " trials)\n";
  }
  std::cout << "submodular: " << (report.submodular ? "yes" : "NO") << "\n";
  std::cout << "non-negative: " << (report.non_negative ? "yes" : "NO") << "\n";
  if (report.violation) std::cout << "witness: " << report.violation->describe() << "\n";
  if (report.negative) {
    std::cout << "negative at " << report.negative->set.to_string() << ": "
              << submax::format_double(report.negative->value) << "\n";
  }
  return report.ok() ? 0 : kExitVerificationFailure;
}

int cmd_gen(const std::string& kind_name, int m, std::uint64_t seed,
            const submax::GenParams& params, const std::string& out_path) {
  const submax::InstanceKind kind = submax::kind_from_string(kind_name);
  submax::GenParams resolved = params;
  if (kind == submax::InstanceKind::kRandomCoverage && resolved.universe == 0) {
    resolved.universe = 2 * m;
  }
  const submax::Instance inst = submax::random_instance(kind, m, seed, resolved);
  write_output(out_path, submax::serialize(inst) + "\n");
  return 0;
}

int cmd_scale(const std::string& family, const std::vector<int>& sizes, double epsilon,
              std::uint64_t seed) {
  const submax::ScalingResult result =
      submax::scaling_experiment(family, sizes, epsilon, seed);
  std::cout << "m,queries,value\n";
  for (const auto& row : result.rows) {
    std::cout << row.m << ',' << row.queries << ',' << submax::format_double(row.value)
              << "\n";
  }
  std::cout << "slope: " << submax::format_double(result.slope) << "\n";
  std::cout << "intercept: " << submax::format_double(result.intercept) << "\n";
  std::cout << "residuals:";
  for (double r : result.residuals) std::cout << ' ' << submax::format_double(r);
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"submax: benchmarks for unconstrained submodular maximization"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto* run_cmd = app.add_subcommand("run", "run a benchmark suite from a config file");
  run_cmd->add_option("--config", config_path, "JSON config file")->required();
  run_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  std::string instance_path, algo = "alg";
  int depth = 2;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  int trials = 100;
  auto* solve_cmd = app.add_subcommand("solve", "run one algorithm on one instance");
  solve_cmd->add_option("--instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--algo", algo, "alg | ls | dg-det | dg-rand | brute");
  solve_cmd->add_option("--depth", depth, "recursion depth for alg");
  solve_cmd->add_option("--epsilon", epsilon, "accuracy parameter");
  solve_cmd->add_option("--seed", seed, "base seed for dg-rand");
  solve_cmd->add_option("--trials", trials, "trials for dg-rand");

  std::string verify_path;
  int verify_trials = 10000;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd =
      app.add_subcommand("verify", "check submodularity and non-negativity of an instance");
  verify_cmd->add_option("--instance", verify_path, "instance file")->required();
  verify_cmd->add_option("--trials", verify_trials, "sampled trials when m > 12");
  verify_cmd->add_option("--seed", verify_seed, "seed for sampled checks");

  std::string gen_kind, gen_out;
  int gen_m = 8;
  std::uint64_t gen_seed = 1;
  submax::GenParams gen_params;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance file");
  gen_cmd->add_option("--kind", gen_kind, "random-cut | random-coverage")->required();
  gen_cmd->add_option("--m", gen_m, "ground set size")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--p", gen_params.edge_probability, "edge probability (random-cut)");
  gen_cmd->add_option("--wmin", gen_params.min_weight, "minimum weight");
  gen_cmd->add_option("--wmax", gen_params.max_weight, "maximum weight");
  gen_cmd->add_option("--universe", gen_params.universe,
                      "universe size (random-coverage; default 2m)");
  gen_cmd->add_option("--density", gen_params.density, "set density (random-coverage)");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::string scale_family = "random-cut";
  std::vector<int> scale_sizes;
  double scale_epsilon = 0.1;
  std::uint64_t scale_seed = 1;
  auto* scale_cmd = app.add_subcommand("scale", "measure query growth across sizes");
  scale_cmd->add_option("--family", scale_family, "random-cut | random-coverage | zero");
  scale_cmd->add_option("--sizes", scale_sizes, "comma-separated ground sizes")
      ->required()
      ->delimiter(',');
  scale_cmd->add_option("--epsilon", scale_epsilon, "accuracy parameter");
  scale_cmd->add_option("--seed", scale_seed, "base seed for the family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_path);
    if (solve_cmd->parsed()) {
      return cmd_solve(instance_path, algo, depth, epsilon, seed, trials);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_path, verify_trials, verify_seed);
    if (gen_cmd->parsed()) return cmd_gen(gen_kind, gen_m, gen_seed, gen_params, gen_out);
    if (scale_cmd->parsed()) {
      return cmd_scale(scale_family, scale_sizes, scale_epsilon, scale_seed);
    }
  } catch (const submax::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
