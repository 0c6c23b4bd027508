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

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "submax/checks.hpp"
#include "submax/errors.hpp"
#include "submax/exact.hpp"
#include "submax/instance.hpp"
#include "submax/local_search.hpp"
#include "submax/recursive.hpp"
#include "submax/rng.hpp"

namespace submax {

// Shortest round-trip decimal form; keeps reports byte-reproducible.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("double formatting failed");
  return std::string(buf, ptr);
}

inline void to_json(nlohmann::json& j, const TraceNode& node) {
  j = nlohmann::json{{"rounds", node.rounds},
                     {"ground_size", node.ground_size},
                     {"s", node.s_members},
                     {"s_value", node.s_value},
                     {"s_comp_value", node.s_comp_value},
                     {"empty_value", node.empty_value},
                     {"full_value", node.full_value},
                     {"chosen", node.chosen},
                     {"queries", node.queries},
                     {"ls_moves", node.ls_moves},
                     {"children", node.children}};
  if (node.t1_value) j["t1_value"] = *node.t1_value;
  if (node.t2_value) j["t2_value"] = *node.t2_value;
  if (node.t1_union_t2_value) j["t1_union_t2_value"] = *node.t1_union_t2_value;
}

struct AlgoSpec {
  enum class Kind { kRecursive, kLocalSearch, kDoubleGreedyDet, kDoubleGreedyRand, kBrute };
  Kind kind = Kind::kRecursive;
  int depth = 2;  // recursive only
  std::string label;
};

inline AlgoSpec parse_algorithm(const std::string& label) {
  AlgoSpec spec;
  spec.label = label;
  if (label == "ls") {
    spec.kind = AlgoSpec::Kind::kLocalSearch;
  } else if (label == "dg-det") {
    spec.kind = AlgoSpec::Kind::kDoubleGreedyDet;
  } else if (label == "dg-rand") {
    spec.kind = AlgoSpec::Kind::kDoubleGreedyRand;
  } else if (label == "brute") {
    spec.kind = AlgoSpec::Kind::kBrute;
  } else if (label.rfind("alg@", 0) == 0) {
    spec.kind = AlgoSpec::Kind::kRecursive;
    const std::string depth_text = label.substr(4);
    int depth = 0;
    const auto [ptr, ec] =
        std::from_chars(depth_text.data(), depth_text.data() + depth_text.size(), depth);
    if (ec != std::errc() || ptr != depth_text.data() + depth_text.size() || depth < 0) {
      throw ValidationError("bad recursion depth in algorithm label: " + label);
    }
    spec.depth = depth;
  } else {
    throw ValidationError("unknown algorithm: " + label +
                          " (expected alg@<depth>, ls, dg-det, dg-rand or brute)");
  }
  return spec;
}

struct BenchInstance {
  std::string id;
  Instance instance;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  std::vector<AlgoSpec> algorithms;
  std::vector<double> epsilons;
  int trials = 100;                // randomized baseline repetitions
  std::string format = "csv";     // csv | markdown | json
  bool verify = false;
  std::uint64_t base_seed = 1;
  std::optional<int> brute_cap;
  bool include_traces = false;    // json format only
};

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

inline GenParams gen_params_from_json(const nlohmann::json& j) {
  GenParams params;
  if (j.contains("p")) params.edge_probability = j.at("p").get<double>();
  if (j.contains("wmin")) params.min_weight = j.at("wmin").get<double>();
  if (j.contains("wmax")) params.max_weight = j.at("wmax").get<double>();
  if (j.contains("universe")) params.universe = j.at("universe").get<int>();
  if (j.contains("density")) params.density = j.at("density").get<double>();
  return params;
}

}  // namespace detail

inline BenchConfig parse_bench_config(const std::string& text,
                                      const std::filesystem::path& base_dir = ".") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  BenchConfig config;
  try {
    if (!j.contains("instances") || !j.at("instances").is_array() || j.at("instances").empty()) {
      throw ValidationError("config needs at least one instance source");
    }
    for (const auto& source : j.at("instances")) {
      BenchInstance bi;
      if (source.contains("file")) {
        const std::filesystem::path path =
            base_dir / source.at("file").get<std::string>();
        try {
          bi.instance = parse_instance(detail::read_text_file(path));
        } catch (const Error& e) {
          throw ValidationError(path.string() + ": " + e.what());
        }
        bi.id = path.stem().string();
      } else if (source.contains("gen")) {
        const auto& g = source.at("gen");
        const InstanceKind kind = kind_from_string(g.at("kind").get<std::string>());
        const int m = g.at("m").get<int>();
        const std::uint64_t seed = g.at("seed").get<std::uint64_t>();
        GenParams params = detail::gen_params_from_json(g);
        if (kind == InstanceKind::kRandomCoverage && params.universe == 0) {
          params.universe = 2 * m;
        }
        bi.instance = random_instance(kind, m, seed, params);
        bi.id = g.contains("name") ? g.at("name").get<std::string>()
                                   : to_string(kind) + "-m" + std::to_string(m) + "-s" +
                                         std::to_string(seed);
      } else {
        throw ValidationError("instance sources need a \"file\" or \"gen\" entry");
      }
      config.instances.push_back(std::move(bi));
    }
    if (!j.contains("algorithms") || j.at("algorithms").empty()) {
      throw ValidationError("config needs at least one algorithm");
    }
    for (const auto& label : j.at("algorithms")) {
      config.algorithms.push_back(parse_algorithm(label.get<std::string>()));
    }
    if (!j.contains("epsilons") || j.at("epsilons").empty()) {
      throw ValidationError("config needs at least one epsilon");
    }
    for (const auto& eps : j.at("epsilons")) {
      const double value = eps.get<double>();
      if (!(value > 0.0)) throw ValidationError("epsilon values must be positive");
      config.epsilons.push_back(value);
    }
    if (j.contains("trials")) config.trials = j.at("trials").get<int>();
    if (config.trials < 1) throw ValidationError("trials must be >= 1");
    if (j.contains("format")) config.format = j.at("format").get<std::string>();
    if (config.format != "csv" && config.format != "markdown" && config.format != "json") {
      throw ValidationError("format must be csv, markdown or json");
    }
    if (j.contains("verify")) config.verify = j.at("verify").get<bool>();
    if (j.contains("base_seed")) config.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("max_brute_m")) config.brute_cap = j.at("max_brute_m").get<int>();
    if (j.contains("include_traces")) config.include_traces = j.at("include_traces").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  return config;
}

struct RunRow {
  std::string instance;
  int m = 0;
  std::string algorithm;
  double epsilon = 0.0;
  std::optional<int> depth;
  double value = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  std::uint64_t queries = 0;
  std::uint64_t moves = 0;
  std::optional<bool> verified;
  double millis = 0.0;  // timing lives in its own column; diffs ignore it
  nlohmann::json trace;  // populated only when traces are requested
  std::string error;     // per-cell algorithm error, if any
};

struct RunReport {
  std::vector<RunRow> rows;
  std::optional<double> min_ratio;
  std::optional<double> mean_ratio;
  std::optional<double> query_slope;  // log-log fit over recursive rows

  bool all_verified_ok() const {
    for (const auto& row : rows) {
      if (row.verified && !*row.verified) return false;
    }
    return true;
  }
};

// 0: success, 1: some verification failed, 2: configuration error (raised as
// an exception before a report exists).
inline int exit_code_for(const RunReport& report) {
  return report.all_verified_ok() ? 0 : 1;
}

namespace detail {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

inline LogLogFit fit_log_log(const std::vector<std::pair<double, double>>& points) {
  LogLogFit fit;
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [x, y] : points) {
    fit.residuals.push_back(std::log(y) - (fit.intercept + fit.slope * std::log(x)));
  }
  return fit;
}

}  // namespace detail

inline RunReport run(const BenchConfig& config) {
  if (config.instances.empty()) throw ValidationError("config needs at least one instance");
  if (config.algorithms.empty()) throw ValidationError("config needs at least one algorithm");
  if (config.epsilons.empty()) throw ValidationError("config needs at least one epsilon");

  const int cap = config.brute_cap ? *config.brute_cap : brute_force_cap();
  RunReport report;

  for (const auto& bench_instance : config.instances) {
    const Instance& inst = bench_instance.instance;
    const int m = inst.m;
    const bool brute_feasible = m <= cap;
    const bool verify_here = config.verify && m <= 12 && brute_feasible;

    std::optional<ExactResult> exact;
    if (brute_feasible) {
      exact = brute_force_opt(*build_oracle(inst), cap);
    }
    std::optional<bool> instance_checks;
    if (verify_here) {
      instance_checks = check_submodular(*build_oracle(inst)).ok();
    }

    for (const auto& algo : config.algorithms) {
      for (const double epsilon : config.epsilons) {
        const auto started = std::chrono::steady_clock::now();
        RunRow row;
        row.instance = bench_instance.id;
        row.m = m;
        row.algorithm = algo.label;
        row.epsilon = epsilon;

        const OraclePtr oracle = build_oracle(inst);
        std::optional<bool> algo_check;

        // Per-cell algorithm errors are recorded on the row; they flip the
        // verification flag but never abort the suite.
        try {
          switch (algo.kind) {
            case AlgoSpec::Kind::kRecursive: {
              row.depth = algo.depth;
              const RecursionResult res = recursive_maximize(oracle, {epsilon, algo.depth});
              row.value = res.value;
              row.moves = res.trace.subtree_ls_moves();
              if (verify_here) {
                const NodeOptima optima =
                    compute_node_optima(build_oracle(inst), res.trace, cap);
                algo_check = verify_trace(res.trace, optima, epsilon).all_ok();
              }
              if (config.include_traces) row.trace = res.trace;
              break;
            }
            case AlgoSpec::Kind::kLocalSearch: {
              const OraclePtr shifted_oracle = shift(oracle);
              const LocalSearchResult res = local_search(*shifted_oracle, {epsilon, std::nullopt});
              row.value = oracle->evaluate(res.set);
              row.moves = res.moves;
              if (verify_here) {
                algo_check = is_approx_local_max(*shift(build_oracle(inst)), res.set,
                                                 epsilon, LocalMaxMode::kExhaustive);
              }
              break;
            }
            case AlgoSpec::Kind::kDoubleGreedyDet: {
              const Subset set = double_greedy_det(*oracle);
              row.value = oracle->evaluate(set);
              break;
            }
            case AlgoSpec::Kind::kDoubleGreedyRand: {
              SplitMix64 seed_stream(config.base_seed);
              double sum = 0.0;
              for (int t = 0; t < config.trials; ++t) {
                SplitMix64 trial_rng(seed_stream.next());
                const Subset set = double_greedy_rand(*oracle, trial_rng);
                sum += oracle->evaluate(set);
              }
              row.value = sum / config.trials;
              break;
            }
            case AlgoSpec::Kind::kBrute: {
              const ExactResult res = brute_force_opt(*oracle, cap);
              row.value = res.opt_value;
              break;
            }
          }
          if (exact) {
            row.opt = exact->opt_value;
            row.ratio = ratio(row.value, *exact);
          }
          if (verify_here) {
            row.verified = *instance_checks && algo_check.value_or(true);
          }
        } catch (const Error& e) {
          row.error = e.what();
          row.verified = false;
          row.opt.reset();
          row.ratio.reset();
        }
        row.queries = oracle->ledger()->count();
        row.millis = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
        report.rows.push_back(std::move(row));
      }
    }
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const RunRow& a, const RunRow& b) {
    return std::tie(a.instance, a.algorithm, a.epsilon) <
           std::tie(b.instance, b.algorithm, b.epsilon);
  });

  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (const auto& row : report.rows) {
    if (!row.ratio) continue;
    ratio_sum += *row.ratio;
    ++ratio_count;
    if (!report.min_ratio || *row.ratio < *report.min_ratio) report.min_ratio = *row.ratio;
  }
  if (ratio_count > 0) report.mean_ratio = ratio_sum / ratio_count;

  std::vector<std::pair<double, double>> query_points;
  for (const auto& row : report.rows) {
    if (row.depth && row.queries > 0) {
      query_points.emplace_back(static_cast<double>(row.m),
                                static_cast<double>(row.queries));
    }
  }
  std::vector<double> distinct_sizes;
  for (const auto& [x, y] : query_points) {
    if (std::find(distinct_sizes.begin(), distinct_sizes.end(), x) == distinct_sizes.end()) {
      distinct_sizes.push_back(x);
    }
  }
  if (distinct_sizes.size() >= 3) {
    report.query_slope = detail::fit_log_log(query_points).slope;
  }
  return report;
}

namespace detail {

inline std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : "";
}

inline std::string verified_cell(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "true" : "false";
}

inline std::string millis_cell(double millis) {
  std::ostringstream oss;
  oss.setf(std::ios::fixed);
  oss.precision(3);
  oss << millis;
  return oss.str();
}

}  // namespace detail

inline std::string emit(const RunReport& report, const std::string& format) {
  if (format == "csv") {
    std::ostringstream out;
    out << "instance,m,algorithm,epsilon,depth,value,opt,ratio,queries,moves,verified,millis\n";
    for (const auto& row : report.rows) {
      out << row.instance << ',' << row.m << ',' << row.algorithm << ','
          << format_double(row.epsilon) << ','
          << (row.depth ? std::to_string(*row.depth) : "") << ','
          << format_double(row.value) << ',' << detail::cell(row.opt) << ','
          << detail::cell(row.ratio) << ',' << row.queries << ',' << row.moves << ','
          << detail::verified_cell(row.verified) << ',' << detail::millis_cell(row.millis)
          << '\n';
    }
    return out.str();
  }
  if (format == "markdown") {
    std::ostringstream out;
    out << "| instance | m | algorithm | epsilon | depth | value | opt | ratio | queries "
           "| moves | verified | millis |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : report.rows) {
      out << "| " << row.instance << " | " << row.m << " | " << row.algorithm << " | "
          << format_double(row.epsilon) << " | "
          << (row.depth ? std::to_string(*row.depth) : "") << " | "
          << format_double(row.value) << " | " << detail::cell(row.opt) << " | "
          << detail::cell(row.ratio) << " | " << row.queries << " | " << row.moves << " | "
          << detail::verified_cell(row.verified) << " | " << detail::millis_cell(row.millis)
          << " |\n";
    }
    out << '\n';
    if (report.min_ratio) out << "min ratio: " << format_double(*report.min_ratio) << '\n';
    if (report.mean_ratio) out << "mean ratio: " << format_double(*report.mean_ratio) << '\n';
    if (report.query_slope) {
      out << "query scaling slope: " << format_double(*report.query_slope) << '\n';
    }
    return out.str();
  }
  if (format == "json") {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
      nlohmann::json r{{"instance", row.instance},
                       {"m", row.m},
                       {"algorithm", row.algorithm},
                       {"epsilon", row.epsilon},
                       {"value", row.value},
                       {"queries", row.queries},
                       {"moves", row.moves},
                       {"millis", row.millis}};
      if (row.depth) r["depth"] = *row.depth;
      if (row.opt) r["opt"] = *row.opt;
      if (row.ratio) r["ratio"] = *row.ratio;
      if (row.verified) r["verified"] = *row.verified;
      if (!row.error.empty()) r["error"] = row.error;
      if (!row.trace.is_null()) r["trace"] = row.trace;
      j["rows"].push_back(std::move(r));
    }
    nlohmann::json aggregates = nlohmann::json::object();
    if (report.min_ratio) aggregates["min_ratio"] = *report.min_ratio;
    if (report.mean_ratio) aggregates["mean_ratio"] = *report.mean_ratio;
    if (report.query_slope) aggregates["query_slope"] = *report.query_slope;
    j["aggregates"] = std::move(aggregates);
    return j.dump(2) + "\n";
  }
  throw ValidationError("format must be csv, markdown or json");
}

// Strips the timing column from a CSV report; what remains is byte-identical
// across reruns of the same config.
inline std::string strip_timing(const std::string& csv) {
  std::ostringstream out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
  }
  return out.str();
}

struct ScalingResult {
  struct Row {
    int m = 0;
    std::uint64_t queries = 0;
    double value = 0.0;
  };
  std::vector<Row> rows;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

// Measures query growth of the budget-2 recursion over a seeded instance
// family and fits log(queries) against log(m).
inline ScalingResult scaling_experiment(const std::string& family,
                                        const std::vector<int>& sizes, double epsilon,
                                        std::uint64_t base_seed = 1) {
  if (sizes.size() < 3) throw ValidationError("scaling experiment needs at least 3 sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw ValidationError("scaling experiment sizes must be ascending");
  }
  for (int m : sizes) {
    if (m < 1) throw ValidationError("scaling experiment sizes must be >= 1");
  }
  if (!(epsilon > 0.0)) throw ValidationError("scaling experiment needs epsilon > 0");

  ScalingResult result;
  SplitMix64 seed_stream(base_seed);
  for (int m : sizes) {
    const std::uint64_t seed = seed_stream.next();
    Instance inst;
    if (family == "random-cut") {
      inst = random_instance(InstanceKind::kRandomCut, m, seed, {});
    } else if (family == "random-coverage") {
      GenParams params;
      params.universe = 2 * m;
      inst = random_instance(InstanceKind::kRandomCoverage, m, seed, params);
    } else if (family == "zero") {
      inst.kind = InstanceKind::kCut;
      inst.m = m;
    } else {
      throw ValidationError("unknown scaling family: " + family +
                            " (expected random-cut, random-coverage or zero)");
    }
    const OraclePtr oracle = build_oracle(inst);
    const RecursionResult res = recursive_maximize(oracle, {epsilon, 2});
    result.rows.push_back({m, oracle->ledger()->count(), res.value});
  }

  std::vector<std::pair<double, double>> points;
  for (const auto& row : result.rows) {
    points.emplace_back(static_cast<double>(row.m),
                        static_cast<double>(std::max<std::uint64_t>(row.queries, 1)));
  }
  const detail::LogLogFit fit = detail::fit_log_log(points);
  result.slope = fit.slope;
  result.intercept = fit.intercept;
  result.residuals = fit.residuals;
  return result;
}

}  // namespace submax
