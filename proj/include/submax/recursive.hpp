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
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "submax/errors.hpp"
#include "submax/exact.hpp"
#include "submax/local_search.hpp"
#include "submax/oracle.hpp"
#include "submax/subset.hpp"

namespace submax {

struct RecursionConfig {
  double epsilon = 0.05;
  int nrounds = 2;  // remaining recursion budget; 2 gives the proven ratio
};

// One node of the recursion. All recorded values are taken under the node's
// shifted function (offset subtracted), where one endpoint is exactly zero;
// `queries` counts this node's own queries, excluding its children.
struct TraceNode {
  int rounds = 0;       // recursion budget this node ran with
  int ground_size = 0;
  std::vector<int> s_members;  // local-search output, node-local indices
  double s_value = 0.0;
  double s_comp_value = 0.0;
  double empty_value = 0.0;
  double full_value = 0.0;
  std::optional<double> t1_value;          // shifted value of T1
  std::optional<double> t2_value;          // shifted value of (S^c | T2)
  std::optional<double> t1_union_t2_value;
  std::string chosen;   // "S", "Sc", "T1uT2", "M" or "empty"
  std::uint64_t queries = 0;
  std::uint64_t ls_moves = 0;
  std::vector<TraceNode> children;  // empty, or exactly {T1 node, T2 node}

  bool recursed() const { return !children.empty(); }

  std::uint64_t subtree_queries() const {
    std::uint64_t total = queries;
    for (const auto& child : children) total += child.subtree_queries();
    return total;
  }

  std::uint64_t subtree_ls_moves() const {
    std::uint64_t total = ls_moves;
    for (const auto& child : children) total += child.subtree_ls_moves();
    return total;
  }

  std::uint64_t max_node_queries() const {
    std::uint64_t peak = queries;
    for (const auto& child : children) peak = std::max(peak, child.max_node_queries());
    return peak;
  }

  Subset s_subset() const {
    Subset s = Subset::empty(ground_size);
    for (int i : s_members) s.add(i);
    return s;
  }
};

struct RecursionResult {
  Subset set;
  double value = 0.0;
  TraceNode trace;
};

namespace detail {

struct Candidate {
  const char* label;
  const Subset* set;
  double shifted_value;
};

inline const Candidate& pick_argmax(std::span<const Candidate> candidates) {
  const Candidate* best = &candidates[0];
  for (const auto& c : candidates.subspan(1)) {
    if (c.shifted_value > best->shifted_value) best = &c;  // first maximum wins
  }
  return *best;
}

inline RecursionResult run_recursion(const OraclePtr& f, const RecursionConfig& cfg,
                                     int level) {
  QueryLedger& ledger = *f->ledger();
  const QueryLedger::LevelGuard guard(ledger, level);
  const std::uint64_t queries_at_entry = ledger.count();
  const int m = f->ground_size();

  const auto shifted = std::make_shared<ShiftOracle>(f);
  const LocalSearchResult ls = local_search(*shifted, {cfg.epsilon, std::nullopt});
  const Subset s_comp = ~ls.set;

  TraceNode node;
  node.rounds = cfg.nrounds;
  node.ground_size = m;
  node.s_members = ls.set.members();
  node.s_value = ls.value;
  node.s_comp_value = shifted->evaluate(s_comp);
  node.empty_value = shifted->value_at_empty();
  node.full_value = shifted->value_at_full();
  node.ls_moves = ls.moves;

  const Subset empty = Subset::empty(m);
  const Subset full = Subset::full(m);
  Subset combined;
  std::uint64_t child_queries = 0;

  std::vector<Candidate> candidates;
  candidates.push_back({"S", &ls.set, node.s_value});
  candidates.push_back({"Sc", &s_comp, node.s_comp_value});

  if (!ls.set.is_empty() && !ls.set.is_full() && cfg.nrounds > 0) {
    const RecursionConfig child_cfg{cfg.epsilon, cfg.nrounds - 1};

    const auto f1 = std::make_shared<RestrictOracle>(shifted, s_comp);
    RecursionResult r1 = run_recursion(f1, child_cfg, level + 1);
    const Subset t1 = f1->to_global(r1.set);

    const auto f2 = std::make_shared<PinUnionOracle>(shifted, s_comp, ls.set);
    RecursionResult r2 = run_recursion(f2, child_cfg, level + 1);
    const Subset t2 = f2->to_global(r2.set);

    child_queries = r1.trace.subtree_queries() + r2.trace.subtree_queries();
    combined = t1 | t2;
    node.t1_value = r1.value;
    node.t2_value = r2.value;
    node.t1_union_t2_value = shifted->evaluate(combined);
    node.children.push_back(std::move(r1.trace));
    node.children.push_back(std::move(r2.trace));
    candidates.push_back({"T1uT2", &combined, *node.t1_union_t2_value});
  }

  candidates.push_back({"M", &full, node.full_value});
  candidates.push_back({"empty", &empty, node.empty_value});

  const Candidate& winner = pick_argmax(candidates);
  node.chosen = winner.label;

  RecursionResult result;
  result.set = *winner.set;
  result.value = f->evaluate(result.set);  // fresh value under the input oracle
  node.queries = (ledger.count() - queries_at_entry) - child_queries;
  result.trace = std::move(node);
  return result;
}

}  // namespace detail

// The recursive maximizer. Shifts the function so the smaller endpoint is
// zero, finds an approximate local maximum S, then (budget permitting)
// recurses on the restriction to S^c and on T -> f'(S^c | T) over S, and
// returns the best of S, S^c, T1 | T2, the full set and the empty set.
// Candidate order breaks ties deterministically.
inline RecursionResult recursive_maximize(const OraclePtr& f, const RecursionConfig& cfg) {
  if (!f) throw ContractError("recursive_maximize requires an oracle");
  if (!(cfg.epsilon > 0.0)) throw ValidationError("recursion needs epsilon > 0");
  if (cfg.nrounds < 0) throw ValidationError("recursion depth must be non-negative");
  return detail::run_recursion(f, cfg, 0);
}

// Guaranteed value of a budget-0 run whose input satisfies the given lower
// bounds on (optimum, value at empty, value at full).
inline double depth0_value_bound(double opt_lb, double empty_lb, double full_lb) {
  if (opt_lb < 0.0 || empty_lb < 0.0 || full_lb < 0.0) {
    throw ValidationError("value bounds need non-negative arguments");
  }
  return std::max({(opt_lb + empty_lb + full_lb) / 3.0, full_lb, empty_lb});
}

// Same for a budget-1 run. Only covers inputs where one endpoint bound is
// zero; both positive is outside the guarantee's domain.
inline double depth1_value_bound(double opt_lb, double empty_lb, double full_lb,
                                 double epsilon) {
  if (opt_lb < 0.0 || empty_lb < 0.0 || full_lb < 0.0) {
    throw ValidationError("value bounds need non-negative arguments");
  }
  if (epsilon < 0.0) throw ValidationError("epsilon must be non-negative");
  if (empty_lb > 0.0 && full_lb > 0.0) {
    throw ValidationError("depth-1 bound needs one endpoint bound equal to zero");
  }
  const double endpoint = std::max(empty_lb, full_lb);
  const double linear = (1.0 - epsilon) / 3.0 * opt_lb + (1.0 - epsilon) / 2.0 * endpoint;
  return std::max({linear, empty_lb, full_lb});
}

// Per-node exact optima of the shifted functions along a recorded recursion,
// plus each node's shift offset. Mirrors the trace's tree shape.
struct NodeOptima {
  double opt = 0.0;     // optimum of the node's shifted function
  double offset = 0.0;  // shift offset at the node
  std::vector<NodeOptima> children;
};

// Replays the oracle tree a recorded run walked through: rebuilds each node's
// shifted oracle from the run's input function and the recorded S sets.
// visit(node, shifted) runs in pre-order.
template <typename Visitor>
void walk_trace_oracles(const OraclePtr& f, const TraceNode& node, Visitor&& visit) {
  if (f->ground_size() != node.ground_size) {
    throw ValidationError("trace ground size does not match the oracle");
  }
  const auto shifted = std::make_shared<ShiftOracle>(f);
  visit(node, *shifted);
  if (node.recursed()) {
    if (node.children.size() != 2) {
      throw ValidationError("recursed trace nodes must have exactly two children");
    }
    const Subset s = node.s_subset();
    const Subset s_comp = ~s;
    const auto f1 = std::make_shared<RestrictOracle>(shifted, s_comp);
    walk_trace_oracles(OraclePtr(f1), node.children[0], visit);
    const auto f2 = std::make_shared<PinUnionOracle>(shifted, s_comp, s);
    walk_trace_oracles(OraclePtr(f2), node.children[1], visit);
  }
}

namespace detail {

inline NodeOptima optima_recursion(const OraclePtr& f, const TraceNode& node, int cap) {
  if (f->ground_size() != node.ground_size) {
    throw ValidationError("trace ground size does not match the oracle");
  }
  const auto shifted = std::make_shared<ShiftOracle>(f);
  NodeOptima out;
  out.offset = shifted->offset();
  out.opt = brute_force_opt(*shifted, cap).opt_value;
  if (node.recursed()) {
    if (node.children.size() != 2) {
      throw ValidationError("recursed trace nodes must have exactly two children");
    }
    const Subset s = node.s_subset();
    const Subset s_comp = ~s;
    const auto f1 = std::make_shared<RestrictOracle>(shifted, s_comp);
    out.children.push_back(optima_recursion(OraclePtr(f1), node.children[0], cap));
    const auto f2 = std::make_shared<PinUnionOracle>(shifted, s_comp, s);
    out.children.push_back(optima_recursion(OraclePtr(f2), node.children[1], cap));
  }
  return out;
}

}  // namespace detail

// Brute-forces the optimum of every node's shifted function by replaying the
// trace against a fresh oracle for the same instance.
inline NodeOptima compute_node_optima(const OraclePtr& f, const TraceNode& trace,
                                      std::optional<int> cap_override = std::nullopt) {
  const int cap = cap_override ? *cap_override : brute_force_cap();
  return detail::optima_recursion(f, trace, cap);
}

struct TraceCheck {
  int rounds = 0;
  int ground_size = 0;
  // 2(1+eps) f'(S) + f'(S^c) >= opt' + f'(M) + f'(empty)
  bool local_max_sum_ok = true;
  double local_max_sum_slack = 0.0;
  // f'(T1 | T2) >= bound(child 1) + bound(child 2) - f'(S^c); only checkable
  // when the children's budget has a closed-form bound (0 or 1).
  bool composition_applicable = false;
  bool composition_ok = true;
  double composition_slack = 0.0;
};

struct TraceVerification {
  std::vector<TraceCheck> nodes;  // pre-order
  bool root_ratio_applicable = false;
  bool root_ratio_ok = true;
  double root_ratio_slack = 0.0;

  bool all_ok() const {
    if (root_ratio_applicable && !root_ratio_ok) return false;
    for (const auto& n : nodes) {
      if (!n.local_max_sum_ok) return false;
      if (n.composition_applicable && !n.composition_ok) return false;
    }
    return true;
  }
};

namespace detail {

inline double clamp0(double x) { return std::max(x, 0.0); }

inline double slack_tolerance(std::initializer_list<double> terms) {
  double scale = 1.0;
  for (double t : terms) scale = std::max(scale, std::fabs(t));
  return 1e-9 * scale;
}

inline void verify_node(const TraceNode& node, const NodeOptima& optima, double epsilon,
                        TraceVerification& out) {
  TraceCheck check;
  check.rounds = node.rounds;
  check.ground_size = node.ground_size;

  const double opt = optima.opt;
  const double s = node.s_value;
  const double sc = node.s_comp_value;
  const double at_empty = node.empty_value;
  const double at_full = node.full_value;

  {
    const double lhs = 2.0 * (1.0 + epsilon) * s + sc;
    const double rhs = opt + at_full + at_empty;
    check.local_max_sum_slack = lhs - rhs;
    check.local_max_sum_ok = lhs >= rhs - slack_tolerance({lhs, rhs});
  }

  if (node.recursed()) {
    if (optima.children.size() != 2) {
      throw ValidationError("node optima tree does not match the trace");
    }
    const int child_budget = node.rounds - 1;
    if (child_budget == 0) {
      const double a1 = depth0_value_bound(clamp0(opt + at_empty - (1.0 + epsilon) * s),
                                           clamp0(at_empty), clamp0(sc));
      const double a2 = depth0_value_bound(clamp0(opt + at_full - (1.0 + epsilon) * s),
                                           clamp0(sc), clamp0(at_full));
      const double lhs = *node.t1_union_t2_value;
      const double rhs = a1 + a2 - sc;
      check.composition_applicable = true;
      check.composition_slack = lhs - rhs;
      check.composition_ok = lhs >= rhs - slack_tolerance({lhs, a1, a2, sc});
    } else if (child_budget == 1) {
      // Endpoint arguments are lowered to zero (sound by monotonicity of the
      // true per-depth bound) so the depth-1 closed form applies.
      const double x = clamp0(opt - (1.0 + epsilon) * s);
      const double a1 = depth1_value_bound(x, 0.0, clamp0(sc), epsilon);
      const double a2 = depth1_value_bound(x, clamp0(sc), 0.0, epsilon);
      const double lhs = *node.t1_union_t2_value;
      const double rhs = a1 + a2 - sc;
      check.composition_applicable = true;
      check.composition_slack = lhs - rhs;
      check.composition_ok = lhs >= rhs - slack_tolerance({lhs, a1, a2, sc});
    }
    // Deeper budgets have no closed-form bound; left unchecked.
  }

  out.nodes.push_back(check);

  if (node.recursed()) {
    verify_node(node.children[0], optima.children[0], epsilon, out);
    verify_node(node.children[1], optima.children[1], epsilon, out);
  }
}

inline double chosen_shifted_value(const TraceNode& node) {
  if (node.chosen == "S") return node.s_value;
  if (node.chosen == "Sc") return node.s_comp_value;
  if (node.chosen == "T1uT2") {
    if (!node.t1_union_t2_value) throw ValidationError("trace chose T1uT2 without a value");
    return *node.t1_union_t2_value;
  }
  if (node.chosen == "M") return node.full_value;
  if (node.chosen == "empty") return node.empty_value;
  throw ValidationError("trace has unknown chosen label: " + node.chosen);
}

}  // namespace detail

// Checks the recorded recursion against the inequalities its guarantee rests
// on, with per-node slack. The root ratio check applies to budget-2 runs
// only, where the 2/5 - epsilon bound is proven.
inline TraceVerification verify_trace(const TraceNode& trace, const NodeOptima& optima,
                                      double epsilon) {
  if (epsilon < 0.0) throw ValidationError("epsilon must be non-negative");
  TraceVerification out;
  detail::verify_node(trace, optima, epsilon, out);
  if (trace.rounds == 2) {
    out.root_ratio_applicable = true;
    const double value = detail::chosen_shifted_value(trace) + optima.offset;
    const double opt = optima.opt + optima.offset;
    const double target = (0.4 - epsilon) * opt;
    out.root_ratio_slack = value - target;
    out.root_ratio_ok = value >= target - detail::slack_tolerance({value, target});
  }
  return out;
}

// Runs the recursive maximizer over a grid of budgets and accuracies and
// reports value and query cost per cell. Nothing is asserted about the trend
// in the budget; the rows are raw data.
struct SweepRow {
  int nrounds = 0;
  double epsilon = 0.0;
  double value = 0.0;
  std::uint64_t queries = 0;
};

inline std::vector<SweepRow> depth_sweep(const OraclePtr& f, std::span<const double> epsilons,
                                         std::span<const int> depths) {
  for (int d : depths) {
    if (d < 0) throw ValidationError("sweep depths must be non-negative");
  }
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw ValidationError("sweep epsilons must be positive");
  }
  std::vector<SweepRow> rows;
  for (int d : depths) {
    for (double eps : epsilons) {
      const std::uint64_t before = f->ledger()->count();
      const RecursionResult res = recursive_maximize(f, {eps, d});
      rows.push_back({d, eps, res.value, f->ledger()->count() - before});
    }
  }
  return rows;
}

}  // namespace submax
