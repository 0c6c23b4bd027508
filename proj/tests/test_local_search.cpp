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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "submax/exact.hpp"
#include "submax/instance.hpp"
#include "submax/local_search.hpp"
#include "test_util.hpp"

using namespace submax;

TEST_CASE("deterministic double greedy hand trace on a single edge", "[localsearch]") {
  const OraclePtr oracle = build_oracle(testing::single_edge());
  const Subset result = double_greedy_det(*oracle);
  REQUIRE(result == Subset::of(2, {0}));
  REQUIRE(oracle->evaluate(result) == 1.0);  // the optimum
}

TEST_CASE("deterministic double greedy uses exactly 2m + 2 queries", "[localsearch]") {
  for (int m : {1, 3, 6, 9}) {
    const OraclePtr oracle = build_oracle(testing::empty_graph(m));
    double_greedy_det(*oracle);
    REQUIRE(oracle->ledger()->count() == static_cast<std::uint64_t>(2 * m + 2));
  }
}

TEST_CASE("deterministic double greedy trivial cases", "[localsearch]") {
  const OraclePtr zero = build_oracle(testing::empty_graph(4));
  REQUIRE(zero->evaluate(double_greedy_det(*zero)) == 0.0);

  const OraclePtr modular = testing::modular_oracle({1.0, 0.5, 2.0});
  REQUIRE(double_greedy_det(*modular).is_full());
}

TEST_CASE("deterministic double greedy meets the one-third sum bound", "[localsearch]") {
  // 3 f(T) >= f(opt) + f(empty) + f(full) on every unit graph with m = 4.
  for (std::uint64_t graph = 0; graph < testing::unit_graph_count(4); ++graph) {
    const OraclePtr oracle = build_oracle(testing::unit_graph(4, graph));
    const ExactResult exact = brute_force_opt(*oracle);
    const double value = oracle->evaluate(double_greedy_det(*oracle));
    REQUIRE(3.0 * value >= exact.opt_value - 1e-9);
  }
  SplitMix64 seeds(3);
  for (int trial = 0; trial < 20; ++trial) {
    const OraclePtr oracle =
        build_oracle(random_instance(InstanceKind::kRandomCut, 7, seeds.next(), {}));
    const ExactResult exact = brute_force_opt(*oracle);
    const double value = oracle->evaluate(double_greedy_det(*oracle));
    const double at_empty = oracle->evaluate(Subset::empty(7));
    const double at_full = oracle->evaluate(Subset::full(7));
    REQUIRE(3.0 * value >= exact.opt_value + at_empty + at_full - 1e-9);
  }
}

TEST_CASE("randomized double greedy baseline", "[localsearch]") {
  SECTION("zero function yields zero") {
    SplitMix64 rng(1);
    const OraclePtr zero = build_oracle(testing::empty_graph(5));
    REQUIRE(zero->evaluate(double_greedy_rand(*zero, rng)) == 0.0);
  }
  SECTION("positive modular weights force the full set") {
    SplitMix64 rng(2);
    const OraclePtr modular = testing::modular_oracle({0.2, 1.0, 3.0});
    for (int t = 0; t < 50; ++t) REQUIRE(double_greedy_rand(*modular, rng).is_full());
  }
  SECTION("pinned Monte Carlo on the single edge") {
    const OraclePtr oracle = build_oracle(testing::single_edge());
    SplitMix64 seeds(77);
    const int trials = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      SplitMix64 rng(seeds.next());
      const double v = oracle->evaluate(double_greedy_rand(*oracle, rng));
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double variance = sum_sq / trials - mean * mean;
    const double std_err = std::sqrt(std::max(variance, 0.0) / trials);
    REQUIRE(mean >= 0.5 - 3.0 * std_err);
  }
}

TEST_CASE("local search reaches the path and triangle optima", "[localsearch]") {
  SECTION("path graph") {
    const OraclePtr shifted = shift(build_oracle(testing::path3()));
    const LocalSearchResult res = local_search(*shifted, {0.05});
    REQUIRE(res.value == 2.0);
    REQUIRE((res.set == Subset::of(3, {1}) || res.set == Subset::of(3, {0, 2})));
  }
  SECTION("triangle") {
    const OraclePtr shifted = shift(build_oracle(testing::triangle()));
    const LocalSearchResult res = local_search(*shifted, {0.05});
    REQUIRE(res.value == 2.0);
    REQUIRE((res.set.count() == 1 || res.set.count() == 2));
  }
  SECTION("zero function takes no moves") {
    const OraclePtr shifted = shift(build_oracle(testing::empty_graph(4)));
    const LocalSearchResult res = local_search(*shifted, {0.05});
    REQUIRE(res.moves == 0);
    REQUIRE(res.value == 0.0);
  }
}

TEST_CASE("local search result invariants", "[localsearch]") {
  SplitMix64 seeds(31);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = random_instance(InstanceKind::kRandomCut, 8, seeds.next(), {});
    const OraclePtr shifted = shift(build_oracle(inst));
    const LocalSearchResult res = local_search(*shifted, {0.05});
    REQUIRE(res.value >= res.warm_start_value);
    REQUIRE(shifted->evaluate(res.set) == res.value);  // fresh evaluation matches
    REQUIRE(is_approx_local_max(*shifted, res.set, 0.05, LocalMaxMode::kSingleElement));
    REQUIRE(is_approx_local_max(*shifted, res.set, 0.05, LocalMaxMode::kExhaustive));
  }
}

TEST_CASE("local search move count stays under the termination bound", "[localsearch]") {
  SplitMix64 seeds(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(InstanceKind::kRandomCut, 8, seeds.next(), {});
    const OraclePtr shifted = shift(build_oracle(inst));
    const double epsilon = 0.05;
    const LocalSearchResult res = local_search(*shifted, {epsilon});
    const ExactResult exact = brute_force_opt(*shifted);
    if (exact.opt_value > 0.0) {
      const double step = 1.0 + epsilon / 8;
      const double bound = std::log(3.0 * (1.0 + epsilon)) / std::log(step);
      REQUIRE(static_cast<double>(res.moves) <= bound);
    } else {
      REQUIRE(res.moves == 0);
    }
  }
}

TEST_CASE("move cap errors carry the partial result", "[localsearch]") {
  // Hand-built table where double greedy lands on {0,2} with value 9.5 while
  // dropping element 0 jumps to 20, so the search must move.
  const double table[8] = {0.0, 1.0, 0.5, 10.0, 20.0, 9.5, 1.0, 0.0};
  const OraclePtr oracle = std::make_shared<CallbackOracle>(
      3, [&table](const Subset& s) { return table[s.to_mask()]; });
  REQUIRE(double_greedy_det(*oracle) == Subset::of(3, {0, 2}));

  LocalSearchConfig cfg;
  cfg.epsilon = 0.05;
  cfg.max_moves = 0;
  try {
    local_search(*oracle, cfg);
    FAIL("expected MoveCapExceeded");
  } catch (const MoveCapExceeded& e) {
    REQUIRE(e.partial.moves == 0);
    REQUIRE(e.partial.set == Subset::of(3, {0, 2}));
    REQUIRE(e.partial.value == 9.5);
  }
}

TEST_CASE("local search validates its configuration", "[localsearch]") {
  const OraclePtr oracle = build_oracle(testing::path3());
  REQUIRE_THROWS_AS(local_search(*oracle, {0.0}), ValidationError);
  REQUIRE_THROWS_AS(local_search(*oracle, {-1.0}), ValidationError);
}

TEST_CASE("approximate local maximum checks", "[localsearch]") {
  const OraclePtr p3 = build_oracle(testing::path3());
  SECTION("the max-cut set is an exact local maximum") {
    REQUIRE(is_approx_local_max(*p3, Subset::of(3, {1}), 0.0, LocalMaxMode::kExhaustive));
  }
  SECTION("a leaf vertex is not") {
    // T = {0,2} gives f = 2 > 1.
    REQUIRE_FALSE(is_approx_local_max(*p3, Subset::of(3, {0}), 0.0, LocalMaxMode::kExhaustive));
  }
  SECTION("huge epsilon accepts anything with a third of the max value") {
    REQUIRE(is_approx_local_max(*p3, Subset::of(3, {0}), 6.0, LocalMaxMode::kExhaustive));
  }
  SECTION("mode and size validation") {
    REQUIRE_THROWS_AS(is_approx_local_max(*testing::constant_oracle(17, 0.0),
                                          Subset::empty(17), 0.1, LocalMaxMode::kExhaustive),
                      ValidationError);
    REQUIRE_THROWS_AS(is_approx_local_max(*p3, Subset::empty(3), -0.1,
                                          LocalMaxMode::kSingleElement),
                      ValidationError);
  }
}
