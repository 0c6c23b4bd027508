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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "submax/exact.hpp"
#include "submax/instance.hpp"
#include "test_util.hpp"

using namespace submax;

TEST_CASE("brute force finds the optimum", "[exact]") {
  const ExactResult p3 = brute_force_opt(*build_oracle(testing::path3()));
  REQUIRE(p3.opt_value == 2.0);
  REQUIRE(p3.evaluations == 8);
  REQUIRE((p3.opt_set == Subset::of(3, {1}) || p3.opt_set == Subset::of(3, {0, 2})));

  const ExactResult k3 = brute_force_opt(*build_oracle(testing::triangle()));
  REQUIRE(k3.opt_value == 2.0);

  const OraclePtr empty_ground = testing::constant_oracle(0, 4.0);
  const ExactResult trivial = brute_force_opt(*empty_ground);
  REQUIRE(trivial.opt_value == 4.0);
  REQUIRE(trivial.opt_set.is_empty());
  REQUIRE(trivial.evaluations == 1);
}

TEST_CASE("brute force ties break toward the smallest bitmask", "[exact]") {
  const ExactResult flat = brute_force_opt(*testing::constant_oracle(4, 1.0));
  REQUIRE(flat.opt_set.is_empty());
  // {1} comes before {0,2} in mask order (2 < 5).
  const ExactResult p3 = brute_force_opt(*build_oracle(testing::path3()));
  REQUIRE(p3.opt_set == Subset::of(3, {1}));
}

TEST_CASE("brute force respects the cap", "[exact]") {
  REQUIRE_THROWS_AS(brute_force_opt(*testing::constant_oracle(25, 0.0)), ValidationError);
  REQUIRE_THROWS_AS(brute_force_opt(*testing::constant_oracle(10, 0.0), 8), ValidationError);
}

TEST_CASE("exact local maxima enumeration", "[exact]") {
  SECTION("path graph has the two max-cut sets") {
    const auto maxima = exact_local_maxima(*build_oracle(testing::path3()));
    REQUIRE(std::count(maxima.begin(), maxima.end(), Subset::of(3, {1})) == 1);
    REQUIRE(std::count(maxima.begin(), maxima.end(), Subset::of(3, {0, 2})) == 1);
  }
  SECTION("positive modular functions have only the full set") {
    const auto maxima = exact_local_maxima(*testing::modular_oracle({1.0, 2.0, 0.5}));
    REQUIRE(maxima.size() == 1);
    REQUIRE(maxima[0].is_full());
  }
  SECTION("the zero function is stable everywhere") {
    REQUIRE(exact_local_maxima(*testing::constant_oracle(4, 0.0)).size() == 16);
  }
  SECTION("cap") {
    REQUIRE_THROWS_AS(exact_local_maxima(*testing::constant_oracle(21, 0.0)), ValidationError);
  }
}

TEST_CASE("single-element stability equals stability under arbitrary sets", "[exact]") {
  // For submodular f: if no single add or remove improves S, no union or
  // intersection does either. Verified directly on small instances.
  SplitMix64 seeds(17);
  for (int trial = 0; trial < 6; ++trial) {
    const Instance inst = random_instance(InstanceKind::kRandomCut, 6, seeds.next(), {});
    const OraclePtr oracle = build_oracle(inst);
    const auto values = enumerate_values(*oracle);
    for (const Subset& s : exact_local_maxima(*oracle)) {
      const std::uint64_t s_mask = s.to_mask();
      for (std::uint64_t t = 0; t < 64; ++t) {
        REQUIRE(values[s_mask | t] <= values[s_mask] + 1e-12);
        REQUIRE(values[s_mask & t] <= values[s_mask] + 1e-12);
      }
    }
  }
}

TEST_CASE("exact local maxima satisfy the two-to-one sum bound", "[exact]") {
  // 2 f(S) + f(S^c) >= f(opt) + f(full) + f(empty) at every exact local max.
  SplitMix64 seeds(29);
  for (int trial = 0; trial < 6; ++trial) {
    const Instance inst = random_instance(InstanceKind::kRandomCut, 6, seeds.next(), {});
    const OraclePtr oracle = build_oracle(inst);
    const ExactResult exact = brute_force_opt(*oracle);
    const double at_empty = oracle->evaluate(Subset::empty(6));
    const double at_full = oracle->evaluate(Subset::full(6));
    for (const Subset& s : exact_local_maxima(*oracle)) {
      const double lhs = 2.0 * oracle->evaluate(s) + oracle->evaluate(~s);
      REQUIRE(lhs >= exact.opt_value + at_full + at_empty - 1e-9);
    }
  }
}

TEST_CASE("complement unions obey the warm-up inequality", "[exact]") {
  // Pure submodularity: f(S^c | T) >= f(T) + f(full) - f(T | S), for all S, T.
  const OraclePtr oracle = build_oracle(testing::unit_graph(5, 0x155));
  const auto values = enumerate_values(*oracle);
  const double at_full = values[31];
  for (std::uint64_t s = 0; s < 32; ++s) {
    const std::uint64_t s_comp = ~s & 31;
    for (std::uint64_t t = 0; t < 32; ++t) {
      REQUIRE(values[s_comp | t] >= values[t] + at_full - values[t | s] - 1e-9);
    }
  }
  // Chained with local maximality: f(S^c | opt) >= f(opt) + f(full) - f(S).
  const ExactResult exact = brute_force_opt(*oracle);
  const std::uint64_t opt = exact.opt_set.to_mask();
  for (const Subset& s : exact_local_maxima(*oracle)) {
    const std::uint64_t s_comp = (~s).to_mask();
    REQUIRE(values[s_comp | opt] >=
            exact.opt_value + at_full - values[s.to_mask()] - 1e-9);
  }
}

TEST_CASE("ratio conventions", "[exact]") {
  ExactResult exact;
  exact.opt_value = 2.0;
  REQUIRE(ratio(2.0, exact) == 1.0);
  REQUIRE(ratio(0.8, exact) == 0.4);

  exact.opt_value = 0.0;
  REQUIRE(ratio(0.0, exact) == 1.0);
  REQUIRE_THROWS_AS(ratio(0.5, exact), ValidationError);

  exact.opt_value = -1.0;
  REQUIRE_THROWS_AS(ratio(0.0, exact), ValidationError);
}
