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

#include <catch2/catch_amalgamated.hpp>

#include "submax/instance.hpp"
#include "submax/oracle.hpp"
#include "test_util.hpp"

using namespace submax;

TEST_CASE("evaluate returns f(S) and counts queries", "[oracle]") {
  const OraclePtr p3 = build_oracle(testing::path3());
  REQUIRE(p3->evaluate(Subset::of(3, {1})) == 2.0);  // middle vertex has degree 2
  REQUIRE(p3->evaluate(Subset::empty(3)) == 0.0);
  REQUIRE(p3->ledger()->count() == 2);

  Instance cov;
  cov.kind = InstanceKind::kCoverage;
  cov.m = 2;
  cov.universe = 2;
  cov.item_weights = {1.0, 1.0};
  cov.sets = {{0}, {0, 1}};
  REQUIRE(build_oracle(cov)->evaluate(Subset::of(2, {0, 1})) == 2.0);
}

TEST_CASE("evaluate rejects dimension mismatches", "[oracle]") {
  const OraclePtr p3 = build_oracle(testing::path3());
  REQUIRE_THROWS_AS(p3->evaluate(Subset::empty(4)), ContractError);
}

TEST_CASE("evaluation is pure", "[oracle]") {
  const OraclePtr oracle = build_oracle(testing::path3());
  const Subset s = Subset::of(3, {0, 2});
  const double first = oracle->evaluate(s);
  for (int i = 0; i < 10; ++i) REQUIRE(oracle->evaluate(s) == first);
}

TEST_CASE("ledger counts every evaluation once and per level", "[oracle]") {
  const OraclePtr oracle = build_oracle(testing::triangle());
  QueryLedger& ledger = *oracle->ledger();
  for (int k = 1; k <= 7; ++k) {
    oracle->evaluate(Subset::empty(3));
    REQUIRE(ledger.count() == static_cast<std::uint64_t>(k));
  }
  {
    const QueryLedger::LevelGuard guard(ledger, 2);
    oracle->evaluate(Subset::empty(3));
    oracle->evaluate(Subset::full(3));
  }
  oracle->evaluate(Subset::empty(3));
  std::uint64_t total = 0;
  for (const auto per_level : ledger.per_level()) total += per_level;
  REQUIRE(total == ledger.count());
  REQUIRE(ledger.per_level()[2] == 2);
}

TEST_CASE("shift subtracts the smaller endpoint", "[oracle]") {
  SECTION("both endpoints zero leaves the function unchanged") {
    const OraclePtr base = build_oracle(testing::path3());
    const OraclePtr shifted = shift(base);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      const Subset s = Subset::from_mask(3, mask);
      REQUIRE(shifted->evaluate(s) == base->evaluate(s));
    }
  }
  SECTION("offset is min(f(empty), f(full))") {
    const auto fn = [](const Subset& s) { return s.is_empty() ? 2.0 : (s.is_full() ? 5.0 : 9.0); };
    const OraclePtr base = std::make_shared<CallbackOracle>(3, fn);
    const auto shifted = std::make_shared<ShiftOracle>(base);
    REQUIRE(shifted->offset() == 2.0);
    REQUIRE(shifted->value_at_empty() == 0.0);
    REQUIRE(shifted->value_at_full() == 3.0);
    REQUIRE(shifted->evaluate(Subset::of(3, {1})) == 7.0);
  }
  SECTION("constant function shifts to zero") {
    const OraclePtr shifted = shift(testing::constant_oracle(4, 7.0));
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      REQUIRE(shifted->evaluate(Subset::from_mask(4, mask)) == 0.0);
    }
  }
}

TEST_CASE("shift identity holds exhaustively", "[oracle]") {
  for (std::uint64_t graph = 0; graph < testing::unit_graph_count(4); ++graph) {
    const OraclePtr base = build_oracle(testing::unit_graph(4, graph));
    const auto shifted = std::make_shared<ShiftOracle>(base);
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      const Subset s = Subset::from_mask(4, mask);
      REQUIRE(shifted->evaluate(s) + shifted->offset() == base->evaluate(s));
    }
  }
}

TEST_CASE("shift construction costs two queries, forwarding costs one each", "[oracle]") {
  const OraclePtr base = build_oracle(testing::path3());
  const OraclePtr shifted = shift(base);
  REQUIRE(base->ledger()->count() == 2);
  shifted->evaluate(Subset::of(3, {1}));
  REQUIRE(base->ledger()->count() == 3);  // derived oracles share the ledger
}

TEST_CASE("restriction re-indexes into the domain", "[oracle]") {
  const OraclePtr p3 = build_oracle(testing::path3());

  SECTION("restricting to the full ground set is the identity") {
    const OraclePtr r = restrict_to(p3, Subset::full(3));
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      const Subset s = Subset::from_mask(3, mask);
      REQUIRE(r->evaluate(s) == p3->evaluate(s));
    }
  }
  SECTION("restricting to the empty set leaves only f(empty)") {
    const OraclePtr r = restrict_to(p3, Subset::empty(3));
    REQUIRE(r->ground_size() == 0);
    REQUIRE(r->evaluate(Subset::empty(0)) == 0.0);
  }
  SECTION("restriction to {0,2} evaluates the original cut") {
    const auto r = std::make_shared<RestrictOracle>(p3, Subset::of(3, {0, 2}));
    REQUIRE(r->ground_size() == 2);
    // Local {0,1} maps to global {0,2}; the cut ({0,2},{1}) crosses both edges.
    REQUIRE(r->evaluate(Subset::full(2)) == 2.0);
    REQUIRE(r->to_global(Subset::of(2, {1})) == Subset::of(3, {2}));
  }
  SECTION("mismatched domains are rejected") {
    REQUIRE_THROWS_AS(restrict_to(p3, Subset::full(5)), ContractError);
    const OraclePtr r = restrict_to(p3, Subset::of(3, {0, 2}));
    REQUIRE_THROWS_AS(r->evaluate(Subset::full(3)), ContractError);
  }
}

TEST_CASE("pin_union evaluates f(pinned | T)", "[oracle]") {
  const OraclePtr p3 = build_oracle(testing::path3());

  SECTION("no pins over the full domain is the identity") {
    const OraclePtr q = pin_union(p3, Subset::empty(3), Subset::full(3));
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
      const Subset s = Subset::from_mask(3, mask);
      REQUIRE(q->evaluate(s) == p3->evaluate(s));
    }
  }
  SECTION("pinning everything yields a constant") {
    const OraclePtr q = pin_union(p3, Subset::full(3), Subset::empty(3));
    REQUIRE(q->ground_size() == 0);
    REQUIRE(q->evaluate(Subset::empty(0)) == p3->evaluate(Subset::full(3)));
  }
  SECTION("pinned middle vertex") {
    const OraclePtr q = pin_union(p3, Subset::of(3, {1}), Subset::of(3, {0, 2}));
    // Local {0} is global {0}; f({0,1}) cuts only edge (1,2).
    REQUIRE(q->evaluate(Subset::of(2, {0})) == 1.0);
    REQUIRE(q->evaluate(Subset::empty(2)) == p3->evaluate(Subset::of(3, {1})));
    REQUIRE(q->evaluate(Subset::full(2)) == p3->evaluate(Subset::full(3)));
  }
  SECTION("overlapping pins are rejected") {
    REQUIRE_THROWS_AS(pin_union(p3, Subset::of(3, {1}), Subset::of(3, {1, 2})), ContractError);
  }
}

TEST_CASE("pin_union composes with shift", "[oracle]") {
  // pin_union(shift(f), S^c, S) evaluated at T equals shift(f) at S^c | T.
  for (std::uint64_t graph = 0; graph < testing::unit_graph_count(4); graph += 7) {
    const OraclePtr base = build_oracle(testing::unit_graph(4, graph));
    const OraclePtr shifted = shift(base);
    for (std::uint64_t s_mask = 0; s_mask < 16; ++s_mask) {
      const Subset s = Subset::from_mask(4, s_mask);
      const Subset s_comp = ~s;
      const auto pinned = std::make_shared<PinUnionOracle>(shifted, s_comp, s);
      for (std::uint64_t t_mask = 0; t_mask < 16; ++t_mask) {
        if ((t_mask & s_mask) != t_mask) continue;  // T must lie inside S
        const Subset t_global = Subset::from_mask(4, t_mask);
        Subset t_local = Subset::empty(pinned->ground_size());
        const auto& globals = pinned->global_indices();
        for (int i = 0; i < static_cast<int>(globals.size()); ++i) {
          if (t_global.contains(globals[i])) t_local.add(i);
        }
        REQUIRE(pinned->evaluate(t_local) == shifted->evaluate(s_comp | t_global));
      }
    }
  }
}
