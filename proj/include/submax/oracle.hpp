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
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "submax/errors.hpp"
#include "submax/subset.hpp"

namespace submax {

// Counts value queries. The total is also broken down by recursion level so
// the recursive algorithm's per-level cost can be audited afterwards.
//
// Counts are exact for single-threaded runs; concurrent runs must use
// independent ledgers.
class QueryLedger {
 public:
  std::uint64_t count() const { return count_; }
  const std::vector<std::uint64_t>& per_level() const { return per_level_; }

  void record() {
    ++count_;
    ++per_level_[level_];
  }

  // Scopes all queries recorded inside to the given level.
  class LevelGuard {
   public:
    LevelGuard(QueryLedger& ledger, int level) : ledger_(ledger), saved_(ledger.level_) {
      if (level < 0) throw ContractError("ledger level must be non-negative");
      if (static_cast<std::size_t>(level) >= ledger_.per_level_.size()) {
        ledger_.per_level_.resize(level + 1, 0);
      }
      ledger_.level_ = level;
    }
    ~LevelGuard() { ledger_.level_ = saved_; }
    LevelGuard(const LevelGuard&) = delete;
    LevelGuard& operator=(const LevelGuard&) = delete;

   private:
    QueryLedger& ledger_;
    int saved_;
  };

 private:
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> per_level_{0};
  int level_ = 0;
};

// A set function accessed through value queries. Evaluation is deterministic
// and pure; oracles are immutable after construction except for the shared
// ledger, which every query touches exactly once (derived oracles forward to
// their base, so a derived query still counts once).
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  int ground_size() const { return m_; }
  const std::shared_ptr<QueryLedger>& ledger() const { return ledger_; }

  double evaluate(const Subset& s) const {
    if (s.ground_size() != m_) {
      throw ContractError("subset over " + std::to_string(s.ground_size()) +
                          " elements queried against oracle over " + std::to_string(m_));
    }
    return eval(s);
  }

 protected:
  ValueOracle(int ground_size, std::shared_ptr<QueryLedger> ledger)
      : m_(ground_size), ledger_(std::move(ledger)) {
    if (m_ < 0) throw ValidationError("oracle ground size must be non-negative");
    if (!ledger_) ledger_ = std::make_shared<QueryLedger>();
  }

  virtual double eval(const Subset& s) const = 0;

  void record_query() const { ledger_->record(); }

 private:
  int m_;
  std::shared_ptr<QueryLedger> ledger_;
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

// Wraps an arbitrary function as an oracle. Used for hand-built test
// functions and planted counterexamples; the callable must be pure.
class CallbackOracle : public ValueOracle {
 public:
  CallbackOracle(int ground_size, std::function<double(const Subset&)> fn,
                 std::shared_ptr<QueryLedger> ledger = nullptr)
      : ValueOracle(ground_size, std::move(ledger)), fn_(std::move(fn)) {}

 protected:
  double eval(const Subset& s) const override {
    record_query();
    return fn_(s);
  }

 private:
  std::function<double(const Subset&)> fn_;
};

// f(T) - min(f(empty), f(full)). The offset is computed once at construction
// (two queries) and cached, so min(shifted(empty), shifted(full)) == 0.
class ShiftOracle : public ValueOracle {
 public:
  explicit ShiftOracle(OraclePtr base)
      : ValueOracle(base ? base->ground_size() : 0, base ? base->ledger() : nullptr),
        base_(std::move(base)) {
    if (!base_) throw ContractError("shift requires an oracle");
    const double at_empty = base_->evaluate(Subset::empty(ground_size()));
    const double at_full = base_->evaluate(Subset::full(ground_size()));
    offset_ = std::min(at_empty, at_full);
    shifted_empty_ = at_empty - offset_;
    shifted_full_ = at_full - offset_;
  }

  double offset() const { return offset_; }
  // Endpoint values of the shifted function, cached from construction.
  double value_at_empty() const { return shifted_empty_; }
  double value_at_full() const { return shifted_full_; }

 protected:
  double eval(const Subset& s) const override { return base_->evaluate(s) - offset_; }

 private:
  OraclePtr base_;
  double offset_;
  double shifted_empty_;
  double shifted_full_;
};

// The base function viewed on subsets of `domain`, re-indexed to
// 0..|domain|-1. The index map is materialized once at construction.
class RestrictOracle : public ValueOracle {
 public:
  RestrictOracle(OraclePtr base, const Subset& domain)
      : ValueOracle(domain.count(), base ? base->ledger() : nullptr), base_(std::move(base)) {
    if (!base_) throw ContractError("restriction requires an oracle");
    if (domain.ground_size() != base_->ground_size()) {
      throw ContractError("restriction domain does not match the oracle's ground set");
    }
    globals_ = domain.members();
  }

  const std::vector<int>& global_indices() const { return globals_; }

  // Maps a local subset back to the base oracle's ground set.
  Subset to_global(const Subset& local) const {
    if (local.ground_size() != ground_size()) {
      throw ContractError("local subset does not match the restricted ground set");
    }
    Subset g = Subset::empty(base_->ground_size());
    for (int i : local.members()) g.add(globals_[i]);
    return g;
  }

 protected:
  double eval(const Subset& s) const override { return base_->evaluate(to_global(s)); }

 private:
  OraclePtr base_;
  std::vector<int> globals_;
};

// T -> f(pinned | T) for T over `domain`, re-indexed to 0..|domain|-1.
// pinned and domain must be disjoint.
class PinUnionOracle : public ValueOracle {
 public:
  PinUnionOracle(OraclePtr base, Subset pinned, const Subset& domain)
      : ValueOracle(domain.count(), base ? base->ledger() : nullptr),
        base_(std::move(base)),
        pinned_(std::move(pinned)) {
    if (!base_) throw ContractError("pin_union requires an oracle");
    if (pinned_.ground_size() != base_->ground_size() ||
        domain.ground_size() != base_->ground_size()) {
      throw ContractError("pinned/domain sets do not match the oracle's ground set");
    }
    if (!(pinned_ & domain).is_empty()) {
      throw ContractError("pinned set overlaps the free domain");
    }
    globals_ = domain.members();
  }

  const Subset& pinned() const { return pinned_; }
  const std::vector<int>& global_indices() const { return globals_; }

  Subset to_global(const Subset& local) const {
    if (local.ground_size() != ground_size()) {
      throw ContractError("local subset does not match the pinned ground set");
    }
    Subset g = Subset::empty(base_->ground_size());
    for (int i : local.members()) g.add(globals_[i]);
    return g;
  }

 protected:
  double eval(const Subset& s) const override {
    return base_->evaluate(pinned_ | to_global(s));
  }

 private:
  OraclePtr base_;
  Subset pinned_;
  std::vector<int> globals_;
};

inline OraclePtr shift(OraclePtr base) {
  return std::make_shared<ShiftOracle>(std::move(base));
}

inline OraclePtr restrict_to(OraclePtr base, const Subset& domain) {
  return std::make_shared<RestrictOracle>(std::move(base), domain);
}

inline OraclePtr pin_union(OraclePtr base, Subset pinned, const Subset& domain) {
  return std::make_shared<PinUnionOracle>(std::move(base), std::move(pinned), domain);
}

// All 2^m values, indexed by bitmask. The workhorse behind exhaustive checks.
inline std::vector<double> enumerate_values(const ValueOracle& f) {
  const int m = f.ground_size();
  if (m > 26) throw ValidationError("value enumeration capped at 26 elements");
  const std::uint64_t n = 1ULL << m;
  std::vector<double> values(n);
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    values[mask] = f.evaluate(Subset::from_mask(m, mask));
  }
  return values;
}

}  // namespace submax
