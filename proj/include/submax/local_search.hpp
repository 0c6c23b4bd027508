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
#include <optional>
#include <string>
#include <utility>

#include "submax/errors.hpp"
#include "submax/oracle.hpp"
#include "submax/rng.hpp"
#include "submax/subset.hpp"

namespace submax {

struct LocalSearchConfig {
  double epsilon = 0.05;
  // Optional safety cap on improving moves; exceeding it signals a
  // misconfigured threshold, not a normal outcome.
  std::optional<std::uint64_t> max_moves;
};

struct LocalSearchResult {
  Subset set;
  double value = 0.0;
  std::uint64_t moves = 0;
  double warm_start_value = 0.0;
};

class MoveCapExceeded : public Error {
 public:
  MoveCapExceeded(const std::string& what, LocalSearchResult partial_result)
      : Error(what), partial(std::move(partial_result)) {}

  LocalSearchResult partial;
};

// Deterministic double greedy. One pass over the elements, growing a lower
// set from empty and shrinking an upper set from full; takes the better of
// the two marginals at each step (add on ties). Exactly 2m + 2 queries.
//
// For submodular f this guarantees 3 f(T) >= f(opt) + f(empty) + f(full).
inline Subset double_greedy_det(const ValueOracle& f) {
  const int m = f.ground_size();
  Subset low = Subset::empty(m);
  Subset high = Subset::full(m);
  double low_value = f.evaluate(low);
  double high_value = f.evaluate(high);
  for (int i = 0; i < m; ++i) {
    const Subset low_add = low.with(i);
    const Subset high_del = high.without(i);
    const double add_value = f.evaluate(low_add);
    const double del_value = f.evaluate(high_del);
    const double add_gain = add_value - low_value;
    const double del_gain = del_value - high_value;
    if (add_gain >= del_gain) {
      low = low_add;
      low_value = add_value;
    } else {
      high = high_del;
      high_value = del_value;
    }
  }
  return low;
}

// Randomized double greedy baseline: adds element i with probability
// a+/(a+ + b+) where a+, b+ are the clamped marginals; when both clamp to
// zero the choice is value-neutral and falls back to the deterministic rule.
// Expected value >= f(opt)/2 for non-negative submodular f.
inline Subset double_greedy_rand(const ValueOracle& f, SplitMix64& rng) {
  const int m = f.ground_size();
  Subset low = Subset::empty(m);
  Subset high = Subset::full(m);
  double low_value = f.evaluate(low);
  double high_value = f.evaluate(high);
  for (int i = 0; i < m; ++i) {
    const Subset low_add = low.with(i);
    const Subset high_del = high.without(i);
    const double add_value = f.evaluate(low_add);
    const double del_value = f.evaluate(high_del);
    const double add_gain = add_value - low_value;
    const double del_gain = del_value - high_value;
    const double a_plus = std::max(add_gain, 0.0);
    const double b_plus = std::max(del_gain, 0.0);
    bool take;
    if (a_plus + b_plus == 0.0) {
      take = add_gain >= del_gain;
    } else {
      take = rng.next_double() * (a_plus + b_plus) < a_plus;
    }
    if (take) {
      low = low_add;
      low_value = add_value;
    } else {
      high = high_del;
      high_value = del_value;
    }
  }
  return low;
}

// Double-greedy warm start followed by first-improvement single-element local
// search. A move is taken when the flipped set's value exceeds
// (1 + epsilon/m) * max(current, 0); the scan restarts from element 0 after
// every move and stops after a full scan with no qualifying move.
//
// Single-element stability at epsilon/m telescopes (via submodularity) to the
// (1+epsilon)-approximate-local-maximum property against arbitrary unions and
// intersections, provided the current value is non-negative — which the
// shifted warm start guarantees. The max(., 0) guard keeps the threshold
// meaningful for callers that pass functions with negative interior values.
inline LocalSearchResult local_search(const ValueOracle& f, const LocalSearchConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw ValidationError("local search needs epsilon > 0");
  const int m = f.ground_size();
  const double step = 1.0 + cfg.epsilon / std::max(m, 1);

  LocalSearchResult result;
  result.set = double_greedy_det(f);
  result.value = f.evaluate(result.set);
  result.warm_start_value = result.value;

  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j < m; ++j) {
      const Subset candidate = result.set.flipped(j);
      const double v = f.evaluate(candidate);
      if (v > step * std::max(result.value, 0.0)) {
        if (cfg.max_moves && result.moves == *cfg.max_moves) {
          throw MoveCapExceeded("local search exceeded move cap of " +
                                    std::to_string(*cfg.max_moves),
                                result);
        }
        result.set = candidate;
        result.value = v;
        ++result.moves;
        moved = true;
        break;
      }
    }
  }

  // A zero warm start that admits no move means every value reachable here is
  // <= 0; return the better endpoint, which is then exactly locally maximal.
  if (result.moves == 0 && result.warm_start_value == 0.0) {
    const Subset empty = Subset::empty(m);
    const Subset full = Subset::full(m);
    const double at_empty = f.evaluate(empty);
    const double at_full = f.evaluate(full);
    if (at_full > at_empty) {
      result.set = full;
      result.value = at_full;
    } else {
      result.set = empty;
      result.value = at_empty;
    }
  }
  return result;
}

enum class LocalMaxMode {
  kSingleElement,  // all single-element perturbations
  kExhaustive,     // all unions and intersections, the definition verbatim
};

// Checks whether s is a (1+epsilon)-approximate local maximum of f. The
// single-element mode tests flips against (1 + epsilon/m) * max(f(s), 0);
// the exhaustive mode tests f(s | t) and f(s & t) against (1+epsilon) f(s)
// for every t and is capped at m <= 16.
inline bool is_approx_local_max(const ValueOracle& f, const Subset& s, double epsilon,
                                LocalMaxMode mode) {
  if (epsilon < 0.0) throw ValidationError("epsilon must be non-negative");
  const int m = f.ground_size();
  const double fs = f.evaluate(s);
  const double tol = 1e-9 * std::max(1.0, std::fabs(fs));
  if (mode == LocalMaxMode::kSingleElement) {
    const double threshold = (1.0 + epsilon / std::max(m, 1)) * std::max(fs, 0.0);
    for (int j = 0; j < m; ++j) {
      if (f.evaluate(s.flipped(j)) > threshold + tol) return false;
    }
    return true;
  }
  if (m > 16) throw ValidationError("exhaustive local-maximum check capped at m <= 16");
  const double threshold = (1.0 + epsilon) * fs;
  const std::uint64_t n = 1ULL << m;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    const Subset t = Subset::from_mask(m, mask);
    if (f.evaluate(s | t) > threshold + tol) return false;
    if (f.evaluate(s & t) > threshold + tol) return false;
  }
  return true;
}

}  // namespace submax
