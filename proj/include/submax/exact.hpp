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

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "submax/errors.hpp"
#include "submax/oracle.hpp"
#include "submax/subset.hpp"

namespace submax {

// Ground truth by full enumeration.
struct ExactResult {
  Subset opt_set;
  double opt_value = 0.0;
  std::uint64_t evaluations = 0;
};

inline constexpr int kDefaultBruteForceCap = 24;

// Cap on brute-force ground sizes; SUBMAX_MAX_BRUTE_M overrides the default.
inline int brute_force_cap() {
  if (const char* env = std::getenv("SUBMAX_MAX_BRUTE_M")) {
    const int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return kDefaultBruteForceCap;
}

// Evaluates all 2^m subsets. Ties break toward the smallest bitmask, so the
// result is deterministic and golden-file friendly.
inline ExactResult brute_force_opt(const ValueOracle& f,
                                   std::optional<int> cap_override = std::nullopt) {
  const int cap = cap_override ? *cap_override : brute_force_cap();
  const int m = f.ground_size();
  if (m > cap) {
    throw ValidationError("brute force over " + std::to_string(m) +
                          " elements exceeds cap " + std::to_string(cap));
  }
  ExactResult result;
  result.opt_set = Subset::empty(m);
  result.opt_value = f.evaluate(result.opt_set);
  result.evaluations = 1;
  const std::uint64_t n = 1ULL << m;
  for (std::uint64_t mask = 1; mask < n; ++mask) {
    const Subset s = Subset::from_mask(m, mask);
    const double v = f.evaluate(s);
    ++result.evaluations;
    if (v > result.opt_value) {
      result.opt_value = v;
      result.opt_set = s;
    }
  }
  return result;
}

// All sets stable under every single-element addition and removal. For
// submodular f this coincides with stability under arbitrary additions and
// removals (marginals telescope), which the tests verify independently.
inline std::vector<Subset> exact_local_maxima(const ValueOracle& f, int cap = 20) {
  const int m = f.ground_size();
  if (m > cap) {
    throw ValidationError("local-maximum enumeration over " + std::to_string(m) +
                          " elements exceeds cap " + std::to_string(cap));
  }
  const std::vector<double> values = enumerate_values(f);
  std::vector<Subset> maxima;
  const std::uint64_t n = 1ULL << m;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    bool stable = true;
    for (int j = 0; j < m && stable; ++j) {
      stable = values[mask ^ (1ULL << j)] <= values[mask];
    }
    if (stable) maxima.push_back(Subset::from_mask(m, mask));
  }
  return maxima;
}

// value / opt, with 0/0 defined as 1. A non-zero value over a zero optimum is
// impossible for a correct algorithm on a non-negative function and is
// reported as an error.
inline double ratio(double value, const ExactResult& exact) {
  if (exact.opt_value < 0.0) {
    throw ValidationError("ratio needs a non-negative optimum");
  }
  if (exact.opt_value == 0.0) {
    if (value == 0.0) return 1.0;
    throw ValidationError("non-zero value against zero optimum");
  }
  return value / exact.opt_value;
}

}  // namespace submax
