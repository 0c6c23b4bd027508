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

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "submax/errors.hpp"
#include "submax/oracle.hpp"
#include "submax/rng.hpp"
#include "submax/subset.hpp"

namespace submax {

// A concrete violation of decreasing marginal utilities:
// f(S+j) + f(S+k) < f(S+j+k) + f(S).
struct SubmodularityWitness {
  Subset base;
  int j = 0;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;

  std::string describe() const {
    std::ostringstream oss;
    oss << "S=" << base.to_string() << " j=" << j << " k=" << k << ": f(S+j)+f(S+k)=" << lhs
        << " < f(S+j+k)+f(S)=" << rhs;
    return oss.str();
  }
};

struct NegativityWitness {
  Subset set;
  double value = 0.0;
};

struct CheckReport {
  bool submodular = true;
  bool non_negative = true;
  std::optional<SubmodularityWitness> violation;
  std::optional<NegativityWitness> negative;
  std::uint64_t checks = 0;

  bool ok() const { return submodular && non_negative; }
};

namespace detail {

// Absolute-plus-relative slack for float comparisons of oracle sums.
inline double check_tolerance(double a, double b, double c, double d) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
  return 1e-9 * scale;
}

}  // namespace detail

// Exhaustive submodularity and non-negativity check via the pairwise-element
// characterization: for all S and j != k outside S,
//   f(S+j) + f(S+k) >= f(S+j+k) + f(S).
// Equivalent to the two-set definition but costs m^2 * 2^m instead of 4^m.
inline CheckReport check_submodular(const ValueOracle& f) {
  const int m = f.ground_size();
  if (m > 14) throw ValidationError("exhaustive submodularity check capped at m <= 14");
  CheckReport report;
  const std::vector<double> values = enumerate_values(f);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    if (values[mask] < 0.0) {
      report.non_negative = false;
      report.negative = {Subset::from_mask(m, mask), values[mask]};
      break;
    }
  }
  for (std::uint64_t mask = 0; mask < values.size() && report.submodular; ++mask) {
    for (int j = 0; j < m && report.submodular; ++j) {
      if (mask & (1ULL << j)) continue;
      for (int k = j + 1; k < m; ++k) {
        if (mask & (1ULL << k)) continue;
        const double lhs = values[mask | (1ULL << j)] + values[mask | (1ULL << k)];
        const double rhs = values[mask | (1ULL << j) | (1ULL << k)] + values[mask];
        ++report.checks;
        if (lhs < rhs - detail::check_tolerance(values[mask | (1ULL << j)],
                                                values[mask | (1ULL << k)],
                                                values[mask | (1ULL << j) | (1ULL << k)],
                                                values[mask])) {
          report.submodular = false;
          report.violation = {Subset::from_mask(m, mask), j, k, lhs, rhs};
          break;
        }
      }
    }
  }
  return report;
}

// Sampled variant for ground sets too large to enumerate. Each trial draws a
// random S and a random pair j, k outside S.
inline CheckReport check_submodular_sampled(const ValueOracle& f, int trials, SplitMix64& rng) {
  if (trials < 1) throw ValidationError("sampled submodularity check needs trials >= 1");
  const int m = f.ground_size();
  if (m < 2) throw ValidationError("sampled submodularity check needs m >= 2");
  CheckReport report;
  for (int t = 0; t < trials; ++t) {
    Subset s = Subset::empty(m);
    for (int i = 0; i < m; ++i) {
      if (rng.next() & 1ULL) s.add(i);
    }
    int j = rng.next_int(0, m - 1);
    int k = rng.next_int(0, m - 1);
    if (j == k) k = (k + 1) % m;
    s.remove(j);
    s.remove(k);
    const double base = f.evaluate(s);
    const double with_j = f.evaluate(s.with(j));
    const double with_k = f.evaluate(s.with(k));
    const double with_both = f.evaluate(s.with(j).with(k));
    ++report.checks;
    for (const auto& [set, value] :
         {std::pair{s, base}, {s.with(j), with_j}, {s.with(k), with_k},
          {s.with(j).with(k), with_both}}) {
      if (value < 0.0 && report.non_negative) {
        report.non_negative = false;
        report.negative = {set, value};
      }
    }
    const double lhs = with_j + with_k;
    const double rhs = with_both + base;
    if (lhs < rhs - detail::check_tolerance(with_j, with_k, with_both, base)) {
      report.submodular = false;
      report.violation = {s, j, k, lhs, rhs};
      break;
    }
  }
  return report;
}

}  // namespace submax
