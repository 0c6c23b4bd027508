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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "submax/errors.hpp"
#include "submax/oracle.hpp"
#include "submax/rng.hpp"
#include "submax/subset.hpp"

namespace submax {

enum class InstanceKind {
  kCut,
  kDirectedCut,
  kCoverage,
  kRandomCut,
  kRandomCoverage,
};

inline std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kCut: return "cut";
    case InstanceKind::kDirectedCut: return "directed-cut";
    case InstanceKind::kCoverage: return "coverage";
    case InstanceKind::kRandomCut: return "random-cut";
    case InstanceKind::kRandomCoverage: return "random-coverage";
  }
  throw ValidationError("unknown instance kind");
}

inline InstanceKind kind_from_string(const std::string& name) {
  if (name == "cut") return InstanceKind::kCut;
  if (name == "directed-cut") return InstanceKind::kDirectedCut;
  if (name == "coverage") return InstanceKind::kCoverage;
  if (name == "random-cut") return InstanceKind::kRandomCut;
  if (name == "random-coverage") return InstanceKind::kRandomCoverage;
  throw ParseError("unknown instance kind: " + name);
}

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;

  bool operator==(const WeightedEdge&) const = default;
};

// A concrete, serializable description of a non-negative submodular function.
// Random kinds carry their resolved payload, not just the seed, so files are
// self-contained; the seed is kept for provenance.
struct Instance {
  InstanceKind kind = InstanceKind::kCut;
  int m = 0;
  std::vector<WeightedEdge> edges;       // cut kinds: [u, v, w] rows
  int universe = 0;                      // coverage kinds
  std::vector<double> item_weights;      // one weight per universe item
  std::vector<std::vector<int>> sets;    // covered items per element
  std::optional<std::uint64_t> seed;

  bool operator==(const Instance&) const = default;

  bool is_cut_kind() const {
    return kind == InstanceKind::kCut || kind == InstanceKind::kDirectedCut ||
           kind == InstanceKind::kRandomCut;
  }
  bool is_coverage_kind() const {
    return kind == InstanceKind::kCoverage || kind == InstanceKind::kRandomCoverage;
  }

  void validate() const {
    if (m < 0) throw ValidationError("instance ground size must be non-negative");
    if (is_cut_kind()) {
      for (const auto& e : edges) {
        if (e.u < 0 || e.u >= m || e.v < 0 || e.v >= m) {
          throw ValidationError("edge endpoint outside ground set: (" + std::to_string(e.u) +
                                "," + std::to_string(e.v) + ") with m=" + std::to_string(m));
        }
        if (!(e.weight >= 0.0)) {
          throw ValidationError("edge weights must be non-negative");
        }
      }
    } else {
      if (universe < 0) throw ValidationError("universe size must be non-negative");
      if (static_cast<int>(item_weights.size()) != universe) {
        throw ValidationError("coverage needs one weight per universe item");
      }
      for (double w : item_weights) {
        if (!(w >= 0.0)) throw ValidationError("universe weights must be non-negative");
      }
      if (static_cast<int>(sets.size()) != m) {
        throw ValidationError("coverage needs one set per element");
      }
      for (const auto& row : sets) {
        for (int item : row) {
          if (item < 0 || item >= universe) {
            throw ValidationError("coverage set references universe item " +
                                  std::to_string(item) + " outside universe of size " +
                                  std::to_string(universe));
          }
        }
      }
    }
  }
};

// f(S) = total weight of edges crossing (S, S^c); directed variant counts
// arcs leaving S only.
class CutOracle : public ValueOracle {
 public:
  CutOracle(int ground_size, std::vector<WeightedEdge> edges, bool directed,
            std::shared_ptr<QueryLedger> ledger = nullptr)
      : ValueOracle(ground_size, std::move(ledger)),
        edges_(std::move(edges)),
        directed_(directed) {}

 protected:
  double eval(const Subset& s) const override {
    record_query();
    double total = 0.0;
    for (const auto& e : edges_) {
      const bool in_u = s.contains(e.u);
      const bool in_v = s.contains(e.v);
      if (directed_ ? (in_u && !in_v) : (in_u != in_v)) total += e.weight;
    }
    return total;
  }

 private:
  std::vector<WeightedEdge> edges_;
  bool directed_;
};

// f(S) = total weight of universe items covered by the union of the chosen
// sets. Per-element coverage rows are materialized as bitsets up front.
class CoverageOracle : public ValueOracle {
 public:
  CoverageOracle(int ground_size, int universe, std::vector<double> item_weights,
                 const std::vector<std::vector<int>>& sets,
                 std::shared_ptr<QueryLedger> ledger = nullptr)
      : ValueOracle(ground_size, std::move(ledger)),
        universe_(universe),
        item_weights_(std::move(item_weights)) {
    rows_.reserve(sets.size());
    for (const auto& row : sets) {
      Subset bits = Subset::empty(universe_);
      for (int item : row) bits.add(item);
      rows_.push_back(std::move(bits));
    }
  }

 protected:
  double eval(const Subset& s) const override {
    record_query();
    Subset covered = Subset::empty(universe_);
    for (int i : s.members()) covered = covered | rows_[i];
    double total = 0.0;
    for (int item : covered.members()) total += item_weights_[item];
    return total;
  }

 private:
  int universe_;
  std::vector<double> item_weights_;
  std::vector<Subset> rows_;
};

inline OraclePtr build_oracle(const Instance& inst,
                              std::shared_ptr<QueryLedger> ledger = nullptr) {
  inst.validate();
  if (inst.is_cut_kind()) {
    return std::make_shared<CutOracle>(inst.m, inst.edges,
                                       inst.kind == InstanceKind::kDirectedCut,
                                       std::move(ledger));
  }
  return std::make_shared<CoverageOracle>(inst.m, inst.universe, inst.item_weights, inst.sets,
                                          std::move(ledger));
}

struct GenParams {
  double edge_probability = 0.5;  // random-cut
  double min_weight = 0.0;
  double max_weight = 1.0;
  int universe = 0;               // random-coverage
  double density = 0.3;
};

// Deterministic function of (kind, m, seed, params): the whole payload is
// drawn from one splitmix64 stream in a fixed order.
inline Instance random_instance(InstanceKind kind, int m, std::uint64_t seed,
                                const GenParams& params) {
  if (m < 1) throw ValidationError("random instances need m >= 1");
  if (!(params.min_weight >= 0.0) || params.max_weight < params.min_weight) {
    throw ValidationError("weight range must satisfy 0 <= min <= max");
  }
  SplitMix64 rng(seed);
  Instance inst;
  inst.kind = kind;
  inst.m = m;
  inst.seed = seed;
  const double span = params.max_weight - params.min_weight;
  if (kind == InstanceKind::kRandomCut) {
    if (!(params.edge_probability >= 0.0) || params.edge_probability > 1.0) {
      throw ValidationError("edge probability must be in [0, 1]");
    }
    for (int u = 0; u < m; ++u) {
      for (int v = u + 1; v < m; ++v) {
        if (rng.next_double() < params.edge_probability) {
          inst.edges.push_back({u, v, params.min_weight + span * rng.next_double()});
        }
      }
    }
  } else if (kind == InstanceKind::kRandomCoverage) {
    if (params.universe < 1) throw ValidationError("random coverage needs universe >= 1");
    if (!(params.density >= 0.0) || params.density > 1.0) {
      throw ValidationError("density must be in [0, 1]");
    }
    inst.universe = params.universe;
    inst.item_weights.reserve(params.universe);
    for (int item = 0; item < params.universe; ++item) {
      inst.item_weights.push_back(params.min_weight + span * rng.next_double());
    }
    inst.sets.assign(m, {});
    for (int i = 0; i < m; ++i) {
      for (int item = 0; item < params.universe; ++item) {
        if (rng.next_double() < params.density) inst.sets[i].push_back(item);
      }
    }
  } else {
    throw ValidationError("random_instance supports random-cut and random-coverage only");
  }
  inst.validate();
  return inst;
}

inline std::string serialize(const Instance& inst) {
  nlohmann::ordered_json j;  // documented field order: kind, m, payload, seed
  j["kind"] = to_string(inst.kind);
  j["m"] = inst.m;
  if (inst.is_cut_kind()) {
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : inst.edges) {
      edges.push_back(nlohmann::ordered_json::array({e.u, e.v, e.weight}));
    }
    j["edges"] = edges;
  } else {
    j["universe"] = inst.universe;
    j["weights"] = inst.item_weights;
    j["sets"] = inst.sets;
  }
  if (inst.seed) j["seed"] = *inst.seed;
  return j.dump();
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("instance parse error: ") + e.what());
  }
  Instance inst;
  try {
    inst.kind = kind_from_string(j.at("kind").get<std::string>());
    inst.m = j.at("m").get<int>();
    if (inst.is_cut_kind()) {
      for (const auto& row : j.at("edges")) {
        if (!row.is_array() || row.size() != 3) {
          throw ParseError("edge rows must be [u, v, weight]");
        }
        inst.edges.push_back(
            {row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
      }
    } else {
      inst.universe = j.at("universe").get<int>();
      inst.item_weights = j.at("weights").get<std::vector<double>>();
      inst.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    }
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance parse error: ") + e.what());
  }
  inst.validate();  // ValidationError for well-formed JSON with bad payload
  return inst;
}

}  // namespace submax
