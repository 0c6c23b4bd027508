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

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "submax/errors.hpp"

namespace submax {

// The universe of elements. Labels are optional; when present they must be
// distinct and one per element.
class GroundSet {
 public:
  explicit GroundSet(int size) : size_(size) {
    if (size < 0) throw ValidationError("ground set size must be non-negative");
  }

  GroundSet(int size, std::vector<std::string> labels)
      : size_(size), labels_(std::move(labels)) {
    if (size < 0) throw ValidationError("ground set size must be non-negative");
    if (static_cast<int>(labels_.size()) != size) {
      throw ValidationError("ground set labels must have one entry per element");
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : labels_) {
      if (!seen.insert(label).second) {
        throw ValidationError("ground set labels must be distinct: " + label);
      }
    }
  }

  int size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::string& label(int i) const {
    if (i < 0 || i >= static_cast<int>(labels_.size())) {
      throw ContractError("label index out of range");
    }
    return labels_[i];
  }

 private:
  int size_;
  std::vector<std::string> labels_;
};

// A subset of {0, ..., m-1} with dense bitset semantics. Element 0 is the
// least significant bit of the first word; unused trailing bits stay zero.
class Subset {
 public:
  Subset() = default;

  static Subset empty(int ground_size) { return Subset(ground_size); }

  static Subset full(int ground_size) {
    Subset s(ground_size);
    for (auto& w : s.words_) w = ~0ULL;
    s.clear_tail();
    return s;
  }

  static Subset of(int ground_size, std::initializer_list<int> elements) {
    Subset s(ground_size);
    for (int e : elements) s.add(e);
    return s;
  }

  // Bitmask round trip, limited to word-sized ground sets. Brute-force
  // enumeration and tests go through these.
  static Subset from_mask(int ground_size, std::uint64_t mask) {
    if (ground_size > 64) throw ContractError("from_mask requires ground size <= 64");
    Subset s(ground_size);
    if (ground_size > 0) s.words_[0] = mask;
    s.clear_tail();
    if (ground_size < 64 && (mask >> ground_size) != 0) {
      throw ContractError("mask has bits outside the ground set");
    }
    return s;
  }

  std::uint64_t to_mask() const {
    if (m_ > 64) throw ContractError("to_mask requires ground size <= 64");
    return words_.empty() ? 0ULL : words_[0];
  }

  int ground_size() const { return m_; }

  int count() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }

  bool is_empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool is_full() const { return count() == m_; }

  bool contains(int i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }

  void add(int i) {
    check_index(i);
    words_[i >> 6] |= 1ULL << (i & 63);
  }

  void remove(int i) {
    check_index(i);
    words_[i >> 6] &= ~(1ULL << (i & 63));
  }

  void flip(int i) {
    check_index(i);
    words_[i >> 6] ^= 1ULL << (i & 63);
  }

  Subset with(int i) const {
    Subset s(*this);
    s.add(i);
    return s;
  }

  Subset without(int i) const {
    Subset s(*this);
    s.remove(i);
    return s;
  }

  Subset flipped(int i) const {
    Subset s(*this);
    s.flip(i);
    return s;
  }

  Subset operator|(const Subset& other) const {
    check_same_ground(other);
    Subset s(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] |= other.words_[w];
    return s;
  }

  Subset operator&(const Subset& other) const {
    check_same_ground(other);
    Subset s(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] &= other.words_[w];
    return s;
  }

  Subset operator-(const Subset& other) const {
    check_same_ground(other);
    Subset s(*this);
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] &= ~other.words_[w];
    return s;
  }

  // Complement with respect to the ground set.
  Subset operator~() const {
    Subset s(*this);
    for (auto& w : s.words_) w = ~w;
    s.clear_tail();
    return s;
  }

  bool operator==(const Subset& other) const {
    return m_ == other.m_ && words_ == other.words_;
  }
  bool operator!=(const Subset& other) const { return !(*this == other); }

  // Orders subsets of one ground set by their bitmask value; used for
  // deterministic tie-breaks.
  bool operator<(const Subset& other) const {
    check_same_ground(other);
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w] != other.words_[w]) return words_[w] < other.words_[w];
    }
    return false;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        out.push_back(static_cast<int>(w << 6) + b);
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::string to_string() const {
    std::ostringstream oss;
    oss << '{';
    bool first = true;
    for (int e : members()) {
      if (!first) oss << ',';
      oss << e;
      first = false;
    }
    oss << '}';
    return oss.str();
  }

 private:
  explicit Subset(int ground_size) : m_(ground_size) {
    if (ground_size < 0) throw ValidationError("subset ground size must be non-negative");
    words_.assign((static_cast<std::size_t>(ground_size) + 63) / 64, 0ULL);
  }

  void check_index(int i) const {
    if (i < 0 || i >= m_) {
      throw ContractError("element " + std::to_string(i) + " outside ground set of size " +
                          std::to_string(m_));
    }
  }

  void check_same_ground(const Subset& other) const {
    if (m_ != other.m_) {
      throw ContractError("subset ground sizes differ: " + std::to_string(m_) + " vs " +
                          std::to_string(other.m_));
    }
  }

  void clear_tail() {
    if (m_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (1ULL << (m_ % 64)) - 1;
    }
  }

  int m_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace submax
