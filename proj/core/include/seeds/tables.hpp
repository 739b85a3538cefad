// Copyright 2026 The seeds-mdp Authors.
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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "seeds/layer_shape.hpp"

namespace seeds {

struct OccupancyTag {};
struct LossTag {};
struct LossEstimateTag {};
struct PolicyTag {};
struct TransitionTag {};
struct CountTag {};
struct RadiusTag {};

/// Dense table over decision states x actions, row-major by state.
template <class Tag, class T = double>
class PairTable {
 public:
  using value_type = T;

  PairTable() = default;
  PairTable(std::size_t num_states, std::size_t num_actions, T fill = T{})
      : num_actions_(num_actions), values_(num_states * num_actions, fill) {}
  explicit PairTable(const LayerShape& shape, T fill = T{})
      : PairTable(shape.num_decision_states(), shape.num_actions(), fill) {}

  T& operator()(std::size_t s, std::size_t a) {
    return values_[s * num_actions_ + a];
  }
  const T& operator()(std::size_t s, std::size_t a) const {
    return values_[s * num_actions_ + a];
  }

  std::span<T> row(std::size_t s) {
    return {values_.data() + s * num_actions_, num_actions_};
  }
  std::span<const T> row(std::size_t s) const {
    return {values_.data() + s * num_actions_, num_actions_};
  }

  std::size_t num_states() const {
    return num_actions_ == 0 ? 0 : values_.size() / num_actions_;
  }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t size() const { return values_.size(); }

  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  friend bool operator==(const PairTable&, const PairTable&) = default;

 private:
  std::size_t num_actions_ = 0;
  std::vector<T> values_;
};

/// Dense table over (next state, state, action) triples. Each (s, a) owns a
/// contiguous row over the states of layer h(s) + 1.
template <class Tag, class T = double>
class TripleTable {
 public:
  using value_type = T;

  TripleTable() = default;
  explicit TripleTable(LayerShape shape, T fill = T{})
      : shape_(std::move(shape)), values_(shape_.num_triples(), fill) {}

  /// `next` is a global state index in layer h(s) + 1.
  T& operator()(std::size_t next, std::size_t s, std::size_t a) {
    return values_[index(next, s, a)];
  }
  const T& operator()(std::size_t next, std::size_t s, std::size_t a) const {
    return values_[index(next, s, a)];
  }

  std::span<T> row(std::size_t s, std::size_t a) {
    return {values_.data() + shape_.row_offset(s, a), shape_.row_length(s)};
  }
  std::span<const T> row(std::size_t s, std::size_t a) const {
    return {values_.data() + shape_.row_offset(s, a), shape_.row_length(s)};
  }

  const LayerShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  friend bool operator==(const TripleTable&, const TripleTable&) = default;

 private:
  std::size_t index(std::size_t next, std::size_t s, std::size_t a) const {
    return shape_.row_offset(s, a) +
           (next - shape_.layer_begin(shape_.layer_of(s) + 1));
  }

  LayerShape shape_;
  std::vector<T> values_;
};

using OccupancyMeasure = PairTable<OccupancyTag>;
using LossFunction = PairTable<LossTag>;
using LossEstimate = PairTable<LossEstimateTag>;
/// Action probabilities per state.
using StochasticPolicy = PairTable<PolicyTag>;

using TripleOccupancy = TripleTable<OccupancyTag>;
using TransitionTable = TripleTable<TransitionTag>;

}  // namespace seeds
