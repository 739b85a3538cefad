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
#include <vector>

namespace seeds {

/**
 * Index layout of a layered state space.
 *
 * Layer h holds `layer_sizes[h]` states with contiguous global indices
 * starting at `layer_begin(h)`. Layers 0..H-1 are decision layers; layer H
 * is terminal and carries no actions. Decision states therefore occupy the
 * global range [0, num_decision_states()), which is how pair tables index
 * them.
 */
class LayerShape {
 public:
  LayerShape() = default;
  /// Requires at least two layers, every layer non-empty and at least one
  /// action; throws std::invalid_argument otherwise.
  LayerShape(std::vector<std::size_t> layer_sizes, std::size_t num_actions);

  std::size_t horizon() const { return layer_sizes_.size() - 1; }
  std::size_t num_actions() const { return num_actions_; }
  const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }
  std::size_t layer_size(std::size_t h) const { return layer_sizes_[h]; }
  std::size_t layer_begin(std::size_t h) const { return layer_begin_[h]; }
  std::size_t layer_end(std::size_t h) const { return layer_begin_[h + 1]; }
  std::size_t layer_of(std::size_t s) const { return layer_of_[s]; }

  std::size_t num_states() const { return layer_begin_.back(); }
  std::size_t num_decision_states() const { return layer_begin_[horizon()]; }
  std::size_t num_pairs() const { return num_decision_states() * num_actions_; }
  std::size_t initial_state() const { return 0; }

  /// Number of next-layer states reachable from decision state `s`.
  std::size_t row_length(std::size_t s) const {
    return layer_sizes_[layer_of_[s] + 1];
  }
  std::size_t row_offset(std::size_t s, std::size_t a) const {
    return row_begin_[s] + a * row_length(s);
  }
  std::size_t num_triples() const { return row_begin_.back(); }

  friend bool operator==(const LayerShape&, const LayerShape&) = default;

 private:
  std::vector<std::size_t> layer_sizes_;
  std::size_t num_actions_ = 0;
  std::vector<std::size_t> layer_begin_;
  std::vector<std::size_t> layer_of_;
  std::vector<std::size_t> row_begin_;
};

}  // namespace seeds
