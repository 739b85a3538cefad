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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seeds/layer_shape.hpp"
#include "seeds/rng.hpp"
#include "seeds/tables.hpp"

namespace seeds {

/// Layered episodic MDP: shape plus dense per-layer transition rows.
class LayeredMdp {
 public:
  LayeredMdp() = default;
  LayeredMdp(LayerShape shape, TransitionTable transitions);

  /// Builds from nested probabilities indexed [h][s][a][s'] with layer-local
  /// state indices. Throws std::invalid_argument on ragged input.
  static LayeredMdp from_nested(
      const std::vector<std::vector<std::vector<std::vector<double>>>>& p,
      std::size_t num_actions);

  const LayerShape& shape() const { return transitions_.shape(); }
  std::size_t horizon() const { return shape().horizon(); }
  std::size_t num_actions() const { return shape().num_actions(); }
  std::size_t num_states() const { return shape().num_states(); }

  /// P(. | s, a) over the states of the next layer (layer-local order).
  std::span<const double> transition(std::size_t s, std::size_t a) const {
    return transitions_.row(s, a);
  }
  double probability(std::size_t next, std::size_t s, std::size_t a) const {
    return transitions_(next, s, a);
  }
  const TransitionTable& transitions() const { return transitions_; }

  friend bool operator==(const LayeredMdp&, const LayeredMdp&) = default;

 private:
  TransitionTable transitions_;
};

struct MdpViolation {
  enum class Kind { kInitialLayer, kTerminalLayer, kNegative, kRowSum };
  Kind kind;
  std::size_t layer = 0;
  std::size_t state = 0;  // global index
  std::size_t action = 0;
  double value = 0.0;

  std::string describe() const;
};

/// Checks endpoint singletons, nonnegativity and row-stochasticity (1e-12).
/// An empty result means the MDP is valid.
std::vector<MdpViolation> validate_mdp(const LayeredMdp& mdp);

/// Action choice for every decision state.
class DeterministicPolicy {
 public:
  DeterministicPolicy() = default;
  explicit DeterministicPolicy(std::vector<std::size_t> action_of)
      : action_of_(std::move(action_of)) {}

  std::size_t operator[](std::size_t s) const { return action_of_[s]; }
  std::size_t& operator[](std::size_t s) { return action_of_[s]; }
  std::size_t size() const { return action_of_.size(); }
  const std::vector<std::size_t>& actions() const { return action_of_; }

  /// FNV-1a over the action vector.
  std::uint64_t hash() const;

  friend bool operator==(const DeterministicPolicy&,
                         const DeterministicPolicy&) = default;

 private:
  std::vector<std::size_t> action_of_;
};

struct Step {
  std::size_t state = 0;
  std::size_t action = 0;
  std::size_t next_state = 0;
  double loss = 0.0;
};

/// One episode under bandit feedback: losses only for the visited pairs.
struct Trajectory {
  std::int64_t episode_index = 0;
  std::vector<Step> steps;

  double total_loss() const;
};

Trajectory run_episode(const LayeredMdp& mdp, const DeterministicPolicy& policy,
                       const LossFunction& loss, RngStream& rng,
                       std::int64_t episode_index = 0);

/// Pr[a | s] = 1/A everywhere.
StochasticPolicy uniform_policy(const LayerShape& shape);
StochasticPolicy as_stochastic(const LayerShape& shape,
                               const DeterministicPolicy& policy);

/// Forward dynamic program over layers.
OccupancyMeasure occupancy_of_policy(const LayeredMdp& mdp,
                                     const StochasticPolicy& policy);
OccupancyMeasure occupancy_of_policy(const LayeredMdp& mdp,
                                     const DeterministicPolicy& policy);
/// q(s', s, a) = q(s, a) P(s' | s, a).
TripleOccupancy triple_occupancy_of_policy(const LayeredMdp& mdp,
                                           const StochasticPolicy& policy);

/// <q, l>. Shapes must match (checked with assert).
double expected_episode_loss(const OccupancyMeasure& q, const LossFunction& l);

/// Enumerates all A^(#decision states) deterministic policies in
/// lexicographic order, lowest state index varying slowest.
std::vector<DeterministicPolicy> enumerate_policies(const LayerShape& shape);

}  // namespace seeds
