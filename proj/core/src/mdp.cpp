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

#include "seeds/mdp.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace seeds {

LayerShape::LayerShape(std::vector<std::size_t> layer_sizes,
                       std::size_t num_actions)
    : layer_sizes_(std::move(layer_sizes)), num_actions_(num_actions) {
  if (layer_sizes_.size() < 2)
    throw std::invalid_argument("layered MDP needs at least two layers");
  if (num_actions_ == 0)
    throw std::invalid_argument("layered MDP needs at least one action");
  layer_begin_.assign(layer_sizes_.size() + 1, 0);
  for (std::size_t h = 0; h < layer_sizes_.size(); ++h) {
    if (layer_sizes_[h] == 0)
      throw std::invalid_argument("layer " + std::to_string(h) + " is empty");
    layer_begin_[h + 1] = layer_begin_[h] + layer_sizes_[h];
    layer_of_.insert(layer_of_.end(), layer_sizes_[h], h);
  }
  row_begin_.assign(num_decision_states() + 1, 0);
  for (std::size_t s = 0; s < num_decision_states(); ++s)
    row_begin_[s + 1] = row_begin_[s] + num_actions_ * row_length(s);
}

LayeredMdp::LayeredMdp(LayerShape shape, TransitionTable transitions)
    : transitions_(std::move(transitions)) {
  if (!(transitions_.shape() == shape))
    throw std::invalid_argument("transition table shape does not match MDP");
}

LayeredMdp LayeredMdp::from_nested(
    const std::vector<std::vector<std::vector<std::vector<double>>>>& p,
    std::size_t num_actions) {
  if (p.empty()) throw std::invalid_argument("P must have at least one layer");
  std::vector<std::size_t> sizes;
  for (const auto& layer : p) sizes.push_back(layer.size());
  const auto& last = p.back();
  if (last.empty() || last.front().empty())
    throw std::invalid_argument("P[H-1] is empty");
  sizes.push_back(last.front().front().size());

  LayerShape shape(sizes, num_actions);
  TransitionTable table(shape);
  for (std::size_t h = 0; h < p.size(); ++h) {
    for (std::size_t i = 0; i < p[h].size(); ++i) {
      if (p[h][i].size() != num_actions)
        throw std::invalid_argument("P[" + std::to_string(h) + "][" +
                                    std::to_string(i) + "] has " +
                                    std::to_string(p[h][i].size()) +
                                    " actions, expected " +
                                    std::to_string(num_actions));
      const std::size_t s = shape.layer_begin(h) + i;
      for (std::size_t a = 0; a < num_actions; ++a) {
        const auto& src = p[h][i][a];
        if (src.size() != sizes[h + 1])
          throw std::invalid_argument(
              "P[" + std::to_string(h) + "][" + std::to_string(i) + "][" +
              std::to_string(a) + "] has length " + std::to_string(src.size()) +
              ", expected " + std::to_string(sizes[h + 1]));
        auto row = table.row(s, a);
        std::copy(src.begin(), src.end(), row.begin());
      }
    }
  }
  return LayeredMdp(shape, std::move(table));
}

std::string MdpViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kInitialLayer:
      os << "layer 0 must contain exactly one state (has " << value << ")";
      break;
    case Kind::kTerminalLayer:
      os << "terminal layer " << layer << " must contain exactly one state (has "
         << value << ")";
      break;
    case Kind::kNegative:
      os << "negative transition probability " << value << " at (h=" << layer
         << ", s=" << state << ", a=" << action << ")";
      break;
    case Kind::kRowSum:
      os << "transition row (h=" << layer << ", s=" << state
         << ", a=" << action << ") sums to " << value;
      break;
  }
  return os.str();
}

std::vector<MdpViolation> validate_mdp(const LayeredMdp& mdp) {
  using Kind = MdpViolation::Kind;
  std::vector<MdpViolation> out;
  const auto& shape = mdp.shape();
  const std::size_t H = shape.horizon();
  if (shape.layer_size(0) != 1)
    out.push_back({Kind::kInitialLayer, 0, 0, 0,
                   static_cast<double>(shape.layer_size(0))});
  if (shape.layer_size(H) != 1)
    out.push_back({Kind::kTerminalLayer, H, 0, 0,
                   static_cast<double>(shape.layer_size(H))});
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    const std::size_t h = shape.layer_of(s);
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      double sum = 0.0;
      for (double p : mdp.transition(s, a)) {
        if (p < 0.0 || !std::isfinite(p))
          out.push_back({Kind::kNegative, h, s, a, p});
        sum += p;
      }
      if (!(std::abs(sum - 1.0) <= 1e-12))
        out.push_back({Kind::kRowSum, h, s, a, sum});
    }
  }
  return out;
}

std::uint64_t DeterministicPolicy::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t a : action_of_) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (static_cast<std::uint64_t>(a) >> (8 * byte)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

double Trajectory::total_loss() const {
  double sum = 0.0;
  for (const auto& step : steps) sum += step.loss;
  return sum;
}

Trajectory run_episode(const LayeredMdp& mdp, const DeterministicPolicy& policy,
                       const LossFunction& loss, RngStream& rng,
                       std::int64_t episode_index) {
  const auto& shape = mdp.shape();
  Trajectory traj;
  traj.episode_index = episode_index;
  traj.steps.reserve(shape.horizon());
  std::size_t s = shape.initial_state();
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    const std::size_t a = policy[s];
    const auto row = mdp.transition(s, a);
    const std::size_t next = shape.layer_begin(h + 1) + rng.categorical(row);
    traj.steps.push_back({s, a, next, loss(s, a)});
    s = next;
  }
  return traj;
}

StochasticPolicy uniform_policy(const LayerShape& shape) {
  return StochasticPolicy(shape, 1.0 / static_cast<double>(shape.num_actions()));
}

StochasticPolicy as_stochastic(const LayerShape& shape,
                               const DeterministicPolicy& policy) {
  StochasticPolicy out(shape, 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    out(s, policy[s]) = 1.0;
  return out;
}

OccupancyMeasure occupancy_of_policy(const LayeredMdp& mdp,
                                     const StochasticPolicy& policy) {
  const auto& shape = mdp.shape();
  OccupancyMeasure q(shape, 0.0);
  std::vector<double> reach(shape.num_states(), 0.0);
  reach[shape.initial_state()] = 1.0;
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    if (reach[s] == 0.0) continue;
    const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const double mass = reach[s] * policy(s, a);
      q(s, a) = mass;
      if (mass == 0.0) continue;
      const auto row = mdp.transition(s, a);
      for (std::size_t j = 0; j < row.size(); ++j)
        reach[next_begin + j] += mass * row[j];
    }
  }
  return q;
}

OccupancyMeasure occupancy_of_policy(const LayeredMdp& mdp,
                                     const DeterministicPolicy& policy) {
  return occupancy_of_policy(mdp, as_stochastic(mdp.shape(), policy));
}

TripleOccupancy triple_occupancy_of_policy(const LayeredMdp& mdp,
                                           const StochasticPolicy& policy) {
  const auto q = occupancy_of_policy(mdp, policy);
  TripleOccupancy q3(mdp.shape(), 0.0);
  for (std::size_t s = 0; s < mdp.shape().num_decision_states(); ++s)
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      const auto p = mdp.transition(s, a);
      auto row = q3.row(s, a);
      for (std::size_t j = 0; j < p.size(); ++j) row[j] = q(s, a) * p[j];
    }
  return q3;
}

double expected_episode_loss(const OccupancyMeasure& q, const LossFunction& l) {
  assert(q.size() == l.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q.values()[i] * l.values()[i];
  return sum;
}

std::vector<DeterministicPolicy> enumerate_policies(const LayerShape& shape) {
  const std::size_t n = shape.num_decision_states();
  const std::size_t A = shape.num_actions();
  std::vector<DeterministicPolicy> out;
  std::vector<std::size_t> actions(n, 0);
  while (true) {
    out.emplace_back(actions);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++actions[k] < A) break;
      actions[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace seeds
