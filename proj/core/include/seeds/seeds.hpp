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
#include <functional>
#include <span>
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/omd.hpp"
#include "seeds/record.hpp"
#include "seeds/rng.hpp"
#include "seeds/tables.hpp"

namespace seeds {

struct SeedsParams {
  double eta = 0.0;
  std::int64_t tau = 1;
  double beta = 1.0;
  double c_eta = 1.0;
  double c_tau = 1.0;
};

/// eta = c_eta beta^{-1/3} H^{2/3} (SA)^{-1/3} T^{-2/3},
/// tau = max(1, round(c_tau beta^{2/3} (HSA)^{-1/3} T^{1/3})).
/// S counts every state, including the initial and terminal ones.
SeedsParams seeds_params(std::int64_t T, std::size_t H, std::size_t S,
                         std::size_t A, double beta, double c_eta = 1.0,
                         double c_tau = 1.0);

struct Visit {
  std::int64_t episode = 0;
  double loss = 0.0;
};

/// Observed (episode, loss) pairs per state-action within one super-episode.
class VisitBuffer {
 public:
  VisitBuffer() = default;
  explicit VisitBuffer(const LayerShape& shape)
      : num_actions_(shape.num_actions()), visits_(shape.num_pairs()) {}

  void record(const Trajectory& trajectory);
  void clear();

  std::span<const Visit> visits(std::size_t s, std::size_t a) const {
    return visits_[s * num_actions_ + a];
  }
  double loss_sum(std::size_t s, std::size_t a) const;
  std::size_t num_states() const {
    return num_actions_ == 0 ? 0 : visits_.size() / num_actions_;
  }
  std::size_t num_actions() const { return num_actions_; }

 private:
  std::size_t num_actions_ = 0;
  std::vector<std::vector<Visit>> visits_;
};

struct SeedsState {
  std::int64_t u = 1;
  OccupancyMeasure q_hat;
  DeterministicPolicy policy;
  VisitBuffer buffer;
  ProjectionReport last_projection;
};

/// Initial state: uniform action probabilities, policy sampled from them.
SeedsState seeds_initial_state(const LayeredMdp& mdp, RngStream& rng);

/// lhat(s, a) = (sum of observed losses of (s, a) in the super-episode) /
/// q_hat(s, a); zero for unvisited pairs. Throws std::logic_error if a visited
/// pair has no occupancy mass.
LossEstimate estimate_loss_seeds(const SeedsState& state);

struct SeedsOptions {
  ProjectionOptions projection;
  /// Re-sample the policy only when q_hat moved by more than 1e-12 in L1.
  bool lazy_resample = false;
};

/// Mirror-descent step onto C(P), then a fresh policy sample.
SeedsState seeds_update(SeedsState state, const LossEstimate& lhat,
                        const SeedsParams& params, const LayeredMdp& mdp,
                        RngStream& rng, const SeedsOptions& options = {});

/// Called after every super-episode update with the new state.
using SeedsObserver = std::function<void(const SeedsState&)>;

/**
 * Runs SEEDS for T episodes against a fixed loss sequence (losses[t - 1] is
 * l_t). The learner's randomness comes from substream 0 of `seed`; episode t
 * draws its transitions from substream 1 -> t.
 */
ExperimentRecord run_seeds(const LayeredMdp& mdp,
                           std::span<const LossFunction> losses,
                           const SeedsParams& params, std::int64_t T,
                           std::uint64_t seed, const SeedsOptions& options = {},
                           const SeedsObserver& observer = {});

/// Learner and environment streams shared by all runners.
RngStream learner_stream(std::uint64_t seed);
RngStream episode_stream(std::uint64_t seed, std::int64_t t);

}  // namespace seeds
