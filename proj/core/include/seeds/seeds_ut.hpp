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
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/omd.hpp"
#include "seeds/record.hpp"
#include "seeds/seeds.hpp"
#include "seeds/tables.hpp"

namespace seeds {

/// Visit counts M(s', s, a) of transitions and N(s, a) of pairs.
struct Counts {
  TripleTable<CountTag, std::uint64_t> M;
  PairTable<CountTag, std::uint64_t> N;

  Counts() = default;
  explicit Counts(const LayerShape& shape) : M(shape, 0), N(shape, 0) {}

  /// sum_{s'} M(s', s, a) == N(s, a) everywhere.
  bool consistent() const;
};

/// Adds one count per step (s, a) -> s' of every trajectory.
Counts update_counts(Counts counts, std::span<const Trajectory> batch);

/// How the empirical probability under the square root of the radius is read.
enum class RadiusMode {
  /// P_bar(s' | s, a) = M / max(N, 1).
  kConditional,
  /// M(s', s, a) divided by the number of transitions observed out of layer
  /// h(s); a sensitivity variant.
  kJoint,
};

struct ConfidenceSet {
  TransitionTable p_bar;
  TripleTable<RadiusTag> eps;
  double delta = 0.1;
  /// ln(T S A / delta).
  double log_term = 0.0;
  Counts counts;

  /// [P_bar - eps, P_bar + eps] clipped to [0, 1]. Rows never visited are
  /// left vacuous ([0, 1]).
  TransitionIntervals intervals() const;
  /// Whether every P(s' | s, a) of `mdp` lies inside intervals().
  bool contains(const LayeredMdp& mdp) const;

  /// Contains every transition function: uniform P_bar with eps = 1.
  static ConfidenceSet vacuous(const LayerShape& shape, double delta);
};

/// P_bar = M / max(N, 1) and
/// eps = 2 sqrt(P_bar L / max(N - 1, 1)) + 14 L / (3 max(N - 1, 1)),
/// L = ln(T S A / delta), S counting every state.
ConfidenceSet build_confidence_set(const Counts& counts, std::int64_t T,
                                   double delta,
                                   RadiusMode mode = RadiusMode::kConditional);

/**
 * Largest occupancy of each pair over all occupancy measures whose transitions
 * lie in `intervals`: max over P in the set and policies of the probability of
 * reaching s, identical across a. Computed exactly per target state by a
 * backward pass, where each row's inner maximization over the interval
 * polytope is a greedy fill toward the highest-valued successors. `gamma` is
 * added to every entry.
 */
PairTable<OccupancyTag> upper_occupancy(const TransitionIntervals& intervals,
                                        double gamma = 0.0);
PairTable<OccupancyTag> upper_occupancy(const ConfidenceSet& cset, double gamma = 0.0);

struct SeedsUtParams {
  double eta = 0.0;
  std::int64_t tau = 1;
  double gamma = 0.0;
  double beta = 1.0;
  double delta = 0.1;
  double c_eta = 1.0;
  double c_tau = 1.0;
  double c_gamma = 1.0;
};

/// eta = c_eta beta^{-1/3} H^{1/3} (SA)^{-1/3} T^{-2/3},
/// tau = max(1, round(c_tau beta^{2/3} H^{-2/3} (SA)^{-1/3} T^{1/3})),
/// gamma = c_gamma beta^{1/3} H^{2/3} (SA)^{-2/3} T^{-1/2}.
SeedsUtParams seedsut_params(std::int64_t T, std::size_t H, std::size_t S,
                             std::size_t A, double beta, double delta,
                             double c_eta = 1.0, double c_tau = 1.0,
                             double c_gamma = 1.0);

struct SeedsUtState {
  std::int64_t u = 1;
  TripleOccupancy q3_hat;
  DeterministicPolicy policy;
  VisitBuffer buffer;
  std::vector<Trajectory> batch;
  Counts counts;
  ConfidenceSet cset;
  /// max_{q in C(cset)} q(s, a), without gamma.
  PairTable<OccupancyTag> upper_q;
  ProjectionReport last_projection;
};

struct SeedsUtOptions {
  ProjectionOptions projection;
  KlCoordinates kl_coordinates = KlCoordinates::kTriple;
  RadiusMode radius_mode = RadiusMode::kConditional;
};

/// Uniform triple occupancy per layer, vacuous confidence set.
SeedsUtState seeds_ut_initial_state(const LayerShape& shape, double delta,
                                    RngStream& rng);

/// lhat(s, a) = (sum of observed losses) / (upper_q(s, a) + gamma).
LossEstimate estimate_loss_ut(const SeedsUtState& state, double gamma);

/// Counts and confidence set from the super-episode's batch, mirror-descent
/// step onto the new set, fresh policy from the marginal.
SeedsUtState seeds_ut_update(SeedsUtState state, const LossEstimate& lhat,
                             const SeedsUtParams& params, std::int64_t T,
                             RngStream& rng, const SeedsUtOptions& options = {});

using SeedsUtObserver = std::function<void(const SeedsUtState&)>;

/// Runs SEEDS-UT. `mdp` only drives the simulation; the learner sees
/// trajectories and losses of visited pairs.
ExperimentRecord run_seeds_ut(const LayeredMdp& mdp,
                              std::span<const LossFunction> losses,
                              const SeedsUtParams& params, std::int64_t T,
                              std::uint64_t seed,
                              const SeedsUtOptions& options = {},
                              const SeedsUtObserver& observer = {});

}  // namespace seeds
