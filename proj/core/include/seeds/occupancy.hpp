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

#include <optional>
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/rng.hpp"
#include "seeds/tables.hpp"

namespace seeds {

/// Below this per-state mass, policy extraction falls back to uniform.
inline constexpr double kZeroStateMass = 1e-15;
/// Rows with less pair mass are skipped by the induced-transition check.
inline constexpr double kInducedTransitionFloor = 1e-12;
/// Membership tolerance for C(P).
inline constexpr double kFeasibilityTolerance = 1e-8;

/// Max absolute residual of each constraint family. `transition` is only
/// populated when a transition function was supplied and the measure carries
/// triple information.
struct OccupancyResiduals {
  double normalization = 0.0;
  double flow = 0.0;
  std::optional<double> transition;

  double max() const;
  bool feasible(double tol = kFeasibilityTolerance) const { return max() < tol; }
};

/// Per-layer normalization; flow conservation needs P for pair measures.
OccupancyResiduals validate_occupancy(const LayerShape& shape,
                                      const OccupancyMeasure& q,
                                      const LayeredMdp* mdp = nullptr);
/// Normalization and flow of the triple measure itself; with `mdp`, also the
/// induced-transition match q(s',s,a) / q(s,a) vs P(s'|s,a).
OccupancyResiduals validate_occupancy(const TripleOccupancy& q3,
                                      const LayeredMdp* mdp = nullptr);

/// Pr[a | s] = q(s, a) / sum_b q(s, b); uniform where the state has no mass.
StochasticPolicy policy_probabilities(const OccupancyMeasure& q);

/// Samples one action per state independently from policy_probabilities(q).
DeterministicPolicy policy_from_occupancy(const OccupancyMeasure& q,
                                          RngStream& rng);

/// q(s, a) = sum_{s'} q(s', s, a).
OccupancyMeasure marginalize(const TripleOccupancy& q3);

struct InducedTransition {
  TransitionTable p;
  /// Pair indices (s * A + a) whose row had zero mass and was set uniform.
  std::vector<std::size_t> zero_mass_rows;
};

InducedTransition induced_transition(const TripleOccupancy& q3);

struct BestFixed {
  OccupancyMeasure occupancy;
  DeterministicPolicy policy;
  double value = 0.0;
};

/// Minimizes <q, aggregate_loss> over C(P) by backward dynamic programming on
/// deterministic policies. Ties go to the lowest action index.
BestFixed best_fixed_occupancy(const LayeredMdp& mdp,
                               const LossFunction& aggregate_loss);

/// sum q ln(q / q') - sum (q - q'), with 0 ln 0 = 0.
double kl_unnormalized(std::span<const double> q, std::span<const double> q_ref);
double kl_unnormalized(const OccupancyMeasure& q, const OccupancyMeasure& q_ref);

}  // namespace seeds
