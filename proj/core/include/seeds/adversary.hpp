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
#include <string_view>
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/tables.hpp"

namespace seeds {

enum class AdversaryKind { kStochastic, kPiecewise, kAlternating, kWorstCaseSwap };

std::string_view to_string(AdversaryKind kind);
/// Throws std::invalid_argument for unknown names.
AdversaryKind adversary_kind_from_string(std::string_view name);

/**
 * Oblivious loss generator. Tables left empty are drawn uniformly from [0, 1]
 * using `seed`; `period` <= 0 selects round(T^{2/3}).
 *
 *   stochastic:      clip(means + noise * N(0, 1)) every episode
 *   piecewise:       means re-drawn every `period` episodes, noise as above
 *   alternating:     table0 on blocks 0, 2, 4, ... of length `period`
 *                    (0-based t), table1 on the others
 *   worst_case_swap: loss 0 on action (t / period) mod A, 1 on the rest,
 *                    at every decision state
 */
struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kStochastic;
  std::uint64_t seed = 0;
  std::int64_t period = 0;
  double noise = 0.0;
  LossFunction means;
  LossFunction table0;
  LossFunction table1;
};

std::int64_t effective_period(const AdversarySpec& spec, std::int64_t T);

/// losses[t - 1] is l_t. A pure function of (spec, shape, T).
std::vector<LossFunction> generate_losses(const AdversarySpec& spec,
                                          const LayerShape& shape, std::int64_t T);

/**
 * Bandit-chain instance: (S - 2) / (H - 1) parallel chains over layers
 * 1..H-1, each following itself with probability 1 under every action. The
 * initial state spreads uniformly over the chain heads. Requires H >= 2 and
 * H - 1 dividing S - 2 with at least one chain.
 */
LayeredMdp lower_bound_mdp(std::size_t S, std::size_t H, std::size_t A);

/// Rows drawn from a flat Dirichlet.
LayeredMdp random_mdp(const std::vector<std::size_t>& layer_sizes,
                      std::size_t A, std::uint64_t seed);

}  // namespace seeds
