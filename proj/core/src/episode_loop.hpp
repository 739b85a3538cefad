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
#include "seeds/record.hpp"
#include "seeds/seeds.hpp"

namespace seeds::detail {

/// Plays episodes t0..t1 (1-based, inclusive) with a frozen policy, appending
/// one row per episode and the visits to `buffer`. Trajectories are also
/// appended to `batch` when given.
void play_super_episode(const LayeredMdp& mdp,
                        std::span<const LossFunction> losses,
                        const DeterministicPolicy& policy, std::int64_t u,
                        std::int64_t t0, std::int64_t t1, std::uint64_t seed,
                        ExperimentRecord& record, VisitBuffer& buffer,
                        std::vector<Trajectory>* batch = nullptr);

}  // namespace seeds::detail
