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
#include <string>
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/omd.hpp"

namespace seeds {

struct EpisodeRow {
  std::int64_t t = 0;  // 1-based episode
  std::int64_t u = 0;  // 1-based super-episode
  std::uint64_t policy_hash = 0;
  /// <q^{pi_t, P}, l_t> under the true transitions.
  double expected_loss = 0.0;
  double realized_loss = 0.0;
  /// pi_t != pi_{t-1}; always false for t = 1.
  bool switched = false;
};

/// Aggregate of the projection reports produced during one run.
struct ProjectionLog {
  std::int64_t count = 0;
  int max_iterations = 0;
  double max_residual = 0.0;
  double max_gap_bound = 0.0;

  void add(const ProjectionReport& r);
};

struct ExperimentRecord {
  std::string algorithm;
  std::int64_t horizon_T = 0;
  std::int64_t tau = 1;
  double eta = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  std::vector<EpisodeRow> rows;
  /// Policy played in each super-episode, indexed u - 1.
  std::vector<DeterministicPolicy> policies;
  ProjectionLog projections;

  std::int64_t num_super_episodes() const {
    return static_cast<std::int64_t>(policies.size());
  }
  std::int64_t switch_count() const;
  /// ceil(T / tau): the schedule's bound on policy switches.
  std::int64_t switch_bound() const { return (horizon_T + tau - 1) / tau; }
};

}  // namespace seeds
