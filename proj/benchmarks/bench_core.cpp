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

#include <benchmark/benchmark.h>

#include "seeds/adversary.hpp"
#include "seeds/occupancy.hpp"
#include "seeds/omd.hpp"
#include "seeds/seeds.hpp"
#include "seeds/seeds_ut.hpp"

namespace {

using namespace seeds;

// Layers [1, k, k, k, 1] with A actions.
LayeredMdp instance(std::size_t k, std::size_t A) {
  return random_mdp({1, k, k, k, 1}, A, 17);
}

LossEstimate scaled_loss(const LayerShape& shape, double scale) {
  RngStream rng(3);
  LossEstimate l(shape, 0.0);
  for (double& x : l.values()) x = scale * rng.uniform();
  return l;
}

TransitionIntervals widened(const LayeredMdp& mdp, double r) {
  const auto& shape = mdp.shape();
  TransitionIntervals iv{TripleTable<RadiusTag>(shape, 0.0), TripleTable<RadiusTag>(shape, 1.0)};
  for (std::size_t i = 0; i < iv.lower.size(); ++i) {
    const double p = mdp.transitions().values()[i];
    iv.lower.values()[i] = std::max(0.0, p - r);
    iv.upper.values()[i] = std::min(1.0, p + r);
  }
  return iv;
}

void BM_ProjectKnown(benchmark::State& st) {
  const auto mdp = instance(static_cast<std::size_t>(st.range(0)), 3);
  const auto q = occupancy_of_policy(mdp, uniform_policy(mdp.shape()));
  const auto w = multiplicative_update(q, scaled_loss(mdp.shape(), 5.0), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(project_known(w, mdp));
}
BENCHMARK(BM_ProjectKnown)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ProjectConfidence(benchmark::State& st) {
  const auto mdp = instance(static_cast<std::size_t>(st.range(0)), 3);
  const auto iv = widened(mdp, 0.1);
  const auto q3 = triple_occupancy_of_policy(mdp, uniform_policy(mdp.shape()));
  const auto w = multiplicative_update(q3, scaled_loss(mdp.shape(), 5.0), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(project_confidence(w, iv));
}
BENCHMARK(BM_ProjectConfidence)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_UpperOccupancy(benchmark::State& st) {
  const auto mdp = instance(static_cast<std::size_t>(st.range(0)), 3);
  const auto iv = widened(mdp, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(upper_occupancy(iv, 0.01));
}
BENCHMARK(BM_UpperOccupancy)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_Episode(benchmark::State& st) {
  const auto mdp = instance(static_cast<std::size_t>(st.range(0)), 3);
  RngStream rng(9);
  const auto pi =
      policy_from_occupancy(occupancy_of_policy(mdp, uniform_policy(mdp.shape())), rng);
  const LossFunction loss(mdp.shape(), 0.5);
  std::int64_t t = 0;
  for (auto _ : st) benchmark::DoNotOptimize(run_episode(mdp, pi, loss, rng, ++t));
}
BENCHMARK(BM_Episode)->Arg(2)->Arg(8);

void BM_RunSeeds(benchmark::State& st) {
  const auto mdp = lower_bound_mdp(8, 4, 3);
  const std::int64_t T = st.range(0);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kWorstCaseSwap;
  const auto losses = generate_losses(spec, mdp.shape(), T);
  const auto params = seeds_params(T, 4, 8, 3, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(run_seeds(mdp, losses, params, T, 1));
  st.SetItemsProcessed(st.iterations() * T);
}
BENCHMARK(BM_RunSeeds)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
