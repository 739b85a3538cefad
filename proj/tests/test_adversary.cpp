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

#include <gtest/gtest.h>

#include <cmath>

#include "seeds/adversary.hpp"
#include "seeds/occupancy.hpp"

namespace seeds {
namespace {

const LayerShape kShape({1, 2, 2, 1}, 3);

LossFunction constant(double c) { return LossFunction(kShape, c); }

TEST(AdversaryKind, NamesRoundTrip) {
  for (auto kind : {AdversaryKind::kStochastic, AdversaryKind::kPiecewise,
                    AdversaryKind::kAlternating, AdversaryKind::kWorstCaseSwap})
    EXPECT_EQ(adversary_kind_from_string(to_string(kind)), kind);
  EXPECT_THROW(adversary_kind_from_string("greedy"), std::invalid_argument);
}

TEST(GenerateLosses, StochasticWithoutNoiseIsConstant) {
  AdversarySpec spec;
  spec.means = constant(0.5);
  const auto losses = generate_losses(spec, kShape, 50);
  ASSERT_EQ(losses.size(), 50u);
  for (const auto& l : losses) EXPECT_EQ(l, constant(0.5));
}

TEST(GenerateLosses, StochasticNoiseCentersOnMeans) {
  AdversarySpec spec;
  spec.means = constant(0.5);
  spec.noise = 0.1;
  spec.seed = 3;
  const int T = 20'000;
  const auto losses = generate_losses(spec, kShape, T);
  double sum = 0.0;
  for (const auto& l : losses) sum += l(2, 1);
  EXPECT_NEAR(sum / T, 0.5, 4.0 * 0.1 / std::sqrt(T));
  EXPECT_NE(losses[0], losses[1]);
}

TEST(GenerateLosses, AlternatingPeriodOne) {
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAlternating;
  spec.period = 1;
  spec.table0 = constant(0.1);
  spec.table1 = constant(0.9);
  const auto losses = generate_losses(spec, kShape, 6);
  for (std::size_t i = 0; i < losses.size(); ++i)
    EXPECT_EQ(losses[i], i % 2 == 0 ? spec.table0 : spec.table1) << "index " << i;
}

TEST(GenerateLosses, AlternatingBlocks) {
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAlternating;
  spec.period = 3;
  spec.seed = 4;
  const auto losses = generate_losses(spec, kShape, 12);
  EXPECT_EQ(losses[0], losses[2]);
  EXPECT_NE(losses[2], losses[3]);
  EXPECT_EQ(losses[3], losses[5]);
  EXPECT_EQ(losses[0], losses[6]);
}

TEST(GenerateLosses, PiecewiseRedrawsEachPeriod) {
  AdversarySpec spec;
  spec.kind = AdversaryKind::kPiecewise;
  spec.period = 5;
  spec.seed = 5;
  const auto losses = generate_losses(spec, kShape, 20);
  EXPECT_EQ(losses[0], losses[4]);
  EXPECT_NE(losses[4], losses[5]);
  EXPECT_EQ(losses[5], losses[9]);
  EXPECT_NE(losses[9], losses[10]);
}

TEST(GenerateLosses, WorstCaseSwapRotatesTheGoodArm) {
  AdversarySpec spec;
  spec.kind = AdversaryKind::kWorstCaseSwap;
  spec.period = 4;
  const auto losses = generate_losses(spec, kShape, 16);
  for (std::size_t t = 0; t < losses.size(); ++t) {
    const std::size_t good = (t / 4) % 3;
    for (std::size_t s = 0; s < kShape.num_decision_states(); ++s)
      for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(losses[t](s, a), a == good ? 0.0 : 1.0);
  }
}

TEST(GenerateLosses, DefaultPeriodIsTwoThirdsPower) {
  AdversarySpec spec;
  EXPECT_EQ(effective_period(spec, 1000), 100);
  EXPECT_EQ(effective_period(spec, 8000), 400);
  spec.period = 7;
  EXPECT_EQ(effective_period(spec, 8000), 7);
}

TEST(GenerateLosses, AllKindsStayInUnitInterval) {
  std::size_t values = 0;
  for (auto kind : {AdversaryKind::kStochastic, AdversaryKind::kPiecewise,
                    AdversaryKind::kAlternating, AdversaryKind::kWorstCaseSwap}) {
    AdversarySpec spec;
    spec.kind = kind;
    spec.noise = 0.5;
    spec.period = 10;
    spec.seed = 6;
    for (const auto& l : generate_losses(spec, kShape, 10'000))
      for (double x : l.values()) {
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
        ++values;
      }
  }
  EXPECT_GE(values, 100'000u);
}

TEST(GenerateLosses, PureFunctionOfSpec) {
  AdversarySpec spec;
  spec.kind = AdversaryKind::kPiecewise;
  spec.noise = 0.2;
  spec.seed = 7;
  const auto first = generate_losses(spec, kShape, 300);
  const auto second = generate_losses(spec, kShape, 300);
  EXPECT_EQ(first, second);
  // A longer horizon with an explicit period only appends.
  spec.period = 50;
  const auto short_run = generate_losses(spec, kShape, 100);
  const auto long_run = generate_losses(spec, kShape, 300);
  for (std::size_t t = 0; t < short_run.size(); ++t) EXPECT_EQ(short_run[t], long_run[t]);
}

TEST(GenerateLosses, RejectsBadTables) {
  AdversarySpec spec;
  spec.means = constant(0.5);
  spec.means(0, 0) = 1.5;
  EXPECT_THROW(generate_losses(spec, kShape, 5), std::invalid_argument);
  spec.means = LossFunction(LayerShape({1, 1}, 3), 0.5);
  EXPECT_THROW(generate_losses(spec, kShape, 5), std::invalid_argument);
  EXPECT_THROW(generate_losses(AdversarySpec{}, kShape, 0), std::invalid_argument);
}

TEST(LowerBoundMdp, MinimalInstance) {
  const auto mdp = lower_bound_mdp(4, 3, 2);
  EXPECT_EQ(mdp.shape().layer_sizes(), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(mdp.num_states(), 4u);
  EXPECT_TRUE(validate_mdp(mdp).empty());
}

TEST(LowerBoundMdp, TwoChainsStayApart) {
  const auto mdp = lower_bound_mdp(6, 3, 2);
  const auto& shape = mdp.shape();
  EXPECT_EQ(shape.layer_sizes(), (std::vector<std::size_t>{1, 2, 2, 1}));
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_EQ(mdp.probability(1, 0, a), 0.5);
    EXPECT_EQ(mdp.probability(3, 1, a), 1.0);
    EXPECT_EQ(mdp.probability(4, 2, a), 1.0);
  }
}

TEST(LowerBoundMdp, SimulatedEpisodesStayInTheirChain) {
  const auto mdp = lower_bound_mdp(14, 5, 3);
  const auto& shape = mdp.shape();
  const LossFunction loss(shape, 0.0);
  RngStream rng(8);
  for (int i = 0; i < 2000; ++i) {
    DeterministicPolicy pi(std::vector<std::size_t>(shape.num_decision_states()));
    for (std::size_t s = 0; s < pi.size(); ++s) pi[s] = rng() % 3;
    const auto traj = run_episode(mdp, pi, loss, rng);
    const std::size_t chain = traj.steps[1].state - shape.layer_begin(1);
    for (std::size_t h = 1; h < traj.steps.size(); ++h)
      ASSERT_EQ(traj.steps[h].state - shape.layer_begin(h), chain);
  }
}

TEST(LowerBoundMdp, ValidOverGrid) {
  for (std::size_t H = 2; H <= 6; ++H)
    for (std::size_t chains = 1; chains <= 4; ++chains)
      for (std::size_t A = 1; A <= 3; ++A) {
        const auto mdp = lower_bound_mdp(2 + chains * (H - 1), H, A);
        EXPECT_TRUE(validate_mdp(mdp).empty()) << H << " " << chains << " " << A;
        EXPECT_EQ(mdp.horizon(), H);
      }
}

TEST(LowerBoundMdp, DivisibilityErrorNamesConstraint) {
  try {
    lower_bound_mdp(5, 3, 2);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("S - 2 divisible by H - 1"), std::string::npos);
  }
  EXPECT_THROW(lower_bound_mdp(4, 1, 2), std::invalid_argument);
  EXPECT_THROW(lower_bound_mdp(2, 3, 2), std::invalid_argument);
}

TEST(RandomMdp, ValidAndSeeded) {
  const auto a = random_mdp({1, 3, 2, 1}, 2, 9);
  EXPECT_TRUE(validate_mdp(a).empty());
  EXPECT_EQ(a, random_mdp({1, 3, 2, 1}, 2, 9));
  EXPECT_NE(a, random_mdp({1, 3, 2, 1}, 2, 10));
}

}  // namespace
}  // namespace seeds
