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

#include "seeds/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "seeds/rng.hpp"

namespace seeds {
namespace {

constexpr std::uint64_t kTableStream = 1;
constexpr std::uint64_t kEpisodeStream = 2;

LossFunction uniform_table(const LayerShape& shape, RngStream& rng) {
  LossFunction table(shape, 0.0);
  for (double& x : table.values()) x = rng.uniform();
  return table;
}

const LossFunction& table_or_draw(const LossFunction& given, const LayerShape& shape,
                                  RngStream& rng, LossFunction& storage,
                                  const char* name) {
  if (given.size() == 0) {
    storage = uniform_table(shape, rng);
    return storage;
  }
  if (given.num_states() != shape.num_decision_states() ||
      given.num_actions() != shape.num_actions())
    throw std::invalid_argument(std::string("adversary: '") + name +
                                "' does not match the MDP shape");
  for (double x : given.values())
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument(std::string("adversary: '") + name +
                                  "' has a value outside [0, 1]");
  return given;
}

LossFunction perturbed(const LossFunction& means, double noise, RngStream& rng) {
  LossFunction loss = means;
  if (noise > 0.0) {
    std::normal_distribution<double> normal(0.0, noise);
    for (double& x : loss.values()) x = std::clamp(x + normal(rng), 0.0, 1.0);
  }
  return loss;
}

}  // namespace

std::string_view to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kStochastic: return "stochastic";
    case AdversaryKind::kPiecewise: return "piecewise";
    case AdversaryKind::kAlternating: return "alternating";
    case AdversaryKind::kWorstCaseSwap: return "worst_case_swap";
  }
  return "unknown";
}

AdversaryKind adversary_kind_from_string(std::string_view name) {
  for (auto kind : {AdversaryKind::kStochastic, AdversaryKind::kPiecewise,
                    AdversaryKind::kAlternating, AdversaryKind::kWorstCaseSwap})
    if (to_string(kind) == name) return kind;
  throw std::invalid_argument("unknown adversary kind '" + std::string(name) + "'");
}

std::int64_t effective_period(const AdversarySpec& spec, std::int64_t T) {
  if (spec.period > 0) return spec.period;
  return std::max<std::int64_t>(
      1, std::llround(std::pow(static_cast<double>(T), 2.0 / 3.0)));
}

std::vector<LossFunction> generate_losses(const AdversarySpec& spec,
                                          const LayerShape& shape, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("generate_losses: T must be >= 1");
  if (spec.noise < 0.0) throw std::invalid_argument("adversary: 'noise' must be >= 0");
  const std::int64_t period = effective_period(spec, T);
  const RngStream root(spec.seed);
  RngStream tables = root.substream(kTableStream);
  const RngStream episodes = root.substream(kEpisodeStream);

  std::vector<LossFunction> out;
  out.reserve(static_cast<std::size_t>(T));
  switch (spec.kind) {
    case AdversaryKind::kStochastic: {
      LossFunction storage;
      const auto& means = table_or_draw(spec.means, shape, tables, storage, "means");
      for (std::int64_t t = 0; t < T; ++t) {
        RngStream rng = episodes.substream(static_cast<std::uint64_t>(t));
        out.push_back(perturbed(means, spec.noise, rng));
      }
      break;
    }
    case AdversaryKind::kPiecewise: {
      LossFunction means;
      for (std::int64_t t = 0; t < T; ++t) {
        if (t % period == 0) {
          RngStream block = tables.substream(static_cast<std::uint64_t>(t / period));
          means = uniform_table(shape, block);
        }
        RngStream rng = episodes.substream(static_cast<std::uint64_t>(t));
        out.push_back(perturbed(means, spec.noise, rng));
      }
      break;
    }
    case AdversaryKind::kAlternating: {
      LossFunction s0, s1;
      const auto& l0 = table_or_draw(spec.table0, shape, tables, s0, "table0");
      const auto& l1 = table_or_draw(spec.table1, shape, tables, s1, "table1");
      for (std::int64_t t = 0; t < T; ++t)
        out.push_back((t / period) % 2 == 0 ? l0 : l1);
      break;
    }
    case AdversaryKind::kWorstCaseSwap: {
      const auto A = static_cast<std::int64_t>(shape.num_actions());
      for (std::int64_t t = 0; t < T; ++t) {
        const auto arm = static_cast<std::size_t>((t / period) % A);
        LossFunction loss(shape, 1.0);
        for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
          loss(s, arm) = 0.0;
        out.push_back(std::move(loss));
      }
      break;
    }
  }
  return out;
}

LayeredMdp lower_bound_mdp(std::size_t S, std::size_t H, std::size_t A) {
  if (H < 2) throw std::invalid_argument("lower_bound_mdp: requires H >= 2");
  if (A < 1) throw std::invalid_argument("lower_bound_mdp: requires A >= 1");
  if (S < H + 1 || (S - 2) % (H - 1) != 0)
    throw std::invalid_argument(
        "lower_bound_mdp: requires S - 2 divisible by H - 1 with at least one "
        "chain (S=" + std::to_string(S) + ", H=" + std::to_string(H) + ")");
  const std::size_t chains = (S - 2) / (H - 1);
  std::vector<std::size_t> sizes(H + 1, chains);
  sizes.front() = 1;
  sizes.back() = 1;
  LayerShape shape(sizes, A);
  TransitionTable p(shape, 0.0);
  for (std::size_t a = 0; a < A; ++a) {
    for (double& x : p.row(0, a)) x = 1.0 / static_cast<double>(chains);
    for (std::size_t h = 1; h < H; ++h)
      for (std::size_t i = 0; i < chains; ++i) {
        const std::size_t s = shape.layer_begin(h) + i;
        p.row(s, a)[h + 1 < H ? i : 0] = 1.0;
      }
  }
  return LayeredMdp(shape, std::move(p));
}

LayeredMdp random_mdp(const std::vector<std::size_t>& layer_sizes, std::size_t A,
                      std::uint64_t seed) {
  LayerShape shape(layer_sizes, A);
  TransitionTable p(shape, 0.0);
  RngStream rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < A; ++a) {
      auto row = p.row(s, a);
      double total = 0.0;
      for (double& x : row) total += (x = exponential(rng) + 1e-12);
      for (double& x : row) x /= total;
    }
  return LayeredMdp(shape, std::move(p));
}

}  // namespace seeds
