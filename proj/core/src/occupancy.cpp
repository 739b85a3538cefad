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

#include "seeds/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seeds {
namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kKlZero = 1e-15;

double normalization_residual(const LayerShape& shape,
                              std::span<const double> layer_mass) {
  double worst = 0.0;
  for (std::size_t h = 0; h < shape.horizon(); ++h)
    worst = std::max(worst, std::abs(layer_mass[h] - 1.0));
  return worst;
}

}  // namespace

double OccupancyResiduals::max() const {
  double m = std::max(normalization, flow);
  if (transition) m = std::max(m, *transition);
  return m;
}

OccupancyResiduals validate_occupancy(const LayerShape& shape,
                                      const OccupancyMeasure& q,
                                      const LayeredMdp* mdp) {
  OccupancyResiduals out;
  std::vector<double> layer_mass(shape.horizon(), 0.0);
  std::vector<double> outflow(shape.num_states(), 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      layer_mass[shape.layer_of(s)] += q(s, a);
      outflow[s] += q(s, a);
    }
  out.normalization = normalization_residual(shape, layer_mass);
  if (mdp == nullptr) return out;

  std::vector<double> inflow(shape.num_states(), 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const auto p = mdp->transition(s, a);
      for (std::size_t j = 0; j < p.size(); ++j)
        inflow[next_begin + j] += q(s, a) * p[j];
    }
  }
  for (std::size_t s = shape.layer_begin(1); s < shape.num_decision_states(); ++s)
    out.flow = std::max(out.flow, std::abs(inflow[s] - outflow[s]));
  return out;
}

OccupancyResiduals validate_occupancy(const TripleOccupancy& q3,
                                      const LayeredMdp* mdp) {
  const auto& shape = q3.shape();
  OccupancyResiduals out;
  std::vector<double> layer_mass(shape.horizon(), 0.0);
  std::vector<double> inflow(shape.num_states(), 0.0);
  std::vector<double> outflow(shape.num_states(), 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    const std::size_t h = shape.layer_of(s);
    const std::size_t next_begin = shape.layer_begin(h + 1);
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const auto row = q3.row(s, a);
      for (std::size_t j = 0; j < row.size(); ++j) {
        layer_mass[h] += row[j];
        outflow[s] += row[j];
        inflow[next_begin + j] += row[j];
      }
    }
  }
  out.normalization = normalization_residual(shape, layer_mass);
  for (std::size_t s = shape.layer_begin(1); s < shape.num_decision_states(); ++s)
    out.flow = std::max(out.flow, std::abs(inflow[s] - outflow[s]));

  if (mdp != nullptr) {
    double worst = 0.0;
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const auto row = q3.row(s, a);
        double mass = 0.0;
        for (double x : row) mass += x;
        if (mass < kInducedTransitionFloor) continue;
        const auto p = mdp->transition(s, a);
        for (std::size_t j = 0; j < row.size(); ++j)
          worst = std::max(worst, std::abs(row[j] / mass - p[j]));
      }
    out.transition = worst;
  }
  return out;
}

StochasticPolicy policy_probabilities(const OccupancyMeasure& q) {
  StochasticPolicy pi(q.num_states(), q.num_actions(), 0.0);
  for (std::size_t s = 0; s < q.num_states(); ++s) {
    const auto row = q.row(s);
    double mass = 0.0;
    for (double x : row) mass += std::max(x, 0.0);
    auto out = pi.row(s);
    for (std::size_t a = 0; a < row.size(); ++a)
      out[a] = mass < kZeroStateMass ? 1.0 / static_cast<double>(row.size())
                                     : std::max(row[a], 0.0) / mass;
  }
  return pi;
}

DeterministicPolicy policy_from_occupancy(const OccupancyMeasure& q,
                                          RngStream& rng) {
  const auto pi = policy_probabilities(q);
  std::vector<std::size_t> actions(q.num_states());
  for (std::size_t s = 0; s < q.num_states(); ++s)
    actions[s] = rng.categorical(pi.row(s));
  return DeterministicPolicy(std::move(actions));
}

OccupancyMeasure marginalize(const TripleOccupancy& q3) {
  const auto& shape = q3.shape();
  OccupancyMeasure q(shape, 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      double sum = 0.0;
      for (double x : q3.row(s, a)) sum += x;
      q(s, a) = sum;
    }
  return q;
}

InducedTransition induced_transition(const TripleOccupancy& q3) {
  const auto& shape = q3.shape();
  InducedTransition out{TransitionTable(shape, 0.0), {}};
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const auto row = q3.row(s, a);
      auto dst = out.p.row(s, a);
      double mass = 0.0;
      for (double x : row) mass += x;
      if (mass <= 0.0) {
        std::fill(dst.begin(), dst.end(), 1.0 / static_cast<double>(dst.size()));
        out.zero_mass_rows.push_back(s * shape.num_actions() + a);
        continue;
      }
      for (std::size_t j = 0; j < row.size(); ++j) dst[j] = row[j] / mass;
    }
  return out;
}

BestFixed best_fixed_occupancy(const LayeredMdp& mdp,
                               const LossFunction& aggregate_loss) {
  const auto& shape = mdp.shape();
  std::vector<double> value(shape.num_states(), 0.0);
  std::vector<std::size_t> actions(shape.num_decision_states(), 0);
  for (std::size_t s = shape.num_decision_states(); s-- > 0;) {
    const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const auto p = mdp.transition(s, a);
      double v = aggregate_loss(s, a);
      for (std::size_t j = 0; j < p.size(); ++j) v += p[j] * value[next_begin + j];
      if (v < best) {
        best = v;
        actions[s] = a;
      }
    }
    value[s] = best;
  }
  DeterministicPolicy policy(std::move(actions));
  auto q = occupancy_of_policy(mdp, policy);
  return {std::move(q), std::move(policy), value[shape.initial_state()]};
}

double kl_unnormalized(std::span<const double> q,
                       std::span<const double> q_ref) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > kKlZero)
      sum += q[i] * (std::log(q[i]) - std::log(std::max(q_ref[i], kLogFloor)));
    sum -= q[i] - q_ref[i];
  }
  return sum;
}

double kl_unnormalized(const OccupancyMeasure& q, const OccupancyMeasure& q_ref) {
  return kl_unnormalized(std::span<const double>(q.values()),
                         std::span<const double>(q_ref.values()));
}

}  // namespace seeds
