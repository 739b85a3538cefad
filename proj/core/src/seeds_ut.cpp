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

#include "seeds/seeds_ut.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "episode_loop.hpp"
#include "seeds/occupancy.hpp"

namespace seeds {

bool Counts::consistent() const {
  const auto& shape = M.shape();
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      std::uint64_t sum = 0;
      for (auto m : M.row(s, a)) sum += m;
      if (sum != N(s, a)) return false;
    }
  return true;
}

Counts update_counts(Counts counts, std::span<const Trajectory> batch) {
  for (const auto& trajectory : batch)
    for (const auto& step : trajectory.steps) {
      ++counts.M(step.next_state, step.state, step.action);
      ++counts.N(step.state, step.action);
    }
  return counts;
}

ConfidenceSet build_confidence_set(const Counts& counts, std::int64_t T,
                                   double delta, RadiusMode mode) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  const auto& shape = counts.M.shape();
  ConfidenceSet cs;
  cs.delta = delta;
  cs.counts = counts;
  cs.log_term = std::log(static_cast<double>(T) *
                         static_cast<double>(shape.num_states()) *
                         static_cast<double>(shape.num_actions()) / delta);
  cs.p_bar = TransitionTable(shape, 0.0);
  cs.eps = TripleTable<RadiusTag>(shape, 0.0);

  std::vector<double> layer_total(shape.horizon(), 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a)
      layer_total[shape.layer_of(s)] += static_cast<double>(counts.N(s, a));

  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const double n = static_cast<double>(counts.N(s, a));
      const double denom = std::max(n - 1.0, 1.0);
      const auto m = counts.M.row(s, a);
      auto p = cs.p_bar.row(s, a);
      auto e = cs.eps.row(s, a);
      for (std::size_t j = 0; j < m.size(); ++j) {
        const double mj = static_cast<double>(m[j]);
        p[j] = mj / std::max(n, 1.0);
        const double under_root =
            mode == RadiusMode::kConditional
                ? p[j]
                : mj / std::max(layer_total[shape.layer_of(s)], 1.0);
        e[j] = 2.0 * std::sqrt(under_root * cs.log_term / denom) +
               14.0 * cs.log_term / (3.0 * denom);
      }
    }
  return cs;
}

TransitionIntervals ConfidenceSet::intervals() const {
  const auto& shape = p_bar.shape();
  TransitionIntervals out{TripleTable<RadiusTag>(shape, 0.0),
                          TripleTable<RadiusTag>(shape, 1.0)};
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      if (counts.N(s, a) == 0) continue;
      const auto p = p_bar.row(s, a);
      const auto e = eps.row(s, a);
      auto lo = out.lower.row(s, a);
      auto hi = out.upper.row(s, a);
      for (std::size_t j = 0; j < p.size(); ++j) {
        lo[j] = std::clamp(p[j] - e[j], 0.0, 1.0);
        hi[j] = std::clamp(p[j] + e[j], 0.0, 1.0);
      }
    }
  return out;
}

bool ConfidenceSet::contains(const LayeredMdp& mdp) const {
  const auto& shape = p_bar.shape();
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      if (counts.N(s, a) == 0) continue;
      const auto truth = mdp.transition(s, a);
      const auto p = p_bar.row(s, a);
      const auto e = eps.row(s, a);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (std::abs(truth[j] - p[j]) > e[j]) return false;
    }
  return true;
}

ConfidenceSet ConfidenceSet::vacuous(const LayerShape& shape, double delta) {
  ConfidenceSet cs;
  cs.delta = delta;
  cs.counts = Counts(shape);
  cs.p_bar = TransitionTable(shape, 0.0);
  cs.eps = TripleTable<RadiusTag>(shape, 1.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a)
      for (double& p : cs.p_bar.row(s, a))
        p = 1.0 / static_cast<double>(shape.row_length(s));
  return cs;
}

namespace {

/// max over p in {lower <= p <= upper, sum p = 1} of <p, value>.
double best_fill(std::span<const double> lower, std::span<const double> upper,
                 std::span<const double> value, std::vector<std::size_t>& order) {
  double total = 0.0;
  double remaining = 1.0;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    total += lower[j] * value[j];
    remaining -= lower[j];
  }
  order.resize(value.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return value[x] > value[y]; });
  for (std::size_t j : order) {
    if (remaining <= 0.0) break;
    const double add = std::min(upper[j] - lower[j], remaining);
    total += add * value[j];
    remaining -= add;
  }
  return total;
}

}  // namespace

PairTable<OccupancyTag> upper_occupancy(const TransitionIntervals& intervals,
                                        double gamma) {
  const auto& shape = intervals.lower.shape();
  PairTable<OccupancyTag> out(shape, 0.0);
  std::vector<double> value(shape.num_states(), 0.0);
  std::vector<std::size_t> order;
  for (std::size_t target = 0; target < shape.num_decision_states(); ++target) {
    const std::size_t k = shape.layer_of(target);
    double reach = 1.0;
    if (k > 0) {
      std::fill(value.begin(), value.end(), 0.0);
      value[target] = 1.0;
      for (std::size_t h = k; h-- > 0;) {
        const std::size_t next_begin = shape.layer_begin(h + 1);
        for (std::size_t s = shape.layer_begin(h); s < shape.layer_end(h); ++s) {
          double best = 0.0;
          for (std::size_t a = 0; a < shape.num_actions(); ++a)
            best = std::max(best, best_fill(intervals.lower.row(s, a),
                                            intervals.upper.row(s, a),
                                            {value.data() + next_begin,
                                             shape.row_length(s)},
                                            order));
          value[s] = best;
        }
      }
      reach = std::clamp(value[shape.initial_state()], 0.0, 1.0);
    }
    for (double& x : out.row(target)) x = reach + gamma;
  }
  return out;
}

PairTable<OccupancyTag> upper_occupancy(const ConfidenceSet& cset, double gamma) {
  return upper_occupancy(cset.intervals(), gamma);
}

SeedsUtParams seedsut_params(std::int64_t T, std::size_t H, std::size_t S,
                             std::size_t A, double beta, double delta,
                             double c_eta, double c_tau, double c_gamma) {
  if (T < 1 || H == 0 || S == 0 || A == 0 || !(beta > 0.0))
    throw std::invalid_argument("seedsut_params: inputs must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("seedsut_params: delta must lie in (0, 1)");
  const double t = static_cast<double>(T);
  const double h = static_cast<double>(H);
  const double sa = static_cast<double>(S) * static_cast<double>(A);
  SeedsUtParams p;
  p.beta = beta;
  p.delta = delta;
  p.c_eta = c_eta;
  p.c_tau = c_tau;
  p.c_gamma = c_gamma;
  p.eta = c_eta * std::cbrt(h / (beta * sa)) * std::pow(t, -2.0 / 3.0);
  const double tau =
      c_tau * std::cbrt(beta * beta / (h * h * sa)) * std::cbrt(t);
  p.tau = std::max<std::int64_t>(1, std::llround(tau));
  p.gamma = c_gamma * std::cbrt(beta * h * h / (sa * sa)) / std::sqrt(t);
  return p;
}

SeedsUtState seeds_ut_initial_state(const LayerShape& shape, double delta,
                                    RngStream& rng) {
  SeedsUtState state;
  state.q3_hat = TripleOccupancy(shape, 0.0);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    const std::size_t h = shape.layer_of(s);
    const double w = 1.0 / static_cast<double>(shape.layer_size(h + 1) *
                                               shape.layer_size(h) *
                                               shape.num_actions());
    for (std::size_t a = 0; a < shape.num_actions(); ++a)
      for (double& x : state.q3_hat.row(s, a)) x = w;
  }
  state.buffer = VisitBuffer(shape);
  state.counts = Counts(shape);
  state.cset = ConfidenceSet::vacuous(shape, delta);
  state.upper_q = upper_occupancy(state.cset.intervals());
  state.policy = policy_from_occupancy(marginalize(state.q3_hat), rng);
  return state;
}

LossEstimate estimate_loss_ut(const SeedsUtState& state, double gamma) {
  const auto& upper = state.upper_q;
  LossEstimate lhat(upper.num_states(), upper.num_actions(), 0.0);
  for (std::size_t s = 0; s < upper.num_states(); ++s)
    for (std::size_t a = 0; a < upper.num_actions(); ++a) {
      if (state.buffer.visits(s, a).empty()) continue;
      lhat(s, a) = state.buffer.loss_sum(s, a) / (upper(s, a) + gamma);
    }
  return lhat;
}

SeedsUtState seeds_ut_update(SeedsUtState state, const LossEstimate& lhat,
                             const SeedsUtParams& params, std::int64_t T,
                             RngStream& rng, const SeedsUtOptions& options) {
  state.counts = update_counts(std::move(state.counts), state.batch);
  state.cset = build_confidence_set(state.counts, T, params.delta,
                                    options.radius_mode);
  const auto intervals = state.cset.intervals();
  auto projected = project_confidence(
      multiplicative_update(state.q3_hat, lhat, params.eta), intervals,
      options.projection, options.kl_coordinates);
  state.q3_hat = std::move(projected.q3);
  state.last_projection = projected.report;
  state.upper_q = upper_occupancy(intervals);
  state.policy = policy_from_occupancy(marginalize(state.q3_hat), rng);
  ++state.u;
  state.buffer.clear();
  state.batch.clear();
  return state;
}

ExperimentRecord run_seeds_ut(const LayeredMdp& mdp,
                              std::span<const LossFunction> losses,
                              const SeedsUtParams& params, std::int64_t T,
                              std::uint64_t seed, const SeedsUtOptions& options,
                              const SeedsUtObserver& observer) {
  if (T < 1 || static_cast<std::int64_t>(losses.size()) < T)
    throw std::invalid_argument("run_seeds_ut: need T >= 1 and T loss functions");
  if (params.tau < 1 || !(params.eta > 0.0) || !(params.gamma > 0.0))
    throw std::invalid_argument("run_seeds_ut: need tau >= 1, eta > 0, gamma > 0");

  ExperimentRecord record;
  record.algorithm = "seeds_ut";
  record.horizon_T = T;
  record.tau = params.tau;
  record.eta = params.eta;
  record.gamma = params.gamma;
  record.beta = params.beta;
  record.rows.reserve(static_cast<std::size_t>(T));

  RngStream rng = learner_stream(seed);
  SeedsUtState state = seeds_ut_initial_state(mdp.shape(), params.delta, rng);
  const std::int64_t num_blocks = (T + params.tau - 1) / params.tau;
  for (std::int64_t u = 1; u <= num_blocks; ++u) {
    const std::int64_t t0 = (u - 1) * params.tau + 1;
    const std::int64_t t1 = std::min(u * params.tau, T);
    detail::play_super_episode(mdp, losses, state.policy, u, t0, t1, seed,
                               record, state.buffer, &state.batch);
    if (u == num_blocks) break;
    const auto lhat = estimate_loss_ut(state, params.gamma);
    state = seeds_ut_update(std::move(state), lhat, params, T, rng, options);
    record.projections.add(state.last_projection);
    if (observer) observer(state);
  }
  return record;
}

}  // namespace seeds
