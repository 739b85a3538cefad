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

#include "seeds/seeds.hpp"

#include <cmath>
#include <stdexcept>

#include "episode_loop.hpp"
#include "seeds/occupancy.hpp"

namespace seeds {

void ProjectionLog::add(const ProjectionReport& r) {
  ++count;
  max_iterations = std::max(max_iterations, r.iterations);
  max_residual = std::max(max_residual, r.residual);
  max_gap_bound = std::max(max_gap_bound, r.gap_bound);
}

std::int64_t ExperimentRecord::switch_count() const {
  std::int64_t n = 0;
  for (const auto& row : rows) n += row.switched ? 1 : 0;
  return n;
}

SeedsParams seeds_params(std::int64_t T, std::size_t H, std::size_t S,
                         std::size_t A, double beta, double c_eta,
                         double c_tau) {
  if (T < 1 || H == 0 || S == 0 || A == 0 || !(beta > 0.0))
    throw std::invalid_argument("seeds_params: inputs must be positive");
  const double t = static_cast<double>(T);
  const double h = static_cast<double>(H);
  const double sa = static_cast<double>(S) * static_cast<double>(A);
  SeedsParams p;
  p.beta = beta;
  p.c_eta = c_eta;
  p.c_tau = c_tau;
  p.eta = c_eta * std::cbrt(1.0 / beta) * std::cbrt(h * h) * std::cbrt(1.0 / sa) *
          std::pow(t, -2.0 / 3.0);
  const double tau = c_tau * std::cbrt(beta * beta) * std::cbrt(1.0 / (h * sa)) *
                     std::cbrt(t);
  p.tau = std::max<std::int64_t>(1, std::llround(tau));
  return p;
}

void VisitBuffer::record(const Trajectory& trajectory) {
  for (const auto& step : trajectory.steps)
    visits_[step.state * num_actions_ + step.action].push_back(
        {trajectory.episode_index, step.loss});
}

void VisitBuffer::clear() {
  for (auto& v : visits_) v.clear();
}

double VisitBuffer::loss_sum(std::size_t s, std::size_t a) const {
  double sum = 0.0;
  for (const auto& v : visits(s, a)) sum += v.loss;
  return sum;
}

RngStream learner_stream(std::uint64_t seed) { return RngStream(seed).substream(0); }

RngStream episode_stream(std::uint64_t seed, std::int64_t t) {
  return RngStream(seed).substream(1).substream(static_cast<std::uint64_t>(t));
}

SeedsState seeds_initial_state(const LayeredMdp& mdp, RngStream& rng) {
  SeedsState state;
  state.q_hat = occupancy_of_policy(mdp, uniform_policy(mdp.shape()));
  state.policy = policy_from_occupancy(state.q_hat, rng);
  state.buffer = VisitBuffer(mdp.shape());
  return state;
}

LossEstimate estimate_loss_seeds(const SeedsState& state) {
  const auto& q = state.q_hat;
  LossEstimate lhat(q.num_states(), q.num_actions(), 0.0);
  for (std::size_t s = 0; s < q.num_states(); ++s)
    for (std::size_t a = 0; a < q.num_actions(); ++a) {
      if (state.buffer.visits(s, a).empty()) continue;
      if (!(q(s, a) > 0.0))
        throw std::logic_error("visited pair has zero occupancy in q_hat");
      lhat(s, a) = state.buffer.loss_sum(s, a) / q(s, a);
    }
  return lhat;
}

SeedsState seeds_update(SeedsState state, const LossEstimate& lhat,
                        const SeedsParams& params, const LayeredMdp& mdp,
                        RngStream& rng, const SeedsOptions& options) {
  auto projected = project_known(
      multiplicative_update(state.q_hat, lhat, params.eta), mdp,
      options.projection);
  double moved = 0.0;
  for (std::size_t i = 0; i < projected.q.size(); ++i)
    moved += std::abs(projected.q.values()[i] - state.q_hat.values()[i]);
  state.q_hat = std::move(projected.q);
  state.last_projection = projected.report;
  if (!options.lazy_resample || moved > 1e-12)
    state.policy = policy_from_occupancy(state.q_hat, rng);
  ++state.u;
  state.buffer.clear();
  return state;
}

ExperimentRecord run_seeds(const LayeredMdp& mdp,
                           std::span<const LossFunction> losses,
                           const SeedsParams& params, std::int64_t T,
                           std::uint64_t seed, const SeedsOptions& options,
                           const SeedsObserver& observer) {
  if (T < 1 || static_cast<std::int64_t>(losses.size()) < T)
    throw std::invalid_argument("run_seeds: need T >= 1 and T loss functions");
  if (params.tau < 1 || !(params.eta > 0.0))
    throw std::invalid_argument("run_seeds: need tau >= 1 and eta > 0");

  ExperimentRecord record;
  record.algorithm = "seeds";
  record.horizon_T = T;
  record.tau = params.tau;
  record.eta = params.eta;
  record.beta = params.beta;
  record.rows.reserve(static_cast<std::size_t>(T));

  RngStream rng = learner_stream(seed);
  SeedsState state = seeds_initial_state(mdp, rng);
  const std::int64_t num_blocks = (T + params.tau - 1) / params.tau;
  for (std::int64_t u = 1; u <= num_blocks; ++u) {
    const std::int64_t t0 = (u - 1) * params.tau + 1;
    const std::int64_t t1 = std::min(u * params.tau, T);
    detail::play_super_episode(mdp, losses, state.policy, u, t0, t1, seed,
                               record, state.buffer);
    if (u == num_blocks) break;
    const auto lhat = estimate_loss_seeds(state);
    state = seeds_update(std::move(state), lhat, params, mdp, rng, options);
    record.projections.add(state.last_projection);
    if (observer) observer(state);
  }
  return record;
}

namespace detail {

void play_super_episode(const LayeredMdp& mdp,
                        std::span<const LossFunction> losses,
                        const DeterministicPolicy& policy, std::int64_t u,
                        std::int64_t t0, std::int64_t t1, std::uint64_t seed,
                        ExperimentRecord& record, VisitBuffer& buffer,
                        std::vector<Trajectory>* batch) {
  const auto q_exec = occupancy_of_policy(mdp, policy);
  const std::uint64_t hash = policy.hash();
  const bool changed =
      !record.policies.empty() && !(record.policies.back() == policy);
  record.policies.push_back(policy);
  for (std::int64_t t = t0; t <= t1; ++t) {
    const auto& loss = losses[static_cast<std::size_t>(t - 1)];
    RngStream env = episode_stream(seed, t);
    auto trajectory = run_episode(mdp, policy, loss, env, t);
    buffer.record(trajectory);
    EpisodeRow row;
    row.t = t;
    row.u = u;
    row.policy_hash = hash;
    row.expected_loss = expected_episode_loss(q_exec, loss);
    row.realized_loss = trajectory.total_loss();
    row.switched = (t == t0) && changed;
    record.rows.push_back(row);
    if (batch != nullptr) batch->push_back(std::move(trajectory));
  }
}

}  // namespace detail
}  // namespace seeds
