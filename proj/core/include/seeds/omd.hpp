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

#include <stdexcept>
#include <string>
#include <vector>

#include "seeds/mdp.hpp"
#include "seeds/tables.hpp"

namespace seeds {

/// Unnormalized nonnegative weights stored as natural logarithms, laid out
/// like the pair or triple table they were derived from. -inf encodes an
/// exact zero.
struct LogWeights {
  std::vector<double> log_values;

  double value(std::size_t i) const;
  std::vector<double> values() const;
};

LogWeights to_log_weights(std::span<const double> values);

struct ProjectionReport {
  int iterations = 0;
  /// Max absolute violation of normalization, flow and (for confidence
  /// projections) interval constraints of the returned measure.
  double residual = 0.0;
  /// Upper bound on objective suboptimality, from the Lagrange multipliers of
  /// the returned point.
  double gap_bound = 0.0;
};

class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, ProjectionReport report)
      : std::runtime_error(what), report_(report) {}
  const ProjectionReport& report() const { return report_; }

 private:
  ProjectionReport report_;
};

struct ProjectionOptions {
  double tolerance = 1e-9;
  int max_iterations = 10'000;
  /// Returned occupancies are clipped below at this value, then renormalized
  /// per layer.
  double floor = 1e-12;
};

/// Whether the confidence-set objective measures divergence on triple or on
/// pair coordinates.
enum class KlCoordinates { kTriple, kPair };

/// Dual potential: one value per state in layers 1..H-1, ordered by global
/// index. The initial and terminal states are pinned at zero.
struct DualPotential {
  std::vector<double> v;
};

/// q~(s, a) = q(s, a) exp(-eta * lhat(s, a)), in log space.
LogWeights multiplicative_update(const OccupancyMeasure& q_prev,
                                 const LossEstimate& lhat, double eta);
/// q~(s', s, a) = q(s', s, a) exp(-eta * lhat(s, a)), in log space.
LogWeights multiplicative_update(const TripleOccupancy& q_prev,
                                 const LossEstimate& lhat, double eta);

struct KnownProjection {
  OccupancyMeasure q;
  DualPotential potential;
  ProjectionReport report;
};

/**
 * KL projection of pair weights onto C(P).
 *
 * The minimizer has the form q(s,a) ~ q~(s,a) exp(v(s) - sum_s' P(s'|s,a)
 * v(s')) normalized within each layer, with v minimizing the sum over layers
 * of the log normalizers. That convex dual is solved by damped Newton with
 * Armijo backtracking until the flow residual drops below the tolerance.
 * Throws ProjectionError when the iteration cap is reached first.
 */
KnownProjection project_known(const LogWeights& q_tilde, const LayeredMdp& mdp,
                              const ProjectionOptions& options = {});

/// Per-triple bounds on the induced transition: lower(s',s,a) <=
/// q(s',s,a) / q(s,a) <= upper(s',s,a). Entries must lie in [0, 1].
struct TransitionIntervals {
  TripleTable<RadiusTag> lower;
  TripleTable<RadiusTag> upper;
};

struct ConfidenceProjection {
  TripleOccupancy q3;
  ProjectionReport report;
};

/**
 * KL projection of triple weights onto the occupancy measures whose induced
 * transitions lie inside `intervals`.
 *
 * Alternates Bregman projections onto the normalization/flow family (dual
 * Newton, as in project_known) and onto the per-(s, a) interval family
 * (closed form), with Dykstra corrections on the interval family. With
 * KlCoordinates::kPair the divergence is taken on the pair marginals; that
 * variant is solved by alternating minimization over the reference
 * conditional.
 *
 * Throws ProjectionError if some row's intervals admit no distribution or
 * the iteration cap is reached.
 */
ConfidenceProjection project_confidence(
    const LogWeights& q3_tilde, const TransitionIntervals& intervals,
    const ProjectionOptions& options = {},
    KlCoordinates coordinates = KlCoordinates::kTriple);

/// Max violation of q(s',s,a) within [lower, upper] * q(s,a).
double interval_residual(const TripleOccupancy& q3,
                         const TransitionIntervals& intervals);

/// Objective of the KL projection of `log_reference` weights:
/// sum x ln(x / r) - sum x + sum r.
double projection_objective(std::span<const double> x,
                            const LogWeights& log_reference);

}  // namespace seeds
