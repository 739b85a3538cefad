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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seeds/adversary.hpp"
#include "seeds/mdp.hpp"
#include "seeds/omd.hpp"
#include "seeds/record.hpp"
#include "seeds/seeds_ut.hpp"

namespace seeds {

enum class Algorithm { kSeeds, kSeedsUt, kOrepsBaseline, kFixedUniform };

std::string_view to_string(Algorithm algorithm);
/// Throws std::invalid_argument for unknown names.
Algorithm algorithm_from_string(std::string_view name);

struct ExperimentConfig {
  LayeredMdp mdp;
  AdversarySpec adversary;
  Algorithm algorithm = Algorithm::kSeeds;
  std::int64_t T = 1000;
  double beta = 1.0;
  double delta = 0.1;
  double c_eta = 1.0;
  double c_tau = 1.0;
  double c_gamma = 1.0;
  std::int64_t replications = 1;
  std::uint64_t base_seed = 0;
  std::filesystem::path output;

  // Overrides of the derived learner parameters.
  std::optional<std::int64_t> tau;
  std::optional<double> eta;
  std::optional<double> gamma;
  KlCoordinates kl_coordinates = KlCoordinates::kTriple;
  RadiusMode radius_mode = RadiusMode::kConditional;
  bool lazy_resample = false;
};

/**
 * Parses an experiment document. Relative "mdp.file" paths resolve against
 * `base_dir`. Throws ConfigError naming the offending field, or carrying the
 * parse location for malformed JSON.
 */
ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Learner parameters that `config` resolves to at its T.
struct ResolvedParams {
  std::int64_t tau = 1;
  double eta = 0.0;
  double gamma = 0.0;
};
ResolvedParams resolve_params(const ExperimentConfig& config);

struct Regret {
  double learner_loss = 0.0;
  double comparator_loss = 0.0;
  double loss_regret = 0.0;
  std::int64_t switch_count = 0;
  double switching_cost = 0.0;
  double total = 0.0;
};

/**
 * Loss regret of the executed policies' expected losses against the best
 * deterministic policy for the aggregate loss, plus beta per policy change
 * between consecutive episodes. Throws std::invalid_argument when fewer than
 * T losses are supplied.
 */
Regret compute_regret(const ExperimentRecord& record, const LayeredMdp& mdp,
                      std::span<const LossFunction> losses, double beta);

/// One replication with learner seed `seed`.
ExperimentRecord run_once(const ExperimentConfig& config,
                          std::span<const LossFunction> losses, std::uint64_t seed);

struct Estimate {
  double mean = 0.0;
  /// Standard error of the mean; 0 for a single sample.
  double sem = 0.0;
};
Estimate mean_and_stderr(std::span<const double> xs);

struct ExperimentResult {
  ResolvedParams params;
  std::vector<ExperimentRecord> records;
  std::vector<Regret> regrets;
  Estimate loss_regret;
  Estimate switching_cost;
  Estimate total;
  Estimate switch_count;
  ProjectionLog projections;
};

/// Worker cap: hardware concurrency, lowered by SEEDS_MDP_THREADS when set.
std::size_t worker_count();

/**
 * Runs `replications` runs with seeds base_seed + r against one loss sequence.
 * When `config.output` is set, writes run_NNN.csv and summary.json there.
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header t,u,policy_hash,expected_loss,realized_loss,switched; LF endings.
std::string records_csv(const ExperimentRecord& record);
std::string summary_json(const ExperimentConfig& config, const ExperimentResult& result);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
/// Least squares of log(y) on log(x). Requires >= 2 points, all positive.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct SweepRow {
  std::int64_t T = 0;
  ResolvedParams params;
  Estimate loss_regret;
  Estimate switching_cost;
  Estimate total;
  Estimate switch_count;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  LinearFit fit;
};

/// Re-derives parameters per T, runs each, fits the total-regret exponent.
/// Requires at least three strictly increasing T values. Per-T outputs go
/// to `config.output`/T_<T> when an output directory is set.
SweepResult sweep_and_fit(const ExperimentConfig& config,
                          std::span<const std::int64_t> T_list);
std::string sweep_csv(const SweepResult& result);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant checks on built-in instances.
std::vector<ValidationCheck> run_validation_suite();

}  // namespace seeds
