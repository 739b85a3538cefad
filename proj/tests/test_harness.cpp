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

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "oracle.hpp"
#include "seeds/adversary.hpp"
#include "seeds/harness.hpp"
#include "seeds/io.hpp"
#include "seeds/occupancy.hpp"

namespace seeds {
namespace {

namespace fs = std::filesystem;
using testing::random_instance;
using testing::random_loss;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() /
                   ("seeds_mdp_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

struct CliResult {
  int status = 0;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SEEDS_MDP_CLI + "\" " + args + " 2>&1";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.output += buf.data();
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string expect_config_error(const std::string& text, const fs::path& base = {}) {
  try {
    parse_config(text, base);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected ConfigError for " << text;
  return {};
}

constexpr const char* kSmallConfig = R"({
  "mdp": {"generator": "lower_bound", "S": 4, "H": 3, "A": 2},
  "adversary": {"kind": "worst_case_swap", "period": 20},
  "algorithm": "seeds",
  "T": 300,
  "replications": 3,
  "base_seed": 5
})";

ExperimentRecord fixed_record(const std::vector<DeterministicPolicy>& per_episode) {
  ExperimentRecord record;
  record.horizon_T = static_cast<std::int64_t>(per_episode.size());
  record.tau = 1;
  for (std::size_t t = 0; t < per_episode.size(); ++t) {
    EpisodeRow row;
    row.t = static_cast<std::int64_t>(t) + 1;
    row.u = row.t;
    row.policy_hash = per_episode[t].hash();
    row.switched = t > 0 && !(per_episode[t] == per_episode[t - 1]);
    record.rows.push_back(row);
    record.policies.push_back(per_episode[t]);
  }
  return record;
}

TEST(ParseConfig, ReadsFieldsAndDefaults) {
  const auto c = parse_config(kSmallConfig);
  EXPECT_EQ(c.T, 300);
  EXPECT_EQ(c.replications, 3);
  EXPECT_EQ(c.base_seed, 5u);
  EXPECT_EQ(c.algorithm, Algorithm::kSeeds);
  EXPECT_EQ(c.adversary.kind, AdversaryKind::kWorstCaseSwap);
  EXPECT_EQ(c.adversary.period, 20);
  EXPECT_EQ(c.adversary.seed, 5u);
  EXPECT_EQ(c.mdp, lower_bound_mdp(4, 3, 2));
  EXPECT_EQ(c.beta, 1.0);
  EXPECT_EQ(c.kl_coordinates, KlCoordinates::kTriple);
  EXPECT_EQ(c.radius_mode, RadiusMode::kConditional);
  EXPECT_FALSE(c.tau.has_value());
}

TEST(ParseConfig, InlineFileAndRandomMdps) {
  const auto mdp = random_instance({1, 2, 1}, 2, 1);
  const auto dir = scratch_dir("mdp_file");
  write_text_file(dir / "sub" / "m.json", mdp_to_json(mdp));
  const std::string base = R"("adversary": {"kind": "stochastic"}, "T": 10)";
  EXPECT_EQ(parse_config(R"({"mdp": {"inline": )" + mdp_to_json(mdp) + "}, " + base + "}").mdp,
            mdp);
  EXPECT_EQ(parse_config(R"({"mdp": {"file": "sub/m.json"}, )" + base + "}", dir).mdp, mdp);
  const auto generated = parse_config(
      R"({"mdp": {"generator": "random", "layer_sizes": [1, 3, 1], "A": 2, "seed": 4}, )" +
      base + "}");
  EXPECT_EQ(generated.mdp, random_mdp({1, 3, 1}, 2, 4));
  fs::remove_all(dir);
}

TEST(ParseConfig, ErrorsNameTheField) {
  const std::string mdp = R"("mdp": {"generator": "lower_bound", "S": 4, "H": 3, "A": 2})";
  const std::string adv = R"("adversary": {"kind": "stochastic"})";
  EXPECT_NE(expect_config_error("{" + mdp + ", " + adv + "}").find("'T'"), std::string::npos);
  EXPECT_NE(expect_config_error("{" + mdp + ", " + adv + R"(, "T": 10, "colour": 1})")
                .find("colour"),
            std::string::npos);
  EXPECT_NE(expect_config_error("{" + mdp + R"(, "adversary": {"kind": "greedy"}, "T": 10})")
                .find("adversary.kind"),
            std::string::npos);
  EXPECT_NE(expect_config_error("{" + mdp + ", " + adv + R"(, "T": 10, "delta": 1.5})")
                .find("'delta'"),
            std::string::npos);
  EXPECT_NE(expect_config_error("{" + mdp + ", " + adv + R"(, "T": -3})").find("'T'"),
            std::string::npos);
  EXPECT_NE(expect_config_error("{" + mdp + ", " + adv + R"(, "T": 10, "algorithm": "ucb"})")
                .find("'algorithm'"),
            std::string::npos);
  EXPECT_NE(expect_config_error(
                R"({"mdp": {"generator": "lower_bound", "S": 5, "H": 3, "A": 2}, )" + adv +
                R"(, "T": 10})")
                .find("divisible"),
            std::string::npos);
  EXPECT_NE(expect_config_error(R"({"mdp": {"file": "missing.json"}, )" + adv + R"(, "T": 10})")
                .find("missing.json"),
            std::string::npos);
}

TEST(ParseConfig, LossTableErrorsNameTheEntry) {
  const std::string text = R"({
    "mdp": {"generator": "lower_bound", "S": 4, "H": 3, "A": 2},
    "adversary": {"kind": "stochastic", "means": [[[0.1, 0.2]], [[0.3, 0.4]], [[0.5, 7]]]},
    "T": 10})";
  const auto what = expect_config_error(text);
  EXPECT_NE(what.find("adversary.means[2][0][1]"), std::string::npos) << what;
}

TEST(ParseConfig, MalformedJsonCarriesLocation) {
  const auto what = expect_config_error("{\n  \"T\": 10,\n  \"mdp\": [\n");
  EXPECT_NE(what.find("line"), std::string::npos) << what;
}

TEST(ResolveParams, PerAlgorithm) {
  auto c = parse_config(kSmallConfig);
  const auto seeds = resolve_params(c);
  const auto expected = seeds_params(300, 3, 4, 2, 1.0);
  EXPECT_EQ(seeds.tau, expected.tau);
  EXPECT_DOUBLE_EQ(seeds.eta, expected.eta);

  c.algorithm = Algorithm::kOrepsBaseline;
  EXPECT_EQ(resolve_params(c).tau, 1);
  EXPECT_NEAR(resolve_params(c).eta, std::sqrt(2.0 * std::log(8.0) / (300.0 * 8.0)), 1e-15);

  c.algorithm = Algorithm::kSeedsUt;
  const auto ut = seedsut_params(300, 3, 4, 2, 1.0, 0.1);
  EXPECT_EQ(resolve_params(c).tau, ut.tau);
  EXPECT_DOUBLE_EQ(resolve_params(c).gamma, ut.gamma);

  c.algorithm = Algorithm::kFixedUniform;
  EXPECT_EQ(resolve_params(c).tau, 300);

  c.algorithm = Algorithm::kSeeds;
  c.tau = 17;
  c.eta = 0.25;
  EXPECT_EQ(resolve_params(c).tau, 17);
  EXPECT_EQ(resolve_params(c).eta, 0.25);
}

TEST(ComputeRegret, BestFixedPolicyHasZeroRegret) {
  const auto mdp = random_instance({1, 2, 2, 1}, 2, 3);
  std::vector<LossFunction> losses;
  for (int t = 0; t < 10; ++t) losses.push_back(random_loss(mdp.shape(), 100 + t));
  LossFunction aggregate(mdp.shape(), 0.0);
  for (const auto& l : losses)
    for (std::size_t i = 0; i < l.size(); ++i) aggregate.values()[i] += l.values()[i];
  const auto best = best_fixed_occupancy(mdp, aggregate);
  const auto r = compute_regret(
      fixed_record(std::vector<DeterministicPolicy>(10, best.policy)), mdp, losses, 2.0);
  EXPECT_NEAR(r.loss_regret, 0.0, 1e-12);
  EXPECT_EQ(r.switch_count, 0);
  EXPECT_EQ(r.switching_cost, 0.0);
}

TEST(ComputeRegret, AlternatingPoliciesPayEverySwitch) {
  const auto mdp = random_instance({1, 2, 1}, 2, 4);
  const std::vector<LossFunction> losses(10, LossFunction(mdp.shape(), 0.3));
  std::vector<DeterministicPolicy> seq;
  for (int t = 0; t < 10; ++t) seq.push_back(DeterministicPolicy({std::size_t(t % 2), 0, 0}));
  const auto r = compute_regret(fixed_record(seq), mdp, losses, 1.5);
  EXPECT_EQ(r.switch_count, 9);
  EXPECT_DOUBLE_EQ(r.switching_cost, 9 * 1.5);
  EXPECT_NEAR(r.total, r.loss_regret + 13.5, 1e-12);
}

TEST(ComputeRegret, HandComputedBandit) {
  const auto mdp = LayeredMdp::from_nested({{{{1.0}, {1.0}}}}, 2);
  const std::array<double, 10> arm0{0.9, 0.1, 0.5, 0.5, 0.2, 0.8, 0.4, 0.4, 0.6, 0.3};
  const std::array<double, 10> arm1{0.2, 0.7, 0.5, 0.1, 0.9, 0.3, 0.6, 0.2, 0.1, 0.4};
  const std::array<std::size_t, 10> chosen{0, 1, 1, 0, 0, 1, 1, 1, 0, 0};
  std::vector<LossFunction> losses;
  std::vector<DeterministicPolicy> seq;
  double learner = 0.0, total0 = 0.0, total1 = 0.0;
  for (std::size_t t = 0; t < 10; ++t) {
    LossFunction l(mdp.shape(), 0.0);
    l(0, 0) = arm0[t];
    l(0, 1) = arm1[t];
    losses.push_back(l);
    seq.push_back(DeterministicPolicy({chosen[t]}));
    learner += chosen[t] == 0 ? arm0[t] : arm1[t];
    total0 += arm0[t];
    total1 += arm1[t];
  }
  const auto r = compute_regret(fixed_record(seq), mdp, losses, 1.0);
  EXPECT_NEAR(r.learner_loss, learner, 1e-12);
  EXPECT_NEAR(r.comparator_loss, std::min(total0, total1), 1e-12);
  EXPECT_NEAR(r.loss_regret, learner - std::min(total0, total1), 1e-12);
  EXPECT_EQ(r.switch_count, 4);
}

TEST(ComputeRegret, SinglePolicyRecordsNeverGoNegative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mdp = random_instance({1, 3, 2, 1}, 2, 200 + seed);
    std::vector<LossFunction> losses;
    for (int t = 0; t < 30; ++t) losses.push_back(random_loss(mdp.shape(), seed * 1000 + t));
    for (const auto& pi : enumerate_policies(mdp.shape())) {
      const auto r = compute_regret(fixed_record(std::vector(30, pi)), mdp, losses, 1.0);
      ASSERT_GE(r.loss_regret, -1e-9);
    }
  }
}

TEST(ComputeRegret, RejectsShortOrIncompleteInput) {
  const auto mdp = random_instance({1, 2, 1}, 2, 5);
  const auto record = fixed_record(std::vector(5, DeterministicPolicy({0, 0, 0})));
  const std::vector<LossFunction> short_losses(4, LossFunction(mdp.shape(), 0.0));
  EXPECT_THROW(compute_regret(record, mdp, short_losses, 1.0), std::invalid_argument);
  auto truncated = record;
  truncated.rows.pop_back();
  const std::vector<LossFunction> losses(5, LossFunction(mdp.shape(), 0.0));
  EXPECT_THROW(compute_regret(truncated, mdp, losses, 1.0), std::invalid_argument);
}

TEST(RunExperiment, RegretMatchesRecordsAndCsvRowsEqualT) {
  const auto c = parse_config(kSmallConfig);
  const auto result = run_experiment(c);
  ASSERT_EQ(result.records.size(), 3u);
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& rec = result.records[r];
    EXPECT_EQ(static_cast<std::int64_t>(rec.rows.size()), c.T);
    EXPECT_EQ(result.regrets[r].switch_count, rec.switch_count());
    EXPECT_LE(rec.switch_count(), rec.switch_bound());
    const auto csv = records_csv(rec);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), c.T + 1);
    EXPECT_EQ(csv.rfind("t,u,policy_hash,expected_loss,realized_loss,switched\n", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
  }
  std::vector<double> totals;
  for (const auto& g : result.regrets) totals.push_back(g.total);
  EXPECT_DOUBLE_EQ(result.total.mean, mean_and_stderr(totals).mean);
}

TEST(RunExperiment, ByteIdenticalOutputsAcrossRunsAndThreadCounts) {
  auto c = parse_config(kSmallConfig);
  c.replications = 2;
  const auto a = scratch_dir("det_a");
  const auto b = scratch_dir("det_b");
  c.output = a;
  run_experiment(c);
  ::setenv("SEEDS_MDP_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  c.output = b;
  run_experiment(c);
  ::unsetenv("SEEDS_MDP_THREADS");
  for (const char* name : {"run_000.csv", "run_001.csv", "summary.json"})
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  EXPECT_NE(slurp(a / "run_000.csv"), slurp(a / "run_001.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(RunExperiment, SummaryJsonSchema) {
  auto c = parse_config(kSmallConfig);
  const auto result = run_experiment(c);
  const auto doc = nlohmann::json::parse(summary_json(c, result));
  EXPECT_EQ(doc.at("algorithm"), "seeds");
  EXPECT_EQ(doc.at("adversary"), "worst_case_swap");
  EXPECT_EQ(doc.at("T"), 300);
  EXPECT_EQ(doc.at("switch_bound"), (300 + result.params.tau - 1) / result.params.tau);
  EXPECT_DOUBLE_EQ(doc.at("total_regret").at("mean").get<double>(), result.total.mean);
  EXPECT_DOUBLE_EQ(doc.at("total_regret").at("stderr").get<double>(), result.total.sem);
  EXPECT_EQ(doc.at("runs").size(), 3u);
  EXPECT_EQ(doc.at("runs")[1].at("seed"), 6);
  EXPECT_EQ(doc.at("runs")[1].at("csv"), "run_001.csv");
  EXPECT_TRUE(doc.at("projections").contains("max_residual"));
}

TEST(RunExperiment, FixedUniformOnSymmetricLossesHasNoRegret) {
  // Transitions ignore the action and losses only vary by state, so every
  // deterministic policy has the same loss.
  auto c = parse_config(R"({
    "mdp": {"generator": "lower_bound", "S": 6, "H": 3, "A": 3},
    "adversary": {"kind": "alternating", "period": 7,
                  "table0": [[[0.4, 0.4, 0.4]], [[0.1, 0.1, 0.1], [0.7, 0.7, 0.7]],
                             [[0.9, 0.9, 0.9], [0.5, 0.5, 0.5]]],
                  "table1": [[[0.2, 0.2, 0.2]], [[0.3, 0.3, 0.3], [0.0, 0.0, 0.0]],
                             [[1.0, 1.0, 1.0], [0.6, 0.6, 0.6]]]},
    "algorithm": "fixed_uniform", "T": 200, "replications": 10})");
  const auto result = run_experiment(c);
  EXPECT_NEAR(result.loss_regret.mean, 0.0, std::max(1e-9, 3 * result.loss_regret.sem));
  EXPECT_EQ(result.switch_count.mean, 0.0);
  for (const auto& rec : result.records) EXPECT_EQ(rec.num_super_episodes(), 1);
}

TEST(RunExperiment, OrepsBaselineSwitchesAlmostEveryEpisode) {
  auto c = parse_config(kSmallConfig);
  c.algorithm = Algorithm::kOrepsBaseline;
  c.T = 2000;
  const auto result = run_experiment(c);
  // Three decision states with near-uniform probabilities repeat a policy
  // with chance about 1/8 per episode.
  EXPECT_GT(result.switch_count.mean, 0.8 * (c.T - 1));
  for (const auto& rec : result.records) EXPECT_LE(rec.switch_count(), c.T - 1);
}

TEST(RunExperiment, SeedsUtRuns) {
  auto c = parse_config(kSmallConfig);
  c.algorithm = Algorithm::kSeedsUt;
  c.kl_coordinates = KlCoordinates::kPair;
  const auto result = run_experiment(c);
  for (const auto& rec : result.records) {
    EXPECT_EQ(rec.algorithm, "seeds_ut");
    EXPECT_LE(rec.switch_count(), rec.switch_bound());
  }
  EXPECT_LT(result.projections.max_residual, 1e-8);
}

TEST(MeanAndStderr, Basics) {
  EXPECT_EQ(mean_and_stderr(std::vector<double>{}).mean, 0.0);
  const auto single = mean_and_stderr(std::vector<double>{4.0});
  EXPECT_EQ(single.mean, 4.0);
  EXPECT_EQ(single.sem, 0.0);
  const auto e = mean_and_stderr(std::vector<double>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.sem, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
}

TEST(FitLogLog, RecoversExponents) {
  const std::vector<double> T{1000, 2000, 4000, 8000, 16000, 32000};
  std::vector<double> two_thirds, linear;
  for (double t : T) {
    two_thirds.push_back(3.7 * std::pow(t, 2.0 / 3.0));
    linear.push_back(0.2 * t);
  }
  const auto fit = fit_loglog(T, two_thirds);
  EXPECT_NEAR(fit.slope, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(fit.intercept, std::log(3.7), 1e-9);
  EXPECT_NEAR(fit_loglog(T, linear).slope, 1.0, 1e-9);
  EXPECT_THROW(fit_loglog(std::vector<double>{1.0}, std::vector<double>{1.0}),
               std::invalid_argument);
  EXPECT_THROW(fit_loglog(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, -1.0}),
               std::invalid_argument);
}

TEST(SweepAndFit, RequiresIncreasingHorizons) {
  const auto c = parse_config(kSmallConfig);
  EXPECT_THROW(sweep_and_fit(c, std::vector<std::int64_t>{100, 200}), std::invalid_argument);
  EXPECT_THROW(sweep_and_fit(c, std::vector<std::int64_t>{100, 300, 200}),
               std::invalid_argument);
}

TEST(SweepAndFit, RowsAgreeWithSingleRuns) {
  auto c = parse_config(kSmallConfig);
  const std::vector<std::int64_t> Ts{200, 400, 800};
  const auto dir = scratch_dir("sweep");
  c.output = dir;
  const auto sweep = sweep_and_fit(c, Ts);
  ASSERT_EQ(sweep.rows.size(), 3u);
  auto single = c;
  single.T = 400;
  single.output.clear();
  const auto r = run_experiment(single);
  EXPECT_EQ(sweep.rows[1].total.mean, r.total.mean);
  EXPECT_EQ(sweep.rows[1].params.tau, r.params.tau);
  EXPECT_TRUE(fs::exists(dir / "T_400" / "run_000.csv"));
  EXPECT_TRUE(fs::exists(dir / "fit.json"));
  const auto csv = slurp(dir / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  std::vector<double> xs, ys;
  for (const auto& row : sweep.rows) {
    xs.push_back(static_cast<double>(row.T));
    ys.push_back(row.total.mean);
  }
  EXPECT_DOUBLE_EQ(sweep.fit.slope, fit_loglog(xs, ys).slope);
  fs::remove_all(dir);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456.789, 0.0, -2.5})
    EXPECT_EQ(std::stod(format_double(x)), x);
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Io, PairTableLayout) {
  LayerShape shape({1, 2, 1}, 2);
  LossFunction l(shape, 0.0);
  l(2, 1) = 0.25;
  const auto doc = nlohmann::json::parse(pair_table_to_json(shape, l));
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1][1][1].get<double>(), 0.25);
  EXPECT_EQ(loss_table_from_json(pair_table_to_json(shape, l), shape, "x"), l);
}

TEST(Io, TripleTableLayout) {
  const auto mdp = random_instance({1, 2, 3, 1}, 2, 6);
  const auto q3 = triple_occupancy_of_policy(mdp, uniform_policy(mdp.shape()));
  const auto doc = nlohmann::json::parse(triple_table_to_json(q3));
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[1][1][0].size(), 3u);
  EXPECT_EQ(doc[1][1][0][2].get<double>(), q3(5, 2, 0));
}

TEST(Io, FileErrorsNamePath) {
  try {
    read_text_file("/nonexistent/dir/config.json");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/config.json"), std::string::npos);
  }
}

TEST(Cli, ValidatePasses) {
  const auto r = run_cli("validate");
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
  EXPECT_NE(r.output.find("PASS"), std::string::npos);
}

TEST(Cli, MalformedConfigReportsLocation) {
  const auto dir = scratch_dir("cli_bad");
  write_text_file(dir / "bad.json", "{\n  \"T\": 10,\n  \"mdp\": \n");
  const auto r = run_cli("run " + (dir / "bad.json").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("line"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("bad.json"), std::string::npos) << r.output;
  fs::remove_all(dir);
}

TEST(Cli, InvalidFieldIsNamed) {
  const auto dir = scratch_dir("cli_field");
  write_text_file(dir / "c.json", R"({"mdp": {"generator": "lower_bound", "S": 4, "H": 3, "A": 2},
    "adversary": {"kind": "worst_case_swap"}, "T": 10, "replications": 0})");
  const auto r = run_cli("run " + (dir / "c.json").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("replications"), std::string::npos) << r.output;
  fs::remove_all(dir);
}

TEST(Cli, LowerBoundInstance) {
  const auto dir = scratch_dir("cli_lb");
  const auto r = run_cli("lower-bound-instance --S 6 --H 3 --A 2 --out " +
                         (dir / "lb.json").string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(mdp_from_json(slurp(dir / "lb.json")), lower_bound_mdp(6, 3, 2));
  const auto bad = run_cli("lower-bound-instance --S 5 --H 3 --A 2");
  EXPECT_NE(bad.status, 0);
  EXPECT_NE(bad.output.find("divisible"), std::string::npos) << bad.output;
  fs::remove_all(dir);
}

TEST(Cli, RunAndSweepAgree) {
  const auto dir = scratch_dir("cli_run");
  write_text_file(dir / "c.json", kSmallConfig);
  const auto cfg = (dir / "c.json").string();
  const auto run = run_cli("run " + cfg + " --seed 11 --replications 2 --beta 2 --out " +
                           (dir / "run").string());
  ASSERT_EQ(run.status, 0) << run.output;
  const auto sweep = run_cli("sweep " + cfg + " --T 150,300,600 --seed 11 --replications 2 "
                             "--beta 2 --out " + (dir / "sweep").string());
  ASSERT_EQ(sweep.status, 0) << sweep.output;
  EXPECT_EQ(slurp(dir / "run" / "run_000.csv"), slurp(dir / "sweep" / "T_300" / "run_000.csv"));
  EXPECT_EQ(slurp(dir / "run" / "summary.json"),
            slurp(dir / "sweep" / "T_300" / "summary.json"));
  const auto summary = nlohmann::json::parse(slurp(dir / "run" / "summary.json"));
  EXPECT_EQ(summary.at("base_seed"), 11);
  EXPECT_EQ(summary.at("beta"), 2.0);
  EXPECT_NE(sweep.output.find("slope"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, AlgorithmOverride) {
  const auto dir = scratch_dir("cli_algo");
  write_text_file(dir / "c.json", kSmallConfig);
  const auto r = run_cli("run " + (dir / "c.json").string() +
                         " --algo oreps_baseline --replications 1 --out " +
                         (dir / "o").string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "o" / "summary.json")).at("tau"), 1);
  const auto bad = run_cli("run " + (dir / "c.json").string() + " --algo magic");
  EXPECT_NE(bad.status, 0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace seeds
