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

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seeds/adversary.hpp"
#include "seeds/harness.hpp"
#include "seeds/io.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replications;
  std::optional<std::string> out;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<double> c_eta;
  std::optional<double> c_tau;
  std::optional<double> c_gamma;
  std::optional<std::string> algo;

  void attach(CLI::App& app) {
    app.add_option("--seed", seed, "Base seed for replications");
    app.add_option("--replications", replications, "Number of replications")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", out, "Output directory");
    app.add_option("--beta", beta, "Switching cost")->check(CLI::PositiveNumber);
    app.add_option("--delta", delta, "Confidence level")->check(CLI::Range(0.0, 1.0));
    app.add_option("--c-eta", c_eta, "Learning-rate constant")->check(CLI::PositiveNumber);
    app.add_option("--c-tau", c_tau, "Super-episode constant")->check(CLI::PositiveNumber);
    app.add_option("--c-gamma", c_gamma, "Exploration constant")
        ->check(CLI::PositiveNumber);
    app.add_option("--algo", algo, "seeds | seeds_ut | oreps_baseline | fixed_uniform");
  }

  void apply(seeds::ExperimentConfig& c) const {
    if (seed) c.base_seed = *seed;
    if (replications) c.replications = *replications;
    if (out) c.output = *out;
    if (beta) c.beta = *beta;
    if (delta) c.delta = *delta;
    if (c_eta) c.c_eta = *c_eta;
    if (c_tau) c.c_tau = *c_tau;
    if (c_gamma) c.c_gamma = *c_gamma;
    if (algo) c.algorithm = seeds::algorithm_from_string(*algo);
  }
};

std::vector<std::int64_t> parse_t_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad T value '" + item + "'");
    values.push_back(v);
  }
  return values;
}

void print_summary(const seeds::ExperimentConfig& c, const seeds::ExperimentResult& r) {
  std::cout << seeds::to_string(c.algorithm) << " T=" << c.T << " tau=" << r.params.tau
            << " eta=" << r.params.eta << " replications=" << c.replications << "\n"
            << "  loss regret    " << r.loss_regret.mean << " +- " << r.loss_regret.sem << "\n"
            << "  switching cost " << r.switching_cost.mean << " +- " << r.switching_cost.sem
            << "\n"
            << "  total regret   " << r.total.mean << " +- " << r.total.sem << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Episodic adversarial MDP experiments with switching costs"};
  app.require_subcommand(1);

  std::string run_config;
  Overrides run_overrides;
  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("config", run_config, "Experiment JSON")->required();
  run_overrides.attach(*run);

  std::string sweep_config;
  std::string sweep_T;
  Overrides sweep_overrides;
  auto* sweep = app.add_subcommand("sweep", "Sweep T and fit the regret exponent");
  sweep->add_option("config", sweep_config, "Experiment JSON")->required();
  sweep->add_option("--T", sweep_T, "Comma-separated horizons")->required();
  sweep_overrides.attach(*sweep);

  auto* validate = app.add_subcommand("validate", "Invariant checks on built-in instances");

  std::size_t lb_S = 0, lb_H = 0, lb_A = 0;
  std::string lb_out;
  auto* lower = app.add_subcommand("lower-bound-instance", "Emit the bandit-chain MDP");
  lower->add_option("--S", lb_S, "Number of states")->required();
  lower->add_option("--H", lb_H, "Horizon")->required();
  lower->add_option("--A", lb_A, "Number of actions")->required();
  lower->add_option("--out", lb_out, "Output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto config = seeds::load_config(run_config);
      run_overrides.apply(config);
      const auto result = seeds::run_experiment(config);
      print_summary(config, result);
      if (!config.output.empty()) std::cout << "wrote " << config.output.string() << "\n";
    } else if (sweep->parsed()) {
      auto config = seeds::load_config(sweep_config);
      sweep_overrides.apply(config);
      const auto result = seeds::sweep_and_fit(config, parse_t_list(sweep_T));
      std::cout << seeds::sweep_csv(result) << "slope " << result.fit.slope
                << " intercept " << result.fit.intercept << "\n";
    } else if (validate->parsed()) {
      int failed = 0;
      for (const auto& c : seeds::run_validation_suite()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        failed += c.passed ? 0 : 1;
      }
      if (failed > 0) {
        std::cerr << failed << " check(s) failed\n";
        return 1;
      }
    } else if (lower->parsed()) {
      const auto text = seeds::mdp_to_json(seeds::lower_bound_mdp(lb_S, lb_H, lb_A));
      if (lb_out.empty())
        std::cout << text;
      else
        seeds::write_text_file(lb_out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
