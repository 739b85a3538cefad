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

#include "seeds/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "episode_loop.hpp"
#include "json_fields.hpp"
#include "seeds/io.hpp"
#include "seeds/occupancy.hpp"
#include "seeds/seeds.hpp"

namespace seeds {

using detail::as_array;
using detail::as_integer;
using detail::as_number;
using detail::as_positive;
using detail::as_string;
using detail::join_field;
using detail::join_index;
using detail::Json;
using detail::require;

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSeeds: return "seeds";
    case Algorithm::kSeedsUt: return "seeds_ut";
    case Algorithm::kOrepsBaseline: return "oreps_baseline";
    case Algorithm::kFixedUniform: return "fixed_uniform";
  }
  return "unknown";
}

Algorithm algorithm_from_string(std::string_view name) {
  for (auto a : {Algorithm::kSeeds, Algorithm::kSeedsUt, Algorithm::kOrepsBaseline,
                 Algorithm::kFixedUniform})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

namespace {

void reject_unknown_keys(const Json& obj, const std::string& field,
                         std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(field, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    if (!known) throw ConfigError(join_field(field, key), "unknown field");
  }
}

std::vector<std::size_t> size_list(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() < 2)
    throw ConfigError(field, "expected an array of at least two layer sizes");
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < j.size(); ++i)
    sizes.push_back(static_cast<std::size_t>(as_positive(j[i], join_index(field, i))));
  if (sizes.front() != 1 || sizes.back() != 1)
    throw ConfigError(field, "first and last layers must hold one state");
  return sizes;
}

LayeredMdp parse_mdp(const Json& j, const std::filesystem::path& base_dir) {
  const std::string field = "mdp";
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  if (j.contains("inline")) {
    reject_unknown_keys(j, field, {"inline"});
    return detail::mdp_from_json_value(j.at("inline"), "mdp.inline");
  }
  if (j.contains("file")) {
    reject_unknown_keys(j, field, {"file"});
    std::filesystem::path path = as_string(j.at("file"), "mdp.file");
    if (path.is_relative()) path = base_dir / path;
    std::string text;
    try {
      text = read_text_file(path);
    } catch (const std::runtime_error& e) {
      throw ConfigError("mdp.file", e.what());
    }
    try {
      return mdp_from_json(text);
    } catch (const ConfigError& e) {
      throw ConfigError("mdp.file", path.string() + ": " + e.what());
    }
  }
  const std::string generator =
      as_string(require(j, "generator", field), "mdp.generator");
  if (generator == "lower_bound") {
    reject_unknown_keys(j, field, {"generator", "S", "H", "A"});
    const auto S = as_positive(require(j, "S", field), "mdp.S");
    const auto H = as_positive(require(j, "H", field), "mdp.H");
    const auto A = as_positive(require(j, "A", field), "mdp.A");
    try {
      return lower_bound_mdp(static_cast<std::size_t>(S), static_cast<std::size_t>(H),
                             static_cast<std::size_t>(A));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("mdp", e.what());
    }
  }
  if (generator == "random") {
    reject_unknown_keys(j, field, {"generator", "layer_sizes", "A", "seed"});
    const auto sizes = size_list(require(j, "layer_sizes", field), "mdp.layer_sizes");
    const auto A = as_positive(require(j, "A", field), "mdp.A");
    const auto seed = j.contains("seed") ? as_integer(j.at("seed"), "mdp.seed") : 0;
    return random_mdp(sizes, static_cast<std::size_t>(A),
                      static_cast<std::uint64_t>(seed));
  }
  throw ConfigError("mdp.generator", "unknown generator '" + generator +
                                         "' (expected lower_bound or random)");
}

AdversarySpec parse_adversary(const Json& j, const LayerShape& shape,
                              std::uint64_t default_seed) {
  const std::string field = "adversary";
  reject_unknown_keys(j, field,
                      {"kind", "seed", "period", "noise", "means", "table0", "table1"});
  AdversarySpec spec;
  try {
    spec.kind = adversary_kind_from_string(
        as_string(require(j, "kind", field), "adversary.kind"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("adversary.kind", e.what());
  }
  spec.seed = j.contains("seed")
                  ? static_cast<std::uint64_t>(as_integer(j.at("seed"), "adversary.seed"))
                  : default_seed;
  if (j.contains("period")) spec.period = as_positive(j.at("period"), "adversary.period");
  if (j.contains("noise")) {
    spec.noise = as_number(j.at("noise"), "adversary.noise");
    if (spec.noise < 0.0) throw ConfigError("adversary.noise", "must be >= 0");
  }
  for (auto [key, table] : {std::pair{"means", &spec.means},
                            std::pair{"table0", &spec.table0},
                            std::pair{"table1", &spec.table1}})
    if (j.contains(key))
      *table = detail::loss_table_from_json_value(j.at(key), shape,
                                                  join_field(field, key));
  return spec;
}

double positive_number(const Json& j, const std::string& field) {
  const double x = as_number(j, field);
  if (!(x > 0.0)) throw ConfigError(field, "must be > 0");
  return x;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path& base_dir) {
  const Json doc = detail::parse_document(json_text);
  reject_unknown_keys(doc, "",
                      {"mdp", "adversary", "algorithm", "T", "beta", "delta", "c_eta",
                       "c_tau", "c_gamma", "replications", "base_seed", "output", "tau",
                       "eta", "gamma", "kl_coordinates", "radius_mode",
                       "lazy_resample"});
  ExperimentConfig c;
  if (doc.contains("base_seed"))
    c.base_seed = static_cast<std::uint64_t>(as_integer(doc.at("base_seed"), "base_seed"));
  c.mdp = parse_mdp(require(doc, "mdp", ""), base_dir);
  c.adversary = parse_adversary(require(doc, "adversary", ""), c.mdp.shape(), c.base_seed);
  if (doc.contains("algorithm")) {
    try {
      c.algorithm = algorithm_from_string(as_string(doc.at("algorithm"), "algorithm"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("algorithm", e.what());
    }
  }
  c.T = as_positive(require(doc, "T", ""), "T");
  if (doc.contains("beta")) c.beta = positive_number(doc.at("beta"), "beta");
  if (doc.contains("delta")) {
    c.delta = as_number(doc.at("delta"), "delta");
    if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta", "must lie in (0, 1)");
  }
  if (doc.contains("c_eta")) c.c_eta = positive_number(doc.at("c_eta"), "c_eta");
  if (doc.contains("c_tau")) c.c_tau = positive_number(doc.at("c_tau"), "c_tau");
  if (doc.contains("c_gamma")) c.c_gamma = positive_number(doc.at("c_gamma"), "c_gamma");
  if (doc.contains("replications"))
    c.replications = as_positive(doc.at("replications"), "replications");
  if (doc.contains("output")) c.output = as_string(doc.at("output"), "output");
  if (doc.contains("tau")) c.tau = as_positive(doc.at("tau"), "tau");
  if (doc.contains("eta")) c.eta = positive_number(doc.at("eta"), "eta");
  if (doc.contains("gamma")) c.gamma = positive_number(doc.at("gamma"), "gamma");
  if (doc.contains("kl_coordinates")) {
    const auto k = as_string(doc.at("kl_coordinates"), "kl_coordinates");
    if (k == "triple") c.kl_coordinates = KlCoordinates::kTriple;
    else if (k == "pair") c.kl_coordinates = KlCoordinates::kPair;
    else throw ConfigError("kl_coordinates", "expected 'triple' or 'pair'");
  }
  if (doc.contains("radius_mode")) {
    const auto k = as_string(doc.at("radius_mode"), "radius_mode");
    if (k == "conditional") c.radius_mode = RadiusMode::kConditional;
    else if (k == "joint") c.radius_mode = RadiusMode::kJoint;
    else throw ConfigError("radius_mode", "expected 'conditional' or 'joint'");
  }
  if (doc.contains("lazy_resample")) {
    if (!doc.at("lazy_resample").is_boolean())
      throw ConfigError("lazy_resample", "expected a boolean");
    c.lazy_resample = doc.at("lazy_resample").get<bool>();
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_config(text, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), path.string() + ": " + e.what());
  }
}

ResolvedParams resolve_params(const ExperimentConfig& c) {
  const auto& shape = c.mdp.shape();
  const std::size_t H = shape.horizon();
  const std::size_t S = shape.num_states();
  const std::size_t A = shape.num_actions();
  ResolvedParams p;
  switch (c.algorithm) {
    case Algorithm::kSeeds: {
      const auto sp = seeds_params(c.T, H, S, A, c.beta, c.c_eta, c.c_tau);
      p.tau = sp.tau;
      p.eta = sp.eta;
      break;
    }
    case Algorithm::kOrepsBaseline: {
      const double sa = static_cast<double>(S * A);
      p.tau = 1;
      p.eta = c.c_eta * std::sqrt(2.0 * std::log(sa) / (static_cast<double>(c.T) * sa));
      break;
    }
    case Algorithm::kSeedsUt: {
      const auto up =
          seedsut_params(c.T, H, S, A, c.beta, c.delta, c.c_eta, c.c_tau, c.c_gamma);
      p.tau = up.tau;
      p.eta = up.eta;
      p.gamma = up.gamma;
      break;
    }
    case Algorithm::kFixedUniform:
      p.tau = c.T;
      break;
  }
  if (c.algorithm != Algorithm::kFixedUniform) {
    if (c.tau) p.tau = *c.tau;
    if (c.eta) p.eta = *c.eta;
    if (c.gamma && c.algorithm == Algorithm::kSeedsUt) p.gamma = *c.gamma;
  }
  return p;
}

Regret compute_regret(const ExperimentRecord& record, const LayeredMdp& mdp,
                      std::span<const LossFunction> losses, double beta) {
  const std::int64_t T = record.horizon_T;
  if (static_cast<std::int64_t>(losses.size()) < T)
    throw std::invalid_argument("compute_regret: loss sequence shorter than T");
  if (static_cast<std::int64_t>(record.rows.size()) != T)
    throw std::invalid_argument("compute_regret: record is incomplete");

  Regret r;
  LossFunction aggregate(mdp.shape(), 0.0);
  std::int64_t current_u = 0;
  OccupancyMeasure q;
  for (const auto& row : record.rows) {
    if (row.u != current_u) {
      current_u = row.u;
      q = occupancy_of_policy(mdp, record.policies.at(static_cast<std::size_t>(row.u - 1)));
    }
    const auto& loss = losses[static_cast<std::size_t>(row.t - 1)];
    r.learner_loss += expected_episode_loss(q, loss);
    for (std::size_t i = 0; i < aggregate.size(); ++i)
      aggregate.values()[i] += loss.values()[i];
  }
  r.comparator_loss = best_fixed_occupancy(mdp, aggregate).value;
  r.loss_regret = r.learner_loss - r.comparator_loss;
  for (std::size_t i = 1; i < record.policies.size(); ++i)
    if (!(record.policies[i] == record.policies[i - 1])) ++r.switch_count;
  r.switching_cost = beta * static_cast<double>(r.switch_count);
  r.total = r.loss_regret + r.switching_cost;
  return r;
}

ExperimentRecord run_once(const ExperimentConfig& c, std::span<const LossFunction> losses,
                          std::uint64_t seed) {
  const ResolvedParams p = resolve_params(c);
  switch (c.algorithm) {
    case Algorithm::kSeeds:
    case Algorithm::kOrepsBaseline: {
      SeedsParams sp;
      sp.tau = p.tau;
      sp.eta = p.eta;
      sp.beta = c.beta;
      sp.c_eta = c.c_eta;
      sp.c_tau = c.c_tau;
      SeedsOptions options;
      options.lazy_resample = c.lazy_resample;
      auto record = run_seeds(c.mdp, losses, sp, c.T, seed, options);
      record.algorithm = to_string(c.algorithm);
      return record;
    }
    case Algorithm::kSeedsUt: {
      SeedsUtParams up;
      up.tau = p.tau;
      up.eta = p.eta;
      up.gamma = p.gamma;
      up.beta = c.beta;
      up.delta = c.delta;
      up.c_eta = c.c_eta;
      up.c_tau = c.c_tau;
      up.c_gamma = c.c_gamma;
      SeedsUtOptions options;
      options.kl_coordinates = c.kl_coordinates;
      options.radius_mode = c.radius_mode;
      return run_seeds_ut(c.mdp, losses, up, c.T, seed, options);
    }
    case Algorithm::kFixedUniform: {
      ExperimentRecord record;
      record.algorithm = to_string(c.algorithm);
      record.horizon_T = c.T;
      record.tau = c.T;
      record.beta = c.beta;
      record.rows.reserve(static_cast<std::size_t>(c.T));
      RngStream rng = learner_stream(seed);
      const auto policy = policy_from_occupancy(
          occupancy_of_policy(c.mdp, uniform_policy(c.mdp.shape())), rng);
      VisitBuffer buffer(c.mdp.shape());
      detail::play_super_episode(c.mdp, losses, policy, 1, 1, c.T, seed, record, buffer);
      return record;
    }
  }
  throw std::logic_error("unhandled algorithm");
}

Estimate mean_and_stderr(std::span<const double> xs) {
  Estimate e;
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    const double n = static_cast<double>(xs.size());
    e.sem = std::sqrt(ss / (n - 1.0) / n);
  }
  return e;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SEEDS_MDP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

namespace {

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string run_file_name(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu.csv", r);
  return buf;
}

Json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"stderr", e.sem}}; }

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.T < 1) throw std::invalid_argument("run_experiment: T must be >= 1");
  if (config.replications < 1)
    throw std::invalid_argument("run_experiment: replications must be >= 1");
  const auto losses = generate_losses(config.adversary, config.mdp.shape(), config.T);
  const auto n = static_cast<std::size_t>(config.replications);

  ExperimentResult result;
  result.params = resolve_params(config);
  result.records.resize(n);
  result.regrets.resize(n);
  parallel_for(n, [&](std::size_t r) {
    result.records[r] = run_once(config, losses, config.base_seed + r);
    result.regrets[r] = compute_regret(result.records[r], config.mdp, losses, config.beta);
  });

  std::vector<double> lr, sc, tot, cnt;
  for (std::size_t r = 0; r < n; ++r) {
    lr.push_back(result.regrets[r].loss_regret);
    sc.push_back(result.regrets[r].switching_cost);
    tot.push_back(result.regrets[r].total);
    cnt.push_back(static_cast<double>(result.regrets[r].switch_count));
    const auto& log = result.records[r].projections;
    result.projections.count += log.count;
    result.projections.max_iterations =
        std::max(result.projections.max_iterations, log.max_iterations);
    result.projections.max_residual =
        std::max(result.projections.max_residual, log.max_residual);
    result.projections.max_gap_bound =
        std::max(result.projections.max_gap_bound, log.max_gap_bound);
  }
  result.loss_regret = mean_and_stderr(lr);
  result.switching_cost = mean_and_stderr(sc);
  result.total = mean_and_stderr(tot);
  result.switch_count = mean_and_stderr(cnt);

  if (!config.output.empty()) {
    for (std::size_t r = 0; r < n; ++r)
      write_text_file(config.output / run_file_name(r), records_csv(result.records[r]));
    write_text_file(config.output / "summary.json", summary_json(config, result));
  }
  return result;
}

std::string records_csv(const ExperimentRecord& record) {
  std::string out = "t,u,policy_hash,expected_loss,realized_loss,switched\n";
  out.reserve(out.size() + record.rows.size() * 48);
  for (const auto& row : record.rows) {
    out += std::to_string(row.t);
    out += ',';
    out += std::to_string(row.u);
    out += ',';
    out += std::to_string(row.policy_hash);
    out += ',';
    out += format_double(row.expected_loss);
    out += ',';
    out += format_double(row.realized_loss);
    out += ',';
    out += row.switched ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  Json runs = Json::array();
  for (std::size_t r = 0; r < result.records.size(); ++r) {
    const auto& g = result.regrets[r];
    runs.push_back({{"seed", config.base_seed + r},
                    {"csv", run_file_name(r)},
                    {"learner_loss", g.learner_loss},
                    {"comparator_loss", g.comparator_loss},
                    {"loss_regret", g.loss_regret},
                    {"switch_count", g.switch_count},
                    {"switching_cost", g.switching_cost},
                    {"total_regret", g.total}});
  }
  const std::int64_t tau = result.params.tau;
  Json doc = {
      {"algorithm", to_string(config.algorithm)},
      {"adversary", to_string(config.adversary.kind)},
      {"T", config.T},
      {"beta", config.beta},
      {"delta", config.delta},
      {"tau", tau},
      {"eta", result.params.eta},
      {"gamma", result.params.gamma},
      {"replications", config.replications},
      {"base_seed", config.base_seed},
      {"switch_bound", (config.T + tau - 1) / tau},
      {"loss_regret", estimate_json(result.loss_regret)},
      {"switching_cost", estimate_json(result.switching_cost)},
      {"total_regret", estimate_json(result.total)},
      {"switch_count", estimate_json(result.switch_count)},
      {"projections",
       {{"count", result.projections.count},
        {"max_iterations", result.projections.max_iterations},
        {"max_residual", result.projections.max_residual},
        {"max_gap_bound", result.projections.max_gap_bound}}},
      {"runs", std::move(runs)}};
  return doc.dump(2) + "\n";
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog: need at least two (x, y) pairs");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog: values must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_loglog: x values must differ");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

SweepResult sweep_and_fit(const ExperimentConfig& config,
                          std::span<const std::int64_t> T_list) {
  if (T_list.size() < 3)
    throw std::invalid_argument("sweep_and_fit: need at least three T values");
  for (std::size_t i = 0; i < T_list.size(); ++i)
    if (T_list[i] < 1 || (i > 0 && T_list[i] <= T_list[i - 1]))
      throw std::invalid_argument("sweep_and_fit: T values must be positive and increasing");

  SweepResult result;
  std::vector<double> xs, ys;
  for (const std::int64_t T : T_list) {
    ExperimentConfig c = config;
    c.T = T;
    if (!config.output.empty()) c.output = config.output / ("T_" + std::to_string(T));
    const auto r = run_experiment(c);
    result.rows.push_back({T, r.params, r.loss_regret, r.switching_cost, r.total,
                           r.switch_count});
    xs.push_back(static_cast<double>(T));
    ys.push_back(r.total.mean);
  }
  result.fit = fit_loglog(xs, ys);
  if (!config.output.empty()) {
    write_text_file(config.output / "sweep.csv", sweep_csv(result));
    const Json fit = {{"slope", result.fit.slope}, {"intercept", result.fit.intercept}};
    write_text_file(config.output / "fit.json", fit.dump(2) + "\n");
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "T,tau,eta,gamma,loss_regret_mean,loss_regret_stderr,switching_cost_mean,"
         "switching_cost_stderr,total_regret_mean,total_regret_stderr,"
         "switch_count_mean\n";
  for (const auto& row : result.rows)
    out << row.T << ',' << row.params.tau << ',' << format_double(row.params.eta) << ','
        << format_double(row.params.gamma) << ',' << format_double(row.loss_regret.mean)
        << ',' << format_double(row.loss_regret.sem) << ','
        << format_double(row.switching_cost.mean) << ','
        << format_double(row.switching_cost.sem) << ',' << format_double(row.total.mean)
        << ',' << format_double(row.total.sem) << ','
        << format_double(row.switch_count.mean) << '\n';
  return out.str();
}

}  // namespace seeds
