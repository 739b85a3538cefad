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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "seeds/adversary.hpp"
#include "seeds/harness.hpp"
#include "seeds/occupancy.hpp"
#include "seeds/omd.hpp"
#include "seeds/seeds.hpp"
#include "seeds/seeds_ut.hpp"

namespace seeds {
namespace {

struct Instance {
  std::string name;
  LayeredMdp mdp;
};

std::vector<Instance> builtin_instances() {
  return {{"lower_bound(4,3,2)", lower_bound_mdp(4, 3, 2)},
          {"lower_bound(8,4,3)", lower_bound_mdp(8, 4, 3)},
          {"random[1,3,1]x3", random_mdp({1, 3, 1}, 3, 11)},
          {"random[1,2,3,1]x2", random_mdp({1, 2, 3, 1}, 2, 12)},
          {"random[1,3,2,2,1]x2", random_mdp({1, 3, 2, 2, 1}, 2, 13)}};
}

LossFunction random_loss(const LayerShape& shape, std::uint64_t seed) {
  RngStream rng(seed);
  LossFunction loss(shape, 0.0);
  for (double& x : loss.values()) x = rng.uniform();
  return loss;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

void check(std::vector<ValidationCheck>& out, std::string name, bool passed,
           std::string detail) {
  out.push_back({std::move(name), passed, std::move(detail)});
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite() {
  std::vector<ValidationCheck> out;
  for (const auto& [name, mdp] : builtin_instances()) {
    const auto& shape = mdp.shape();
    const auto violations = validate_mdp(mdp);
    check(out, name + ": validate_mdp", violations.empty(),
          violations.empty() ? "ok" : violations.front().describe());

    const auto policies = enumerate_policies(shape);
    double worst_flow = 0.0;
    for (const auto& pi : policies)
      worst_flow = std::max(worst_flow,
                            validate_occupancy(shape, occupancy_of_policy(mdp, pi), &mdp).max());
    check(out, name + ": policy occupancies in C(P)", worst_flow < kFeasibilityTolerance,
          "max residual " + fmt(worst_flow));

    const auto loss = random_loss(shape, 99);
    const auto best = best_fixed_occupancy(mdp, loss);
    double enumerated = INFINITY;
    for (const auto& pi : policies)
      enumerated = std::min(enumerated,
                            expected_episode_loss(occupancy_of_policy(mdp, pi), loss));
    check(out, name + ": best_fixed_occupancy matches enumeration",
          std::abs(best.value - enumerated) < 1e-12,
          "dp " + fmt(best.value) + " vs enumeration " + fmt(enumerated));

    const auto q0 = occupancy_of_policy(mdp, uniform_policy(shape));
    LossEstimate lhat(shape, 0.0);
    for (std::size_t i = 0; i < lhat.size(); ++i) lhat.values()[i] = 5.0 * loss.values()[i];
    const auto known = project_known(multiplicative_update(q0, lhat, 0.7), mdp);
    const double known_res = validate_occupancy(shape, known.q, &mdp).max();
    check(out, name + ": project_known feasible", known_res < kFeasibilityTolerance,
          "residual " + fmt(known_res) + ", " + std::to_string(known.report.iterations) +
              " iterations");

    ConfidenceSet exact = ConfidenceSet::vacuous(shape, 0.1);
    Counts counts(shape);
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
      for (std::size_t a = 0; a < shape.num_actions(); ++a) counts.N(s, a) = 1;
    exact.counts = counts;
    exact.p_bar = mdp.transitions();
    exact.eps = TripleTable<RadiusTag>(shape, 0.0);
    const auto upper = upper_occupancy(exact.intervals());
    double worst_upper = 0.0;
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
      double reach = 0.0;
      for (const auto& pi : policies) {
        const auto q = occupancy_of_policy(mdp, pi);
        double mass = 0.0;
        for (double x : q.row(s)) mass += x;
        reach = std::max(reach, mass);
      }
      for (double u : upper.row(s)) worst_upper = std::max(worst_upper, std::abs(u - reach));
    }
    check(out, name + ": upper_occupancy(eps=0) matches max reach", worst_upper < 1e-12,
          "max deviation " + fmt(worst_upper));

    const auto q3 = triple_occupancy_of_policy(mdp, uniform_policy(shape));
    TransitionIntervals widened{TripleTable<RadiusTag>(shape, 0.0),
                                TripleTable<RadiusTag>(shape, 1.0)};
    for (std::size_t i = 0; i < widened.lower.size(); ++i) {
      const double p = mdp.transitions().values()[i];
      widened.lower.values()[i] = std::max(0.0, p - 0.1);
      widened.upper.values()[i] = std::min(1.0, p + 0.1);
    }
    const auto conf =
        project_confidence(multiplicative_update(q3, lhat, 0.7), widened);
    const double conf_res = std::max(validate_occupancy(conf.q3).max(),
                                     interval_residual(conf.q3, widened));
    check(out, name + ": project_confidence feasible", conf_res < kFeasibilityTolerance,
          "residual " + fmt(conf_res));

    const std::int64_t T = 200;
    AdversarySpec adversary;
    adversary.kind = AdversaryKind::kWorstCaseSwap;
    adversary.period = 20;
    const auto losses = generate_losses(adversary, shape, T);
    const auto params = seeds_params(T, shape.horizon(), shape.num_states(),
                                     shape.num_actions(), 1.0);
    const auto record = run_seeds(mdp, losses, params, T, 5);
    check(out, name + ": SEEDS switches within ceil(T/tau)",
          record.switch_count() <= record.switch_bound(),
          std::to_string(record.switch_count()) + " <= " +
              std::to_string(record.switch_bound()));
  }
  return out;
}

}  // namespace seeds
