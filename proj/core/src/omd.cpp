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

#include "seeds/omd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "seeds/occupancy.hpp"

namespace seeds {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(std::span<const double> x) {
  double m = kNegInf;
  for (double v : x) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : x)
    if (v != kNegInf) sum += std::exp(v - m);
  return m + std::log(sum);
}

/**
 * KL projection onto per-layer normalization plus flow conservation, for a
 * family of coordinates that each leave one source state and spread over
 * successor states with fixed probabilities. Pair coordinates spread by
 * P(. | s, a); triple coordinates go to a single successor.
 */
class FlowProjector {
 public:
  static FlowProjector for_pairs(const LayeredMdp& mdp) {
    const auto& shape = mdp.shape();
    FlowProjector f(shape);
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
      const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const auto p = mdp.transition(s, a);
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p[j] != 0.0) f.add_successor(next_begin + j, p[j]);
        f.close_coordinate(s);
      }
    }
    return f;
  }

  static FlowProjector for_triples(const LayerShape& shape) {
    FlowProjector f(shape);
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
      const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
      for (std::size_t a = 0; a < shape.num_actions(); ++a)
        for (std::size_t j = 0; j < shape.row_length(s); ++j) {
          f.add_successor(next_begin + j, 1.0);
          f.close_coordinate(s);
        }
    }
    return f;
  }

  struct Result {
    std::vector<double> log_q;  // normalized per layer
    std::vector<double> v;
    std::vector<double> residual;  // outflow - inflow per variable
    double max_residual = 0.0;
    int iterations = 0;
    bool converged = false;
  };

  std::size_t num_coordinates() const { return src_var_.size(); }
  std::size_t num_variables() const { return num_vars_; }

  Result solve(std::span<const double> log_w, double tol,
               int max_iterations) const {
    Result r;
    r.v.assign(num_vars_, 0.0);
    Eigen::VectorXd grad(num_vars_);
    double phi = evaluate(log_w, r.v, r.log_q, &grad);
    for (;;) {
      r.max_residual = num_vars_ == 0 ? 0.0 : grad.cwiseAbs().maxCoeff();
      if (r.max_residual < tol) {
        r.converged = true;
        break;
      }
      if (r.iterations >= max_iterations) break;
      ++r.iterations;

      Eigen::MatrixXd hess = hessian(r.log_q);
      const double ridge = 1e-12 * std::max(1.0, hess.diagonal().maxCoeff());
      hess.diagonal().array() += ridge;
      Eigen::VectorXd dir = hess.ldlt().solve(-grad);
      double slope = grad.dot(dir);
      if (!dir.allFinite() || !(slope < 0.0)) {
        dir = -grad;
        slope = -grad.squaredNorm();
      }

      std::vector<double> trial(num_vars_);
      std::vector<double> trial_log_q;
      Eigen::VectorXd trial_grad(num_vars_);
      double step = 1.0;
      bool accepted = false;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        for (std::size_t i = 0; i < num_vars_; ++i)
          trial[i] = r.v[i] + step * dir[static_cast<Eigen::Index>(i)];
        const double trial_phi = evaluate(log_w, trial, trial_log_q, &trial_grad);
        // Near the optimum the decrease of phi drops below its rounding
        // error; a shrinking gradient is then the usable progress measure.
        const bool flat = trial_phi <= phi + 1e-13 * std::max(1.0, std::abs(phi));
        if (trial_phi <= phi + 1e-4 * step * slope ||
            (flat && trial_grad.cwiseAbs().maxCoeff() <
                         (1.0 - 0.5 * step) * r.max_residual)) {
          accepted = true;
          phi = trial_phi;
          break;
        }
      }
      if (!accepted) break;
      r.v.swap(trial);
      r.log_q.swap(trial_log_q);
      grad = trial_grad;
    }
    r.residual.assign(grad.data(), grad.data() + grad.size());
    return r;
  }

 private:
  explicit FlowProjector(const LayerShape& shape)
      : horizon_(shape.horizon()),
        first_var_state_(shape.layer_begin(1)),
        num_vars_(shape.num_decision_states() - shape.layer_begin(1)),
        layer_begin_coord_(shape.horizon() + 1, 0) {
    succ_begin_.push_back(0);
    shape_layer_of_.reserve(shape.num_states());
    for (std::size_t s = 0; s < shape.num_states(); ++s)
      shape_layer_of_.push_back(shape.layer_of(s));
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t var_of(std::size_t state) const {
    if (state < first_var_state_ || state >= first_var_state_ + num_vars_)
      return kNone;
    return state - first_var_state_;
  }

  void add_successor(std::size_t state, double prob) {
    const std::size_t v = var_of(state);
    if (v == kNone) return;
    succ_var_.push_back(v);
    succ_prob_.push_back(prob);
  }

  void close_coordinate(std::size_t source) {
    src_var_.push_back(var_of(source));
    succ_begin_.push_back(succ_var_.size());
    const std::size_t h = shape_layer_of_[source];
    layer_begin_coord_[h + 1] = src_var_.size();
  }

  /// Returns the dual objective sum_h log z_h(v); fills normalized log q and
  /// its gradient (outflow - inflow).
  double evaluate(std::span<const double> log_w, std::span<const double> v,
                  std::vector<double>& log_q, Eigen::VectorXd* grad) const {
    const std::size_t n = num_coordinates();
    log_q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (log_w[i] == kNegInf) {
        log_q[i] = kNegInf;
        continue;
      }
      double e = log_w[i];
      if (src_var_[i] != kNone) e += v[src_var_[i]];
      for (std::size_t k = succ_begin_[i]; k < succ_begin_[i + 1]; ++k)
        e -= succ_prob_[k] * v[succ_var_[k]];
      log_q[i] = e;
    }
    double phi = 0.0;
    for (std::size_t h = 0; h < horizon_; ++h) {
      std::span<double> layer(log_q.data() + layer_begin_coord_[h],
                              layer_begin_coord_[h + 1] - layer_begin_coord_[h]);
      const double lz = log_sum_exp(layer);
      phi += lz;
      for (double& x : layer)
        if (x != kNegInf) x -= lz;
    }
    if (grad != nullptr) {
      grad->setZero(static_cast<Eigen::Index>(num_vars_));
      for (std::size_t i = 0; i < n; ++i) {
        if (log_q[i] == kNegInf) continue;
        const double q = std::exp(log_q[i]);
        if (src_var_[i] != kNone) (*grad)[static_cast<Eigen::Index>(src_var_[i])] += q;
        for (std::size_t k = succ_begin_[i]; k < succ_begin_[i + 1]; ++k)
          (*grad)[static_cast<Eigen::Index>(succ_var_[k])] -= q * succ_prob_[k];
      }
    }
    return phi;
  }

  Eigen::MatrixXd hessian(const std::vector<double>& log_q) const {
    const auto n = static_cast<Eigen::Index>(num_vars_);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd mean(n);
    std::vector<std::pair<std::size_t, double>> a;
    for (std::size_t h = 0; h < horizon_; ++h) {
      mean.setZero();
      for (std::size_t i = layer_begin_coord_[h]; i < layer_begin_coord_[h + 1];
           ++i) {
        if (log_q[i] == kNegInf) continue;
        const double q = std::exp(log_q[i]);
        if (q == 0.0) continue;
        a.clear();
        if (src_var_[i] != kNone) a.emplace_back(src_var_[i], 1.0);
        for (std::size_t k = succ_begin_[i]; k < succ_begin_[i + 1]; ++k)
          a.emplace_back(succ_var_[k], -succ_prob_[k]);
        for (const auto& [x, ax] : a) {
          mean[static_cast<Eigen::Index>(x)] += q * ax;
          for (const auto& [y, ay] : a)
            hess(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) +=
                q * ax * ay;
        }
      }
      hess.noalias() -= mean * mean.transpose();
    }
    return hess;
  }

  std::size_t horizon_;
  std::size_t first_var_state_;
  std::size_t num_vars_;
  std::vector<std::size_t> layer_begin_coord_;
  std::vector<std::size_t> shape_layer_of_;
  std::vector<std::size_t> src_var_;
  std::vector<std::size_t> succ_begin_;
  std::vector<std::size_t> succ_var_;
  std::vector<double> succ_prob_;
};

/// Clips at `floor` and renormalizes each layer of a pair or triple layout.
template <class RangeOf>
void floor_and_normalize(std::vector<double>& values, std::size_t horizon,
                         RangeOf layer_range, double floor) {
  for (double& x : values) x = std::max(x, floor);
  for (std::size_t h = 0; h < horizon; ++h) {
    const auto [begin, end] = layer_range(h);
    const double mass = std::accumulate(values.begin() + begin,
                                        values.begin() + end, 0.0);
    for (std::size_t i = begin; i < end; ++i) values[i] /= mass;
  }
}

double dot_abs(std::span<const double> v, std::span<const double> r) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += v[i] * r[i];
  return std::abs(sum);
}

/**
 * KL projection of the weights exp(y) of one (s, a) row onto
 * {x : lower_j * sum x <= x_j <= upper_j * sum x}. The normalized row is the
 * KL projection of exp(y) / sum exp(y) onto box-intersect-simplex, which is
 * clip(c p~, lower, upper) for the unique c giving unit mass; the scale then
 * solves ln S = sum_j p_j (y_j - ln p_j).
 */
void project_row(std::span<const double> y, std::span<const double> lower,
                 std::span<const double> upper, std::span<double> out) {
  const std::size_t n = y.size();
  double y_max = kNegInf;
  for (double v : y) y_max = std::max(y_max, v);
  std::vector<double> pt(n);
  for (std::size_t j = 0; j < n; ++j)
    pt[j] = y[j] == kNegInf ? 0.0 : std::exp(y[j] - y_max);

  auto mass_at = [&](double c) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      m += std::clamp(c * pt[j], lower[j], upper[j]);
    return m;
  };

  std::vector<double> breaks;
  for (std::size_t j = 0; j < n; ++j) {
    if (pt[j] <= 0.0) continue;
    if (lower[j] > 0.0) breaks.push_back(lower[j] / pt[j]);
    breaks.push_back(upper[j] / pt[j]);
  }
  std::sort(breaks.begin(), breaks.end());

  double c = 0.0;
  double prev = 0.0;
  bool found = false;
  for (double b : breaks) {
    if (mass_at(b) >= 1.0) {
      const double mid = 0.5 * (prev + b);
      double fixed = 0.0;
      double slope = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = mid * pt[j];
        if (pt[j] > 0.0 && x > lower[j] && x < upper[j])
          slope += pt[j];
        else
          fixed += std::clamp(x, lower[j], upper[j]);
      }
      c = slope > 0.0 ? std::clamp((1.0 - fixed) / slope, prev, b) : b;
      found = true;
      break;
    }
    prev = b;
  }
  if (!found) c = breaks.empty() ? 0.0 : breaks.back();

  std::vector<double> log_p(n, kNegInf);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = c * pt[j];
    if (pt[j] > 0.0 && x > lower[j] && x < upper[j])
      log_p[j] = std::log(c) + (y[j] - y_max);
    else if (x <= lower[j])
      log_p[j] = lower[j] > 0.0 ? std::log(lower[j]) : kNegInf;
    else
      log_p[j] = std::log(upper[j]);
  }
  double log_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    if (log_p[j] != kNegInf && y[j] != kNegInf)
      log_scale += std::exp(log_p[j]) * (y[j] - log_p[j]);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = log_p[j] == kNegInf ? kNegInf : log_scale + log_p[j];
}

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

Bounds checked_bounds(const TransitionIntervals& intervals) {
  const auto& shape = intervals.lower.shape();
  Bounds b{intervals.lower.values(), intervals.upper.values()};
  for (std::size_t i = 0; i < b.lower.size(); ++i) {
    b.lower[i] = std::clamp(b.lower[i], 0.0, 1.0);
    b.upper[i] = std::clamp(b.upper[i], 0.0, 1.0);
    if (b.lower[i] > b.upper[i])
      throw ProjectionError("transition interval is empty", {});
  }
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const std::size_t off = shape.row_offset(s, a);
      const std::size_t len = shape.row_length(s);
      double lo = 0.0, hi = 0.0;
      for (std::size_t j = 0; j < len; ++j) {
        lo += b.lower[off + j];
        hi += b.upper[off + j];
      }
      if (lo > 1.0 + 1e-12 || hi < 1.0 - 1e-12)
        throw ProjectionError("transition intervals for state " +
                                  std::to_string(s) + ", action " +
                                  std::to_string(a) +
                                  " admit no distribution",
                              {});
    }
  return b;
}

struct DykstraResult {
  std::vector<double> x;  // normalized, floored
  std::vector<double> v_total;
  std::vector<double> flow_residual;
  int iterations = 0;
};

DykstraResult dykstra(const FlowProjector& flow, const LayerShape& shape,
                      std::vector<double> log_ref, const Bounds& bounds,
                      const ProjectionOptions& options) {
  const std::size_t n = log_ref.size();
  for (std::size_t i = 0; i < n; ++i)
    if (bounds.upper[i] == 0.0) log_ref[i] = kNegInf;

  const double inner_tol = std::max(options.tolerance * 1e-2, 1e-13);
  std::vector<double> current = std::move(log_ref);
  std::vector<double> correction(n, 0.0);
  std::vector<double> shifted(n);
  std::vector<double> projected(n);
  DykstraResult out;
  out.v_total.assign(flow.num_variables(), 0.0);
  auto layer_range = [&](std::size_t h) {
    return std::pair{shape.row_offset(shape.layer_begin(h), 0),
                     shape.row_offset(shape.layer_end(h) - 1, 0) +
                         shape.num_actions() * shape.layer_size(h + 1)};
  };

  for (int it = 1; it <= options.max_iterations; ++it) {
    auto a_step = flow.solve(current, inner_tol, options.max_iterations);
    for (std::size_t k = 0; k < out.v_total.size(); ++k) out.v_total[k] += a_step.v[k];

    for (std::size_t i = 0; i < n; ++i)
      shifted[i] = a_step.log_q[i] == kNegInf ? kNegInf
                                              : a_step.log_q[i] + correction[i];
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const std::size_t off = shape.row_offset(s, a);
        const std::size_t len = shape.row_length(s);
        project_row({shifted.data() + off, len},
                    {bounds.lower.data() + off, len},
                    {bounds.upper.data() + off, len},
                    {projected.data() + off, len});
      }
    for (std::size_t i = 0; i < n; ++i)
      correction[i] = (shifted[i] == kNegInf || projected[i] == kNegInf)
                          ? 0.0
                          : shifted[i] - projected[i];
    current = projected;

    // Per-layer renormalization shifts only along the normalization
    // multipliers, so stationarity is kept and flow feasibility is the only
    // remaining optimality condition.
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = projected[i] == kNegInf ? 0.0 : std::exp(projected[i]);
    for (std::size_t h = 0; h < shape.horizon(); ++h) {
      const auto [b, e] = layer_range(h);
      const double mass = std::accumulate(x.begin() + b, x.begin() + e, 0.0);
      for (std::size_t i = b; i < e; ++i) x[i] /= mass;
    }
    TripleOccupancy probe(shape);
    probe.values() = x;
    const auto res = validate_occupancy(probe);
    out.iterations = it;
    if (res.max() < options.tolerance) {
      out.x = std::move(x);
      break;
    }
    if (it == options.max_iterations)
      throw ProjectionError("confidence-set projection did not converge",
                            {it, res.max(), 0.0});
  }

  // Residual vector for the gap bound, before flooring.
  out.flow_residual.assign(flow.num_variables(), 0.0);
  const std::size_t first = shape.layer_begin(1);
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s) {
    const std::size_t next_begin = shape.layer_begin(shape.layer_of(s) + 1);
    for (std::size_t a = 0; a < shape.num_actions(); ++a)
      for (std::size_t j = 0; j < shape.row_length(s); ++j) {
        const double x = out.x[shape.row_offset(s, a) + j];
        if (s >= first) out.flow_residual[s - first] += x;
        if (next_begin + j < shape.num_decision_states())
          out.flow_residual[next_begin + j - first] -= x;
      }
  }
  floor_and_normalize(out.x, shape.horizon(), layer_range, options.floor);
  return out;
}

}  // namespace

double LogWeights::value(std::size_t i) const { return std::exp(log_values[i]); }

std::vector<double> LogWeights::values() const {
  std::vector<double> out(log_values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_values[i]);
  return out;
}

LogWeights to_log_weights(std::span<const double> values) {
  LogWeights w;
  w.log_values.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    w.log_values[i] = values[i] > 0.0 ? std::log(values[i]) : kNegInf;
  return w;
}

LogWeights multiplicative_update(const OccupancyMeasure& q_prev,
                                 const LossEstimate& lhat, double eta) {
  auto w = to_log_weights(q_prev.values());
  for (std::size_t i = 0; i < w.log_values.size(); ++i)
    w.log_values[i] -= eta * lhat.values()[i];
  return w;
}

LogWeights multiplicative_update(const TripleOccupancy& q_prev,
                                 const LossEstimate& lhat, double eta) {
  const auto& shape = q_prev.shape();
  auto w = to_log_weights(q_prev.values());
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const std::size_t off = shape.row_offset(s, a);
      for (std::size_t j = 0; j < shape.row_length(s); ++j)
        w.log_values[off + j] -= eta * lhat(s, a);
    }
  return w;
}

KnownProjection project_known(const LogWeights& q_tilde, const LayeredMdp& mdp,
                              const ProjectionOptions& options) {
  const auto& shape = mdp.shape();
  const auto flow = FlowProjector::for_pairs(mdp);
  auto solved = flow.solve(q_tilde.log_values, options.tolerance,
                           options.max_iterations);
  if (!solved.converged)
    throw ProjectionError("known-transition projection did not converge",
                          {solved.iterations, solved.max_residual, 0.0});

  KnownProjection out{OccupancyMeasure(shape, 0.0), {solved.v}, {}};
  auto& q = out.q.values();
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = solved.log_q[i] == kNegInf ? 0.0 : std::exp(solved.log_q[i]);
  const std::size_t A = shape.num_actions();
  floor_and_normalize(
      q, shape.horizon(),
      [&](std::size_t h) {
        return std::pair{shape.layer_begin(h) * A, shape.layer_end(h) * A};
      },
      options.floor);

  out.report.iterations = solved.iterations;
  out.report.residual = validate_occupancy(shape, out.q, &mdp).max();
  out.report.gap_bound = dot_abs(solved.v, solved.residual);
  return out;
}

ConfidenceProjection project_confidence(const LogWeights& q3_tilde,
                                        const TransitionIntervals& intervals,
                                        const ProjectionOptions& options,
                                        KlCoordinates coordinates) {
  const auto& shape = intervals.lower.shape();
  const auto bounds = checked_bounds(intervals);
  const auto flow = FlowProjector::for_triples(shape);

  DykstraResult solved;
  if (coordinates == KlCoordinates::kTriple) {
    solved = dykstra(flow, shape, q3_tilde.log_values, bounds, options);
  } else {
    // min_x D(Mx || q~) = min_{x, r} D(x || q~ (x) r) over conditionals r;
    // alternate between the two blocks, starting from q~'s own conditional.
    std::vector<double> log_pair(shape.num_pairs());
    std::vector<double> log_cond(q3_tilde.log_values.size());
    for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const std::size_t off = shape.row_offset(s, a);
        std::span<const double> row(q3_tilde.log_values.data() + off,
                                    shape.row_length(s));
        const double lp = log_sum_exp(row);
        log_pair[s * shape.num_actions() + a] = lp;
        for (std::size_t j = 0; j < row.size(); ++j) log_cond[off + j] = row[j] - lp;
      }
    std::vector<double> previous;
    int total_iterations = 0;
    for (int outer = 0; outer < 500; ++outer) {
      std::vector<double> ref(log_cond.size());
      for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
        for (std::size_t a = 0; a < shape.num_actions(); ++a) {
          const std::size_t off = shape.row_offset(s, a);
          for (std::size_t j = 0; j < shape.row_length(s); ++j)
            ref[off + j] = log_pair[s * shape.num_actions() + a] + log_cond[off + j];
        }
      solved = dykstra(flow, shape, std::move(ref), bounds, options);
      total_iterations += solved.iterations;
      double change = 0.0;
      if (!previous.empty())
        for (std::size_t i = 0; i < previous.size(); ++i)
          change = std::max(change, std::abs(previous[i] - solved.x[i]));
      previous = solved.x;
      if (outer > 0 && change < options.tolerance) break;
      for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
        for (std::size_t a = 0; a < shape.num_actions(); ++a) {
          const std::size_t off = shape.row_offset(s, a);
          double mass = 0.0;
          for (std::size_t j = 0; j < shape.row_length(s); ++j) mass += solved.x[off + j];
          for (std::size_t j = 0; j < shape.row_length(s); ++j)
            log_cond[off + j] = std::log(solved.x[off + j] / mass);
        }
    }
    solved.iterations = total_iterations;
  }

  ConfidenceProjection out{TripleOccupancy(shape), {}};
  out.q3.values() = std::move(solved.x);
  out.report.iterations = solved.iterations;
  out.report.residual = std::max(validate_occupancy(out.q3).max(),
                                 interval_residual(out.q3, intervals));
  out.report.gap_bound = dot_abs(solved.v_total, solved.flow_residual);
  return out;
}

double interval_residual(const TripleOccupancy& q3,
                         const TransitionIntervals& intervals) {
  const auto& shape = q3.shape();
  double worst = 0.0;
  for (std::size_t s = 0; s < shape.num_decision_states(); ++s)
    for (std::size_t a = 0; a < shape.num_actions(); ++a) {
      const auto row = q3.row(s, a);
      const auto lo = intervals.lower.row(s, a);
      const auto hi = intervals.upper.row(s, a);
      double mass = 0.0;
      for (double x : row) mass += x;
      for (std::size_t j = 0; j < row.size(); ++j) {
        const double l = std::clamp(lo[j], 0.0, 1.0);
        const double u = std::clamp(hi[j], 0.0, 1.0);
        worst = std::max({worst, row[j] - u * mass, l * mass - row[j]});
      }
    }
  return worst;
}

double projection_objective(std::span<const double> x,
                            const LogWeights& log_reference) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lr = log_reference.log_values[i];
    if (x[i] > 0.0) sum += x[i] * (std::log(x[i]) - lr);
    sum -= x[i];
    if (lr != kNegInf) sum += std::exp(lr);
  }
  return sum;
}

}  // namespace seeds
