#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "oradmit/exact.hpp"
#include "oradmit/model.hpp"
#include "oradmit/rng.hpp"

namespace oradmit {

struct RlsOptions {
  double lambda = 0.0;  // eligibility-trace decay
  double beta = 1.0;    // initial gain: P starts as beta * I
  // Relative change in the weight vector between consecutive trajectories
  // below which the decision procedure stops early.
  double epsilon = 1e-4;
  int depth = 5000;           // steps simulated per trajectory
  int max_trajectories = 200;
  // |1 + d'Pz| below this aborts the trajectory and resets the gain, since
  // the rank-one downdate would blow up.
  double q_floor = 1e-12;
  int resymmetrize_every = 100;
};

// Recursive least-squares temporal-difference learner over linear features.
// Each step folds one observed transition (cost, phi -> phi_next) into the
// weight estimate without ever forming the normal equations.
class RlsTdLearner {
 public:
  explicit RlsTdLearner(int dim, const RlsOptions& opts = {})
      : opts_(opts),
        theta_(Eigen::VectorXd::Zero(dim)),
        z_(Eigen::VectorXd::Zero(dim)),
        P_(Eigen::MatrixXd::Identity(dim, dim) * opts.beta) {
    if (dim <= 0) throw std::invalid_argument("learner needs dim >= 1");
    if (opts.beta <= 0.0) throw std::invalid_argument("beta must be positive");
  }

  int dim() const { return static_cast<int>(theta_.size()); }
  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::VectorXd& trace() const { return z_; }
  const Eigen::MatrixXd& gain() const { return P_; }
  std::uint64_t steps() const { return steps_; }

  void start_trajectory() { z_.setZero(); }

  void reset_gain() {
    P_ = Eigen::MatrixXd::Identity(dim(), dim()) * opts_.beta;
  }

  // Returns false when the update was skipped because the innovation scale
  // degenerated; the caller should abandon the current trajectory.
  bool step(double cost, double discount, const Eigen::VectorXd& phi,
            const Eigen::VectorXd& phi_next) {
    z_ = discount * opts_.lambda * z_ + phi;
    const Eigen::VectorXd d = phi - discount * phi_next;
    const double error = cost - d.dot(theta_);
    const Eigen::VectorXd pz = P_ * z_;
    const double q = 1.0 + d.dot(pz);
    if (std::abs(q) < opts_.q_floor) {
      reset_gain();
      return false;
    }
    P_ -= pz * (d.transpose() * P_) / q;
    theta_ += pz * (error / q);
    ++steps_;
    if (opts_.resymmetrize_every > 0 &&
        steps_ % opts_.resymmetrize_every == 0)
      P_ = ((P_ + P_.transpose()) * 0.5).eval();
    return true;
  }

 private:
  RlsOptions opts_;
  Eigen::VectorXd theta_;
  Eigen::VectorXd z_;
  Eigen::MatrixXd P_;
  std::uint64_t steps_ = 0;
};

struct AdpDecision {
  Action action;
  int trajectories = 0;
  bool converged = false;
  double last_theta_change = std::numeric_limits<double>::infinity();
};

namespace detail {

// Successor counts after playing m at n and receiving the sampled arrivals.
inline void shift_counts(const Layout& layout,
                         const std::vector<std::uint32_t>& n,
                         const std::vector<std::uint32_t>& m,
                         std::vector<std::uint32_t>& next) {
  next.assign(n.size(), 0);
  for (int xi = 0; xi < layout.type_count(); ++xi)
    if (!layout.type(xi).due) next[xi + 1] = n[xi] - m[xi];
}

inline void sample_arrivals(const Layout& layout, RngStream& stream,
                            std::vector<std::uint32_t>& next) {
  for (const auto& p : layout.pairs())
    next[p.first_type] = p.cap >= 0
                             ? static_cast<std::uint32_t>(
                                   stream.next_index(p.pmf))
                             : static_cast<std::uint32_t>(
                                   stream.next_poisson(p.rate));
}

inline Eigen::VectorXd to_features(const std::vector<std::uint32_t>& n) {
  Eigen::VectorXd phi(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) phi[i] = double(n[i]);
  return phi;
}

}  // namespace detail

// Rollout-and-learn decision for one week. Simulates trajectories from `s`,
// feeding every transition to the learner; each candidate action is scored
// against its own sampled arrival draw, so ties in value never share noise.
// Stops once the weight vector settles (relative change below epsilon) or
// after max_trajectories. The returned action re-scores the candidates with
// expected arrivals under the final weights.
inline AdpDecision adp_decide(const Model& model, const State& s, int week,
                              RlsTdLearner& learner, std::uint64_t master_seed,
                              const RlsOptions& opts = {},
                              ActionSource source = ActionSource::reduced) {
  const auto& layout = model.layout();
  const auto& cfg = model.config();
  if (learner.dim() != layout.type_count())
    throw std::invalid_argument("learner dimension does not match instance");
  model.check_state(s);
  const double gamma = cfg.discount;
  const double cd = cfg.waiting_cost_per_priority;

  AdpDecision out;
  Eigen::VectorXd theta_prev = learner.theta();
  std::vector<std::uint32_t> x = s.n;
  std::vector<std::uint32_t> cand(x.size()), best_next(x.size());
  std::vector<std::uint32_t> best_m;

  for (int traj = 0; traj < opts.max_trajectories; ++traj) {
    learner.start_trajectory();
    x = s.n;
    bool aborted = false;
    for (int step = 0; step < opts.depth && !aborted; ++step) {
      const double pw = model.priority_sum(x);
      double best_q = std::numeric_limits<double>::infinity();
      double best_cost = 0.0;
      best_m.clear();
      std::uint64_t rank = 0;
      detail::for_each_action_eval(
          model, source, x,
          [&](const detail::ActionEval& ev, const auto& m) {
            RngStream draw(master_seed, StreamPurpose::learner_actions,
                           {std::uint64_t(week), std::uint64_t(traj),
                            std::uint64_t(step), rank++});
            detail::shift_counts(layout, x, m, cand);
            detail::sample_arrivals(layout, draw, cand);
            const double stage = cd * pw + ev.cost_const;
            double v = 0.0;
            for (std::size_t i = 0; i < cand.size(); ++i)
              v += learner.theta()[i] * cand[i];
            const double q = stage + gamma * v;
            if (q < best_q ||
                (q == best_q &&
                 std::lexicographical_compare(m.begin(), m.end(),
                                              best_m.begin(), best_m.end()))) {
              best_q = q;
              best_cost = stage;
              best_m.assign(m.begin(), m.end());
              best_next = cand;
            }
          });
      if (!learner.step(best_cost, gamma, detail::to_features(x),
                        detail::to_features(best_next)))
        aborted = true;
      x = best_next;
    }
    ++out.trajectories;
    if (!aborted) {
      double change = 0.0;
      for (int i = 0; i < learner.dim(); ++i) {
        const double rel = (learner.theta()[i] - theta_prev[i]) /
                           std::max(std::abs(theta_prev[i]), 1e-8);
        change += rel * rel;
      }
      out.last_theta_change = std::sqrt(change);
      if (out.last_theta_change < opts.epsilon) {
        out.converged = true;
        theta_prev = learner.theta();
        break;
      }
    }
    theta_prev = learner.theta();
  }

  // Final choice: same scoring, expected arrivals instead of a sample.
  const double pw = model.priority_sum(s.n);
  double best_q = std::numeric_limits<double>::infinity();
  best_m.clear();
  detail::for_each_action_eval(
      model, source, s.n,
      [&](const detail::ActionEval& ev, const auto& m) {
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(layout.type_count());
        for (int xi = 0; xi < layout.type_count(); ++xi)
          if (!layout.type(xi).due) phi[xi + 1] = double(s.n[xi] - m[xi]);
        for (const auto& p : layout.pairs())
          phi[p.first_type] = p.mean_arrivals;
        const double q =
            cd * pw + ev.cost_const + gamma * learner.theta().dot(phi);
        if (q < best_q ||
            (q == best_q &&
             std::lexicographical_compare(m.begin(), m.end(), best_m.begin(),
                                          best_m.end()))) {
          best_q = q;
          best_m.assign(m.begin(), m.end());
        }
      });
  out.action.m = best_m;
  return out;
}

}  // namespace oradmit
