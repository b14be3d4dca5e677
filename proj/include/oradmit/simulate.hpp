#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oradmit/action_space.hpp"
#include "oradmit/exact.hpp"
#include "oradmit/model.hpp"
#include "oradmit/rlstd.hpp"
#include "oradmit/rng.hpp"

namespace oradmit {

// ---------------------------------------------------------------------------
// Lognormal sampling from (mean, std) moments.

inline std::pair<double, double> lognormal_params(double mean, double std) {
  const double var = std * std;
  const double sigma2 = std::log(1.0 + var / (mean * mean));
  return {std::log(mean) - 0.5 * sigma2, std::sqrt(sigma2)};
}

inline double sample_lognormal(RngStream& stream, double mean, double std) {
  if (!(mean > 0.0)) return 0.0;
  if (!(std > 0.0)) return mean;
  auto [mu, sigma] = lognormal_params(mean, std);
  return std::exp(mu + sigma * stream.next_normal());
}

// ---------------------------------------------------------------------------
// Policies

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Action decide(const State& s, int week) = 0;
  // True when the policy searches the unreduced action family, so per-week
  // workload statistics report the right denominator.
  virtual bool searches_full_family() const { return false; }
};

class MyopicPolicy final : public Policy {
 public:
  explicit MyopicPolicy(const Model& model) : model_(model) {}
  std::string name() const override { return "myopic"; }
  Action decide(const State& s, int) override {
    return myopic_action(model_, s);
  }

 private:
  const Model& model_;
};

// Greedy one-step lookahead against a converged value table.
class GreedyTablePolicy final : public Policy {
 public:
  GreedyTablePolicy(const Model& model, ValueTable table, ActionSource source,
                    std::string label)
      : model_(model),
        table_(std::move(table)),
        combos_(make_arrival_combos(model)),
        source_(source),
        label_(std::move(label)) {
    require_table_matches(model, table_.radices);
  }
  std::string name() const override { return label_; }
  bool searches_full_family() const override {
    return source_ == ActionSource::full;
  }
  Action decide(const State& s, int) override {
    return bellman_backup(model_, s, table_, combos_, source_).best;
  }

 private:
  const Model& model_;
  ValueTable table_;
  ArrivalCombos combos_;
  ActionSource source_;
  std::string label_;
};

// Learns while it runs: one rollout-and-learn call per week, weights carried
// forward from week to week.
class AdpPolicy final : public Policy {
 public:
  AdpPolicy(const Model& model, std::uint64_t master_seed,
            const RlsOptions& opts = {},
            ActionSource source = ActionSource::reduced,
            std::string label = "adp")
      : model_(model),
        learner_(model.layout().type_count(), opts),
        opts_(opts),
        master_seed_(master_seed),
        source_(source),
        label_(std::move(label)) {}
  std::string name() const override { return label_; }
  bool searches_full_family() const override {
    return source_ == ActionSource::full;
  }
  Action decide(const State& s, int week) override {
    last_ = adp_decide(model_, s, week, learner_, master_seed_, opts_, source_);
    return last_.action;
  }
  const AdpDecision& last_decision() const { return last_; }
  const RlsTdLearner& learner() const { return learner_; }

 private:
  const Model& model_;
  RlsTdLearner learner_;
  RlsOptions opts_;
  std::uint64_t master_seed_;
  ActionSource source_;
  std::string label_;
  AdpDecision last_;
};

// ---------------------------------------------------------------------------
// Monte-Carlo estimate of one week's resource costs. Admission decisions fix
// who goes to theatre; realized durations and stays stay random, so overtime
// and bed shortage are sampled per scenario: every admitted patient draws a
// surgery duration and an intensive-care stay, in canonical patient order.

struct HospitalOutcome {
  double cost_mean = 0.0, cost_std = 0.0;
  std::vector<double> overtime_mean, overtime_std;  // hours, per specialty
  double shortage_mean = 0.0, shortage_std = 0.0;   // bed-days
};

inline HospitalOutcome sample_hospital_outcomes(const Model& model,
                                                const Action& a,
                                                std::uint64_t master_seed,
                                                int week, int scenarios) {
  const auto& cfg = model.config();
  const auto& layout = model.layout();
  const int J = layout.specialty_count();
  HospitalOutcome out;
  out.overtime_mean.assign(J, 0.0);
  out.overtime_std.assign(J, 0.0);
  std::vector<double> ot_sum(J, 0.0), ot_sq(J, 0.0);
  double cost_sum = 0.0, cost_sq = 0.0, short_sum = 0.0, short_sq = 0.0;

  for (int k = 0; k < scenarios; ++k) {
    RngStream stream(master_seed, StreamPurpose::scenario_costs,
                     {std::uint64_t(week), std::uint64_t(k)});
    double bed_days = 0.0, cost = 0.0;
    for (int j = 0; j < J; ++j) {
      const auto& sp = cfg.specialties[j];
      double hours = 0.0;
      for (int xi = 0; xi < layout.type_count(); ++xi) {
        if (layout.type(xi).specialty != j) continue;
        for (std::uint32_t i = 0; i < a.m[xi]; ++i) {
          hours += sample_lognormal(stream, sp.duration_mean_hours,
                                    sp.duration_std_hours);
          bed_days += sample_lognormal(stream, sp.los_mean_days,
                                       sp.los_std_days);
        }
      }
      const double over = std::max(
          0.0, hours - cfg.or_availability * sp.or_capacity_hours);
      ot_sum[j] += over;
      ot_sq[j] += over * over;
      cost += cfg.overtime_cost_per_hour * over;
    }
    const double shortage = std::max(
        0.0, bed_days - cfg.sicu_availability * cfg.sicu_capacity_bed_days);
    short_sum += shortage;
    short_sq += shortage * shortage;
    cost += cfg.shortage_cost_per_bed_day * shortage;
    cost_sum += cost;
    cost_sq += cost * cost;
  }

  const double n = double(scenarios);
  auto moments = [n](double sum, double sq) {
    const double mean = sum / n;
    return std::pair{mean, std::sqrt(std::max(0.0, sq / n - mean * mean))};
  };
  std::tie(out.cost_mean, out.cost_std) = moments(cost_sum, cost_sq);
  std::tie(out.shortage_mean, out.shortage_std) = moments(short_sum, short_sq);
  for (int j = 0; j < J; ++j)
    std::tie(out.overtime_mean[j], out.overtime_std[j]) =
        moments(ot_sum[j], ot_sq[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Week-by-week rollout

struct SimulationPlan {
  int weeks = 52;
  int scenarios = 10000;  // Monte-Carlo draws per week for resource costs
  std::uint64_t master_seed = 1;
  std::optional<State> initial;  // defaults to an empty waiting list
};

struct WeekRecord {
  int week = 0;
  std::uint64_t waiting = 0;   // patients on the list before deciding
  std::uint64_t admitted = 0;
  std::uint64_t arrivals = 0;
  double patient_cost = 0.0;   // exact, from the stage-cost definition
  HospitalOutcome hospital;
  double total_cost = 0.0;     // patient_cost + hospital.cost_mean
  double decision_seconds = 0.0;
  double actions_searched = 0.0;
  double actions_full = 0.0;
};

struct WaitTally {
  std::uint64_t patients = 0;
  double weeks_sum = 0.0;
  double weeks_sq_sum = 0.0;
  double mean() const { return patients ? weeks_sum / double(patients) : 0.0; }
  double std() const {
    if (!patients) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, weeks_sq_sum / double(patients) - m * m));
  }
};

struct SimulationResult {
  std::string policy;
  std::vector<WeekRecord> weeks;
  // waits[j][g]: waiting time of admitted patients, weighted per patient
  std::vector<std::vector<WaitTally>> waits;
  double mean_patient_cost = 0.0;
  double mean_hospital_cost = 0.0;
  double mean_total_cost = 0.0;
  double mean_decision_seconds = 0.0;
  std::uint64_t total_admitted = 0;
  std::uint64_t total_arrivals = 0;
};

inline SimulationResult run_simulation(const Model& model, Policy& policy,
                                       const SimulationPlan& plan) {
  const auto& layout = model.layout();
  SimulationResult res;
  res.policy = policy.name();
  res.weeks.reserve(plan.weeks);
  res.waits.assign(layout.specialty_count(), {});
  for (int j = 0; j < layout.specialty_count(); ++j)
    res.waits[j].assign(model.config().specialties[j].urgency.size(), {});

  State s = plan.initial.value_or(model.zero_state());
  model.check_state(s);

  for (int week = 1; week <= plan.weeks; ++week) {
    WeekRecord rec;
    rec.week = week;
    for (auto n : s.n) rec.waiting += n;

    const auto t0 = std::chrono::steady_clock::now();
    const Action a = policy.decide(s, week);
    rec.decision_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    model.require_feasible(s, a);

    const auto stats = action_set_stats(model, s);
    rec.actions_full = stats.full_count;
    rec.actions_searched =
        policy.searches_full_family() ? stats.full_count : stats.reduced_count;

    rec.patient_cost = model.stage_cost(s, a).patient;
    rec.hospital = sample_hospital_outcomes(model, a, plan.master_seed, week,
                                            plan.scenarios);
    rec.total_cost = rec.patient_cost + rec.hospital.cost_mean;

    for (int xi = 0; xi < layout.type_count(); ++xi) {
      rec.admitted += a.m[xi];
      const auto& t = layout.type(xi);
      auto& tally = res.waits[t.specialty][t.group];
      tally.patients += a.m[xi];
      tally.weeks_sum += double(a.m[xi]) * t.week;
      tally.weeks_sq_sum += double(a.m[xi]) * t.week * t.week;
    }

    // Arrival draws depend only on the seed and the week, so competing
    // policies simulated under the same plan face identical referrals.
    RngStream arrivals(plan.master_seed, StreamPurpose::arrivals,
                       {std::uint64_t(week)});
    ArrivalVector psi;
    psi.k.resize(layout.pair_count());
    for (int p = 0; p < layout.pair_count(); ++p) {
      const auto& pi = layout.pair(p);
      psi.k[p] = pi.cap >= 0 ? static_cast<std::uint32_t>(
                                   arrivals.next_index(pi.pmf))
                             : static_cast<std::uint32_t>(
                                   arrivals.next_poisson(pi.rate));
      rec.arrivals += psi.k[p];
    }
    s = model.successor(s, a, psi);

    res.total_admitted += rec.admitted;
    res.total_arrivals += rec.arrivals;
    res.mean_patient_cost += rec.patient_cost;
    res.mean_hospital_cost += rec.hospital.cost_mean;
    res.mean_total_cost += rec.total_cost;
    res.mean_decision_seconds += rec.decision_seconds;
    res.weeks.push_back(std::move(rec));
  }

  if (plan.weeks > 0) {
    res.mean_patient_cost /= plan.weeks;
    res.mean_hospital_cost /= plan.weeks;
    res.mean_total_cost /= plan.weeks;
    res.mean_decision_seconds /= plan.weeks;
  }
  return res;
}

}  // namespace oradmit
