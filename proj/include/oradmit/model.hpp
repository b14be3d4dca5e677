#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oradmit/config.hpp"
#include "oradmit/layout.hpp"

namespace oradmit {

// Waiting-list census: n[xi] patients of type xi (see Layout for the type
// order). Patients are interchangeable within a type, so counts are the whole
// state.
struct State {
  std::vector<std::uint32_t> n;
  friend bool operator==(const State&, const State&) = default;
};

// Admission decision: m[xi] of the n[xi] waiting patients of type xi get
// surgery this week.
struct Action {
  std::vector<std::uint32_t> m;
  friend bool operator==(const Action&, const Action&) = default;
};

// New referrals this week, one count per (specialty, urgency) pair; they
// enter next week's state at waiting time w=1.
struct ArrivalVector {
  std::vector<std::uint32_t> k;
  friend bool operator==(const ArrivalVector&, const ArrivalVector&) = default;
};

inline double priority_score(double importance, double ucoeff, int weeks_waited) {
  return importance * ucoeff * weeks_waited;
}

// Per-action hospital-side quantities under mean durations and stays.
struct HospitalLoad {
  std::vector<double> overtime_hours;  // per specialty, above reserved OR time
  double shortage_bed_days = 0.0;      // intensive-care demand above allotment
};

struct StageCost {
  double patient = 0.0;   // admission + postponement, priority-weighted
  double hospital = 0.0;  // overtime + intensive-care shortage, at mean loads
  double total = 0.0;
};

class Model {
 public:
  explicit Model(ProblemConfig cfg, ValidateOptions vopts = {})
      : cfg_(std::move(cfg)), layout_(validated_layout(cfg_, vopts)) {
    const int J = layout_.specialty_count();
    const auto& types = layout_.types();
    auto_admit_.assign(types.size(), 0);
    const double margin =
        cfg_.waiting_cost_per_priority - cfg_.surgery_cost_per_priority;
    for (std::size_t xi = 0; xi < types.size(); ++xi) {
      const auto& sp = cfg_.specialties[types[xi].specialty];
      const double capacity_worst_case =
          cfg_.overtime_cost_per_hour * sp.duration_mean_hours +
          cfg_.shortage_cost_per_bed_day * sp.los_mean_days;
      // Admitting such a patient saves more waiting cost than any capacity
      // cost the admission could possibly add, so every sensible action
      // schedules the whole type.
      auto_admit_[xi] = margin * types[xi].priority > capacity_worst_case;
    }
    // Per specialty: the optional (neither due nor auto-admitted) types in
    // the order a size-limited schedule should fill them. Highest priority
    // first; ties prefer the longer-waiting, then the more urgent patient.
    fill_order_.assign(J, {});
    for (int xi = 0; xi < layout_.type_count(); ++xi)
      if (!types[xi].due && !auto_admit_[xi])
        fill_order_[types[xi].specialty].push_back(xi);
    for (auto& order : fill_order_)
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (types[a].priority != types[b].priority)
          return types[a].priority > types[b].priority;
        if (types[a].week != types[b].week) return types[a].week > types[b].week;
        if (types[a].ucoeff != types[b].ucoeff)
          return types[a].ucoeff > types[b].ucoeff;
        return a < b;
      });
  }

  const ProblemConfig& config() const { return cfg_; }
  const Layout& layout() const { return layout_; }

  State zero_state() const {
    return State{std::vector<std::uint32_t>(layout_.type_count(), 0)};
  }

  // True when admitting a type-xi patient always beats postponing them,
  // whatever else is scheduled.
  bool auto_admit(int xi) const { return auto_admit_[xi] != 0; }

  const std::vector<int>& fill_order(int specialty) const {
    return fill_order_[specialty];
  }

  void check_state(const State& s) const {
    if (s.n.size() != static_cast<std::size_t>(layout_.type_count()))
      throw std::invalid_argument("state has wrong number of type slots");
  }

  void check_shapes(const State& s, const Action& a) const {
    check_state(s);
    if (a.m.size() != s.n.size())
      throw std::invalid_argument("action shape does not match state");
  }

  // An action may admit at most the waiting count of every type and must
  // admit every patient whose due date is reached.
  bool feasible(const State& s, const Action& a) const {
    check_shapes(s, a);
    const auto& types = layout_.types();
    for (std::size_t xi = 0; xi < s.n.size(); ++xi) {
      if (a.m[xi] > s.n[xi]) return false;
      if (types[xi].due && a.m[xi] != s.n[xi]) return false;
    }
    return true;
  }

  void require_feasible(const State& s, const Action& a) const {
    if (!feasible(s, a))
      throw std::domain_error("action is infeasible in this state");
  }

  // Deterministic part of the week transition: everyone not admitted waits
  // one more week; the w=1 slots empty out and await the new referrals.
  State post_action(const State& s, const Action& a) const {
    require_feasible(s, a);
    State g{std::vector<std::uint32_t>(s.n.size(), 0)};
    const auto& types = layout_.types();
    for (std::size_t xi = 0; xi < s.n.size(); ++xi)
      if (types[xi].week < types[xi].max_wait)
        g.n[xi + 1] = s.n[xi] - a.m[xi];
    return g;
  }

  State successor(const State& s, const Action& a,
                  const ArrivalVector& psi) const {
    if (psi.k.size() != static_cast<std::size_t>(layout_.pair_count()))
      throw std::invalid_argument("arrival vector has wrong number of pairs");
    State next = post_action(s, a);
    for (int p = 0; p < layout_.pair_count(); ++p)
      next.n[layout_.pair(p).first_type] = psi.k[p];
    return next;
  }

  // Probability of landing in `next` after playing `a` in `s`: carried-over
  // counts must match exactly, and each pair's w=1 count must be a kept
  // arrival outcome.
  double transition_probability(const State& s, const Action& a,
                                const State& next) const {
    require_feasible(s, a);
    check_state(next);
    const auto& types = layout_.types();
    for (std::size_t xi = 0; xi < s.n.size(); ++xi) {
      if (types[xi].week == 1) continue;
      if (next.n[xi] != s.n[xi - 1] - a.m[xi - 1]) return 0.0;
    }
    double prob = 1.0;
    for (int p = 0; p < layout_.pair_count(); ++p) {
      const auto& pi = layout_.pair(p);
      if (pi.cap < 0)
        throw std::domain_error(
            "transition probabilities need truncated arrivals");
      const std::uint32_t k = next.n[pi.first_type];
      if (k > static_cast<std::uint32_t>(pi.cap)) return 0.0;
      prob *= pi.pmf[k];
    }
    return prob;
  }

  // Priority mass of a count vector (states and actions alike).
  double priority_sum(const std::vector<std::uint32_t>& counts) const {
    const auto& types = layout_.types();
    double sum = 0.0;
    for (std::size_t xi = 0; xi < counts.size(); ++xi)
      sum += counts[xi] * types[xi].priority;
    return sum;
  }

  // Expected overtime and intensive-care shortage if `a` is admitted, using
  // mean surgery durations and stays.
  HospitalLoad hospital_load(const Action& a) const {
    HospitalLoad load;
    load.overtime_hours.assign(layout_.specialty_count(), 0.0);
    const auto& types = layout_.types();
    std::vector<double> admitted(layout_.specialty_count(), 0.0);
    for (std::size_t xi = 0; xi < a.m.size(); ++xi)
      admitted[types[xi].specialty] += a.m[xi];
    double bed_days = 0.0;
    for (int j = 0; j < layout_.specialty_count(); ++j) {
      const auto& sp = cfg_.specialties[j];
      load.overtime_hours[j] =
          std::max(0.0, admitted[j] * sp.duration_mean_hours -
                            cfg_.or_availability * sp.or_capacity_hours);
      bed_days += admitted[j] * sp.los_mean_days;
    }
    load.shortage_bed_days = std::max(
        0.0, bed_days - cfg_.sicu_availability * cfg_.sicu_capacity_bed_days);
    return load;
  }

  StageCost stage_cost(const State& s, const Action& a) const {
    require_feasible(s, a);
    StageCost c;
    const double admitted = priority_sum(a.m);
    const double waiting = priority_sum(s.n) - admitted;
    c.patient = cfg_.surgery_cost_per_priority * admitted +
                cfg_.waiting_cost_per_priority * waiting;
    const HospitalLoad load = hospital_load(a);
    double overtime = 0.0;
    for (double h : load.overtime_hours) overtime += h;
    c.hospital = cfg_.overtime_cost_per_hour * overtime +
                 cfg_.shortage_cost_per_bed_day * load.shortage_bed_days;
    c.total = c.patient + c.hospital;
    return c;
  }

 private:
  static Layout validated_layout(const ProblemConfig& cfg,
                                 const ValidateOptions& vopts) {
    require_valid(cfg, vopts);
    return Layout(cfg);
  }

  ProblemConfig cfg_;
  Layout layout_;
  std::vector<std::uint8_t> auto_admit_;
  std::vector<std::vector<int>> fill_order_;
};

}  // namespace oradmit
