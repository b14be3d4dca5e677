#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "oradmit/errors.hpp"
#include "oradmit/model.hpp"

namespace oradmit {

// Sizes of the two admissible-action families at a state. Carried as doubles
// because the unpruned family can reach 1e11 per state on the clinical
// instances (and far beyond adversarially); values stay exact below 2^53 and
// saturate gracefully above.
struct ActionSetStats {
  double full_count = 1.0;     // every feasible admission vector
  double reduced_count = 1.0;  // priority-greedy family, see reduced_actions
};

inline ActionSetStats action_set_stats(const Model& model, const State& s) {
  model.check_state(s);
  const auto& types = model.layout().types();
  ActionSetStats st;
  for (std::size_t xi = 0; xi < s.n.size(); ++xi)
    if (!types[xi].due) st.full_count *= double(s.n[xi]) + 1.0;
  for (int j = 0; j < model.layout().specialty_count(); ++j) {
    double pool = 0.0;
    for (int xi : model.fill_order(j)) pool += s.n[xi];
    st.reduced_count *= pool + 1.0;
  }
  return st;
}

// Patients every reasonable action admits: those at their due date, plus the
// types whose postponement penalty outweighs any capacity cost admitting them
// could cause.
inline Action mandatory_schedule(const Model& model, const State& s) {
  model.check_state(s);
  Action a{std::vector<std::uint32_t>(s.n.size(), 0)};
  const auto& types = model.layout().types();
  for (std::size_t xi = 0; xi < s.n.size(); ++xi)
    if (types[xi].due || model.auto_admit(static_cast<int>(xi)))
      a.m[xi] = s.n[xi];
  return a;
}

// Streams every feasible action in canonical (lexicographically ascending)
// order. The callback receives a scratch Action reused between calls; copy it
// if it must outlive the visit.
template <typename Fn>
void for_each_full_action(const Model& model, const State& s, Fn&& fn) {
  model.check_state(s);
  const auto& types = model.layout().types();
  const int n_types = model.layout().type_count();
  Action a{std::vector<std::uint32_t>(s.n.size(), 0)};
  for (int xi = 0; xi < n_types; ++xi)
    if (types[xi].due) a.m[xi] = s.n[xi];

  // Iterative odometer over the free (non-due) coordinates.
  std::vector<int> free;
  for (int xi = 0; xi < n_types; ++xi)
    if (!types[xi].due) free.push_back(xi);
  for (;;) {
    fn(const_cast<const Action&>(a));
    int i = static_cast<int>(free.size()) - 1;
    while (i >= 0 && a.m[free[i]] == s.n[free[i]]) a.m[free[i--]] = 0;
    if (i < 0) return;
    ++a.m[free[i]];
  }
}

// Materialized unpruned action set; refuses states whose count exceeds the
// guard instead of eating all memory.
inline std::vector<Action> full_actions(const Model& model, const State& s,
                                        double max_actions = 1e6) {
  const double count = action_set_stats(model, s).full_count;
  if (!(count <= max_actions))
    throw GuardError("state admits " + std::to_string(count) +
                     " actions; refusing to materialize more than " +
                     std::to_string(max_actions));
  std::vector<Action> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_full_action(model, s, [&](const Action& a) { out.push_back(a); });
  return out;
}

// Streams the priority-greedy action family, unsorted. On top of the
// mandatory schedule, each specialty admits some number M_j of its optional
// patients, always taking the highest-priority ones first; every (M_1..M_J)
// combination yields one action. Optimal-value preservation rests on two
// facts: admitting a patient never changes another type's marginal value, and
// swapping an admitted patient for a waiting higher-priority one of the same
// specialty never increases cost.
template <typename Fn>
void for_each_reduced_action(const Model& model, const State& s, Fn&& fn) {
  model.check_state(s);
  const int J = model.layout().specialty_count();
  Action base = mandatory_schedule(model, s);

  // Per specialty: optional types holding patients, in fill order.
  std::vector<std::vector<int>> pool(J);
  std::vector<std::uint32_t> pool_size(J, 0);
  for (int j = 0; j < J; ++j)
    for (int xi : model.fill_order(j))
      if (s.n[xi] > 0) {
        pool[j].push_back(xi);
        pool_size[j] += s.n[xi];
      }

  Action a = base;
  std::vector<std::uint32_t> take(J, 0);
  auto refill = [&](int j) {
    std::uint32_t left = take[j];
    for (int xi : pool[j]) {
      const std::uint32_t grab = std::min(left, s.n[xi]);
      a.m[xi] = base.m[xi] + grab;
      left -= grab;
    }
  };
  for (;;) {
    fn(const_cast<const Action&>(a));
    int j = J - 1;
    while (j >= 0 && take[j] == pool_size[j]) {
      take[j] = 0;
      refill(j);
      --j;
    }
    if (j < 0) return;
    ++take[j];
    refill(j);
  }
}

// Materialized pruned action set in canonical order.
inline std::vector<Action> reduced_actions(const Model& model, const State& s,
                                           double max_actions = 1e6) {
  const double count = action_set_stats(model, s).reduced_count;
  if (!(count <= max_actions))
    throw GuardError("state admits " + std::to_string(count) +
                     " reduced actions; refusing to materialize more than " +
                     std::to_string(max_actions));
  std::vector<Action> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_reduced_action(model, s, [&](const Action& a) { out.push_back(a); });
  std::sort(out.begin(), out.end(),
            [](const Action& x, const Action& y) { return x.m < y.m; });
  return out;
}

}  // namespace oradmit
