#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "oradmit/config.hpp"
#include "oradmit/layout.hpp"

namespace oradmit {

// Built-in test instances, so the command-line tools and the test-suite can
// name a reproducible problem without shipping config files around.

// Two specialties, two urgency groups each, arrival caps derived from the
// truncation threshold: 2.43e6 states, small enough to solve exactly.
inline ProblemConfig small_2spec() {
  ProblemConfig cfg;
  cfg.name = "small-2spec";
  cfg.sicu_capacity_bed_days = 7.0;
  cfg.surgery_cost_per_priority = 50.0;
  cfg.waiting_cost_per_priority = 100.0;
  cfg.overtime_cost_per_hour = 400.0;
  cfg.shortage_cost_per_bed_day = 1000.0;
  cfg.discount = 0.99;
  cfg.truncation_threshold = 0.005;

  SpecialtyConfig s1;
  s1.name = "first";
  s1.importance = 1.0;
  s1.or_capacity_hours = 3.0;
  s1.duration_mean_hours = 2.0;
  s1.duration_std_hours = 2.0;
  s1.los_mean_days = 4.0;
  s1.los_std_days = 4.0;
  s1.urgency = {{.coeff = 1.0, .max_wait_weeks = 4, .arrivals_per_week = 1.0},
                {.coeff = 2.0, .max_wait_weeks = 2, .arrivals_per_week = 0.5}};

  SpecialtyConfig s2;
  s2.name = "second";
  s2.importance = 2.0;
  s2.or_capacity_hours = 2.0;
  s2.duration_mean_hours = 4.0;
  s2.duration_std_hours = 4.0;
  s2.los_mean_days = 2.0;
  s2.los_std_days = 2.0;
  s2.urgency = {{.coeff = 1.0, .max_wait_weeks = 3, .arrivals_per_week = 0.25},
                {.coeff = 2.0, .max_wait_weeks = 2, .arrivals_per_week = 0.25}};

  cfg.specialties = {s1, s2};
  return cfg;
}

// Single-specialty coronary bypass waiting list with three urgency tiers and
// explicit arrival caps: about 2.7e20 states, exact solving is off the table.
inline ProblemConfig cabg() {
  ProblemConfig cfg;
  cfg.name = "cabg";
  cfg.sicu_capacity_bed_days = 25.0;
  cfg.or_availability = 0.9;
  cfg.sicu_availability = 0.72;
  cfg.surgery_cost_per_priority = 100.0;
  cfg.waiting_cost_per_priority = 150.0;
  cfg.overtime_cost_per_hour = 1500.0;
  cfg.shortage_cost_per_bed_day = 1500.0;
  cfg.discount = 0.99;

  SpecialtyConfig sp;
  sp.name = "cabg";
  sp.importance = 1.0;
  sp.or_capacity_hours = 40.0;
  sp.duration_mean_hours = 4.0;
  sp.duration_std_hours = 1.72;
  sp.los_mean_days = 2.0;
  sp.los_std_days = 2.0;
  sp.urgency = {
      {.coeff = 1.0, .max_wait_weeks = 12, .arrivals_per_week = 3.0, .arrival_cap = 9},
      {.coeff = 2.0, .max_wait_weeks = 6, .arrivals_per_week = 5.0, .arrival_cap = 13},
      {.coeff = 6.0, .max_wait_weeks = 2, .arrivals_per_week = 1.0, .arrival_cap = 5}};
  cfg.specialties = {sp};
  return cfg;
}

// Nine-specialty hospital week with 20 patient types; the state space is
// astronomically large, so only simulation-based policies apply.
inline ProblemConfig multi_9spec() {
  ProblemConfig cfg;
  cfg.name = "multi-9spec";
  cfg.sicu_capacity_bed_days = 105.0;
  cfg.or_availability = 0.6;
  cfg.sicu_availability = 0.6;
  cfg.surgery_cost_per_priority = 50.0;
  cfg.waiting_cost_per_priority = 200.0;
  cfg.overtime_cost_per_hour = 1000.0;
  cfg.shortage_cost_per_bed_day = 1000.0;
  cfg.discount = 0.99;

  auto spec = [](std::string name, double v, double B, double dm, double ds,
                 double lm, double ls,
                 std::vector<UrgencyGroup> groups) {
    SpecialtyConfig sp;
    sp.name = std::move(name);
    sp.importance = v;
    sp.or_capacity_hours = B;
    sp.duration_mean_hours = dm;
    sp.duration_std_hours = ds;
    sp.los_mean_days = lm;
    sp.los_std_days = ls;
    sp.urgency = std::move(groups);
    return sp;
  };
  auto ug = [](double coeff, int wait, double rate, int cap) {
    return UrgencyGroup{.coeff = coeff,
                        .max_wait_weeks = wait,
                        .arrivals_per_week = rate,
                        .arrival_cap = cap};
  };

  cfg.specialties = {
      spec("ent", 1, 48.00, 1.23, 0.38, 0.10, 0.10, {ug(1, 20, 10.00, 25)}),
      spec("obgyn", 2, 24.00, 1.43, 0.44, 2.00, 2.00,
           {ug(1, 15, 4.00, 15), ug(3, 6, 0.50, 4)}),
      spec("ortho", 2, 48.00, 1.78, 0.54, 1.50, 1.50,
           {ug(1, 15, 10.00, 25), ug(3, 6, 2.00, 10)}),
      spec("neuro", 5, 8.00, 2.67, 1.65, 2.00, 2.00, {ug(1, 8, 2.50, 12)}),
      spec("gen", 1, 64.00, 1.55, 0.67, 0.05, 0.05,
           {ug(1, 20, 9.00, 20), ug(2, 15, 2.00, 10)}),
      spec("ophth", 2, 32.00, 0.63, 0.10, 0.05, 0.05, {ug(1, 15, 1.50, 8)}),
      spec("vascular", 4, 16.00, 2.00, 1.03, 3.50, 3.50,
           {ug(1, 10, 1.00, 6), ug(2, 5, 2.50, 12), ug(4, 2, 0.50, 4)}),
      spec("cardiac", 5, 8.00, 4.00, 2.95, 2.00, 2.00,
           {ug(1, 8, 0.25, 3), ug(2, 3, 1.25, 7), ug(6, 1, 0.50, 4)}),
      spec("urology", 3, 8.00, 1.07, 0.75, 0.80, 0.80,
           {ug(1, 12, 2.00, 10), ug(2, 6, 0.50, 4)}),
  };
  return cfg;
}

// Copy of `cfg` with every pair's arrival cap dropped by `k` (floored at 0)
// and written out explicitly. Shrinks an instance enough for exact solving
// while keeping its structure.
inline ProblemConfig with_caps_reduced(const ProblemConfig& cfg, int k) {
  ProblemConfig out = cfg;
  const Layout layout(cfg);
  int p = 0;
  for (auto& sp : out.specialties)
    for (auto& ugr : sp.urgency) {
      const int cap = layout.pair(p++).cap;
      if (cap < 0)
        throw std::invalid_argument(
            "cannot reduce caps of an untruncated instance");
      ugr.arrival_cap = std::max(0, cap - k);
    }
  if (k != 0 && !out.name.empty())
    out.name += "-capsm" + std::to_string(k);
  return out;
}

inline ProblemConfig instance_by_name(const std::string& name) {
  if (name == "small-2spec") return small_2spec();
  if (name == "cabg") return cabg();
  if (name == "multi-9spec") return multi_9spec();
  throw std::invalid_argument(
      "unknown instance '" + name +
      "' (known: small-2spec, cabg, multi-9spec)");
}

}  // namespace oradmit
