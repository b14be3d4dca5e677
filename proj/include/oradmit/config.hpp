#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oradmit/errors.hpp"

namespace oradmit {

// One urgency class inside a specialty. A patient of this class who has
// waited w weeks carries priority v * coeff * w and must be admitted no later
// than week max_wait_weeks.
struct UrgencyGroup {
  double coeff = 1.0;             // urgency weight in the priority product
  int max_wait_weeks = 1;         // due date W, in whole weeks since referral
  double arrivals_per_week = 0.0; // Poisson rate of new referrals
  // Largest weekly arrival count kept by the truncated model; -1 means derive
  // it from the problem-level truncation threshold.
  int arrival_cap = -1;

  friend bool operator==(const UrgencyGroup&, const UrgencyGroup&) = default;
};

struct SpecialtyConfig {
  std::string name;
  double importance = 1.0;          // v, the specialty weight in priorities
  double or_capacity_hours = 0.0;   // weekly operating-room allotment B
  double duration_mean_hours = 0.0; // surgery duration distribution
  double duration_std_hours = 0.0;
  double los_mean_days = 0.0;       // post-op intensive-care stay
  double los_std_days = 0.0;
  std::vector<UrgencyGroup> urgency;

  friend bool operator==(const SpecialtyConfig&, const SpecialtyConfig&) = default;
};

struct ProblemConfig {
  std::string name;
  double sicu_capacity_bed_days = 0.0;    // weekly intensive-care allotment R
  double or_availability = 1.0;           // fraction of B usable this week
  double sicu_availability = 1.0;         // fraction of R usable this week
  double surgery_cost_per_priority = 0.0; // c_b, applied to scheduled patients
  double waiting_cost_per_priority = 0.0; // c_d, applied to postponed patients
  double overtime_cost_per_hour = 0.0;    // c_o
  double shortage_cost_per_bed_day = 0.0; // c_e
  double discount = 0.99;
  double truncation_threshold = 0.005; // raw-pmf cutoff for derived caps
  bool truncate_arrivals = true;
  std::vector<SpecialtyConfig> specialties;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

struct ValidateOptions {
  // Waiting normally has to cost more than admitting (otherwise the model
  // rewards postponement forever). Setting this turns that error into a
  // warning for deliberately perverse experiments.
  bool allow_waiting_cheaper_than_surgery = false;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

namespace detail {
inline bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
}

inline ValidationReport validate(const ProblemConfig& cfg,
                                 const ValidateOptions& opts = {}) {
  ValidationReport rep;
  auto err = [&rep](std::string m) { rep.errors.push_back(std::move(m)); };

  if (cfg.specialties.empty()) err("at least one specialty is required");
  if (!(cfg.discount >= 0.0 && cfg.discount < 1.0))
    err("discount must lie in [0, 1)");
  if (!(cfg.truncation_threshold > 0.0 && cfg.truncation_threshold < 1.0))
    err("truncation threshold must lie in (0, 1)");
  if (!(cfg.or_availability > 0.0 && cfg.or_availability <= 1.0))
    err("or_availability must lie in (0, 1]");
  if (!(cfg.sicu_availability > 0.0 && cfg.sicu_availability <= 1.0))
    err("sicu_availability must lie in (0, 1]");
  if (!detail::finite_nonneg(cfg.sicu_capacity_bed_days))
    err("sicu_capacity_bed_days must be finite and non-negative");
  for (auto [value, name] : {std::pair<double, const char*>{cfg.surgery_cost_per_priority, "surgery_cost_per_priority"},
                             {cfg.waiting_cost_per_priority, "waiting_cost_per_priority"},
                             {cfg.overtime_cost_per_hour, "overtime_cost_per_hour"},
                             {cfg.shortage_cost_per_bed_day, "shortage_cost_per_bed_day"}}) {
    if (!detail::finite_nonneg(value))
      rep.errors.push_back(std::string(name) + " must be finite and non-negative");
  }
  if (cfg.waiting_cost_per_priority <= cfg.surgery_cost_per_priority) {
    std::string m =
        "waiting_cost_per_priority must exceed surgery_cost_per_priority "
        "(postponing must cost more than admitting)";
    if (opts.allow_waiting_cheaper_than_surgery)
      rep.warnings.push_back(m + " [overridden]");
    else
      err(std::move(m));
  }

  for (std::size_t j = 0; j < cfg.specialties.size(); ++j) {
    const auto& sp = cfg.specialties[j];
    const std::string tag = "specialty " + std::to_string(j + 1) +
                            (sp.name.empty() ? "" : " (" + sp.name + ")");
    if (!(sp.importance > 0.0) || !std::isfinite(sp.importance))
      err(tag + ": importance must be positive");
    if (!detail::finite_nonneg(sp.or_capacity_hours))
      err(tag + ": or_capacity_hours must be finite and non-negative");
    if (!detail::finite_nonneg(sp.duration_mean_hours) ||
        !detail::finite_nonneg(sp.duration_std_hours))
      err(tag + ": surgery duration moments must be finite and non-negative");
    if (!detail::finite_nonneg(sp.los_mean_days) ||
        !detail::finite_nonneg(sp.los_std_days))
      err(tag + ": length-of-stay moments must be finite and non-negative");
    if (sp.urgency.empty()) err(tag + ": at least one urgency group is required");
    for (std::size_t g = 0; g < sp.urgency.size(); ++g) {
      const auto& ug = sp.urgency[g];
      const std::string gt = tag + ", urgency group " + std::to_string(g + 1);
      if (!(ug.coeff > 0.0) || !std::isfinite(ug.coeff))
        err(gt + ": coefficient must be positive");
      if (ug.max_wait_weeks < 1) err(gt + ": max_wait_weeks must be at least 1");
      if (!detail::finite_nonneg(ug.arrivals_per_week))
        err(gt + ": arrivals_per_week must be finite and non-negative");
      if (ug.arrival_cap < -1) err(gt + ": arrival_cap must be -1 or >= 0");
      if (g > 0 && !(sp.urgency[g - 1].coeff < ug.coeff))
        err(gt + ": urgency coefficients must be distinct and listed in "
                 "ascending order");
    }
  }
  return rep;
}

// Validate-or-throw convenience used by every entry point that takes a raw
// config.
inline void require_valid(const ProblemConfig& cfg,
                          const ValidateOptions& opts = {}) {
  auto rep = validate(cfg, opts);
  if (!rep.ok()) throw ValidationError(std::move(rep.errors));
}

}  // namespace oradmit
