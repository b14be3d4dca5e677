#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "oradmit/config.hpp"
#include "oradmit/poisson.hpp"

namespace oradmit {

// A "type" is one (specialty, urgency group, weeks-waited) slot of the
// waiting list; states and actions are count vectors over all types in one
// fixed canonical order: specialties as configured, urgency groups in
// ascending coefficient order, waiting time ascending 1..W. A "pair" is a
// (specialty, urgency group) combination, the granularity at which arrivals
// happen.
struct TypeInfo {
  int specialty = 0;  // 0-based
  int group = 0;      // 0-based within the specialty
  int pair = 0;       // 0-based over all (specialty, group) pairs
  double ucoeff = 1.0;
  int week = 1;       // waiting time w, 1-based
  int max_wait = 1;   // due date W
  bool due = false;   // week == max_wait: must be admitted now
  double priority = 0.0;  // importance * ucoeff * week
};

struct PairInfo {
  int specialty = 0;
  int group = 0;
  double ucoeff = 1.0;
  int max_wait = 1;
  double rate = 0.0;
  int cap = -1;            // largest kept weekly arrival count; -1 unbounded
  int first_type = 0;      // type index of this pair's w=1 slot
  std::vector<double> pmf; // renormalized arrival pmf when cap >= 0
  double mean_arrivals = 0.0; // mean under the model actually in force
};

class Layout {
 public:
  explicit Layout(const ProblemConfig& cfg) {
    int xi = 0;
    for (std::size_t j = 0; j < cfg.specialties.size(); ++j) {
      const auto& sp = cfg.specialties[j];
      for (std::size_t g = 0; g < sp.urgency.size(); ++g) {
        const auto& ug = sp.urgency[g];
        PairInfo pi;
        pi.specialty = static_cast<int>(j);
        pi.group = static_cast<int>(g);
        pi.ucoeff = ug.coeff;
        pi.max_wait = ug.max_wait_weeks;
        pi.rate = ug.arrivals_per_week;
        pi.first_type = xi;
        if (ug.arrival_cap >= 0)
          pi.cap = ug.arrival_cap;
        else if (cfg.truncate_arrivals)
          pi.cap = support_cap(ug.arrivals_per_week, cfg.truncation_threshold);
        if (pi.cap >= 0) {
          pi.pmf = truncated_poisson_table(pi.rate, pi.cap);
          for (int k = 0; k <= pi.cap; ++k) pi.mean_arrivals += k * pi.pmf[k];
        } else {
          pi.mean_arrivals = pi.rate;
        }
        const int p = static_cast<int>(pairs_.size());
        for (int w = 1; w <= ug.max_wait_weeks; ++w, ++xi) {
          TypeInfo ti;
          ti.specialty = pi.specialty;
          ti.group = pi.group;
          ti.pair = p;
          ti.ucoeff = ug.coeff;
          ti.week = w;
          ti.max_wait = ug.max_wait_weeks;
          ti.due = (w == ug.max_wait_weeks);
          ti.priority = sp.importance * ug.coeff * w;
          types_.push_back(ti);
        }
        pairs_.push_back(std::move(pi));
      }
    }
    specialty_count_ = static_cast<int>(cfg.specialties.size());
    build_strides();
  }

  int type_count() const { return static_cast<int>(types_.size()); }
  int pair_count() const { return static_cast<int>(pairs_.size()); }
  int specialty_count() const { return specialty_count_; }
  const TypeInfo& type(int xi) const { return types_[xi]; }
  const PairInfo& pair(int p) const { return pairs_[p]; }
  const std::vector<TypeInfo>& types() const { return types_; }
  const std::vector<PairInfo>& pairs() const { return pairs_; }

  // Counts per type kept by the truncated model (cap of the owning pair).
  // Meaningful only when enumerable().
  int type_cap(int xi) const { return pairs_[types_[xi].pair].cap; }

  // True when every pair has a finite arrival cap, i.e. the state space is a
  // finite box that exact methods can enumerate.
  bool enumerable() const { return enumerable_; }

  // log10 of the number of states in the box; usable even when the count
  // overflows 64 bits (the headline instances reach 1e183).
  double log10_state_count() const { return log10_states_; }

  // Exact state count; only valid when it fits (fits_u64()).
  bool fits_u64() const { return enumerable_ && log10_states_ < 18.9; }
  std::uint64_t state_count() const { return state_count_; }

  // Mixed-radix key of a count vector, canonical-type-major. Valid when
  // fits_u64().
  std::uint64_t encode(const std::vector<std::uint32_t>& counts) const {
    std::uint64_t key = 0;
    for (std::size_t xi = 0; xi < counts.size(); ++xi)
      key += counts[xi] * stride_[xi];
    return key;
  }

  void decode(std::uint64_t key, std::vector<std::uint32_t>& counts) const {
    counts.resize(types_.size());
    for (std::size_t xi = 0; xi < types_.size(); ++xi) {
      counts[xi] = static_cast<std::uint32_t>(key / stride_[xi]);
      key %= stride_[xi];
    }
  }

  std::uint64_t stride(int xi) const { return stride_[xi]; }

 private:
  void build_strides() {
    enumerable_ = true;
    log10_states_ = 0.0;
    for (const auto& p : pairs_) {
      if (p.cap < 0) enumerable_ = false;
      else log10_states_ += p.max_wait * std::log10(double(p.cap) + 1.0);
    }
    if (!enumerable_) {
      log10_states_ = std::numeric_limits<double>::infinity();
      return;
    }
    stride_.assign(types_.size(), 1);
    if (!fits_u64()) return;
    for (int xi = static_cast<int>(types_.size()) - 2; xi >= 0; --xi)
      stride_[xi] = stride_[xi + 1] * (type_cap(xi + 1) + 1);
    state_count_ = types_.empty()
                       ? 1
                       : stride_[0] * (type_cap(0) + 1);
  }

  std::vector<TypeInfo> types_;
  std::vector<PairInfo> pairs_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t state_count_ = 0;
  double log10_states_ = 0.0;
  bool enumerable_ = false;
  int specialty_count_ = 0;
};

}  // namespace oradmit
