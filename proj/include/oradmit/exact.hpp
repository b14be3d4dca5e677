#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "oradmit/action_space.hpp"
#include "oradmit/errors.hpp"
#include "oradmit/model.hpp"
#include "oradmit/version.hpp"

namespace oradmit {

enum class ActionSource { full, reduced };

inline const char* to_string(ActionSource s) {
  return s == ActionSource::full ? "full" : "reduced";
}

// ---------------------------------------------------------------------------
// State-space enumeration guards

inline std::uint64_t enumerable_state_count(const Model& model,
                                            std::uint64_t max_states = 5'000'000) {
  const auto& layout = model.layout();
  if (!layout.enumerable())
    throw GuardError(
        "arrival truncation is disabled; the state space is unbounded");
  if (!layout.fits_u64() || layout.state_count() > max_states)
    throw GuardError("state space holds about 1e" +
                     std::to_string(layout.log10_state_count()) +
                     " states, beyond the enumeration guard of " +
                     std::to_string(max_states));
  return layout.state_count();
}

// Every arrival outcome with its probability and its mixed-radix key offset;
// adding `delta` to a post-action key lands on the successor key.
struct ArrivalCombos {
  std::vector<double> prob;
  std::vector<std::uint64_t> delta;
};

inline ArrivalCombos make_arrival_combos(const Model& model,
                                         double max_combos = 5e6) {
  const auto& layout = model.layout();
  double count = 1.0;
  for (const auto& p : layout.pairs()) {
    if (p.cap < 0)
      throw GuardError("arrival combinations need truncated arrivals");
    count *= double(p.cap) + 1.0;
  }
  if (!(count <= max_combos))
    throw GuardError("instance has " + std::to_string(count) +
                     " arrival combinations, beyond the guard of " +
                     std::to_string(max_combos));
  ArrivalCombos combos;
  const std::size_t total = static_cast<std::size_t>(count);
  combos.prob.reserve(total);
  combos.delta.reserve(total);
  const int P = layout.pair_count();
  std::vector<std::uint32_t> k(P, 0);
  for (;;) {
    double prob = 1.0;
    std::uint64_t delta = 0;
    for (int p = 0; p < P; ++p) {
      const auto& pi = layout.pair(p);
      prob *= pi.pmf[k[p]];
      delta += k[p] * layout.stride(pi.first_type);
    }
    combos.prob.push_back(prob);
    combos.delta.push_back(delta);
    int p = P - 1;
    while (p >= 0 && k[p] == static_cast<std::uint32_t>(layout.pair(p).cap))
      k[p--] = 0;
    if (p < 0) break;
    ++k[p];
  }
  return combos;
}

// ---------------------------------------------------------------------------
// Closed-form action totals over the whole enumerable box. These factorize
// per type (full family) or per specialty (reduced family), so the headline
// 2.43e6-state instance is summed exactly without touching a single state.

inline double total_action_count(const Model& model, ActionSource source) {
  const auto& layout = model.layout();
  if (!layout.enumerable())
    throw GuardError("action totals need truncated arrivals");
  if (source == ActionSource::full) {
    double total = 1.0;
    for (int xi = 0; xi < layout.type_count(); ++xi) {
      const double c = layout.type_cap(xi);
      total *= layout.type(xi).due ? c + 1.0 : (c + 1.0) * (c + 2.0) / 2.0;
    }
    return total;
  }
  double total = 1.0;
  for (int j = 0; j < layout.specialty_count(); ++j) {
    double substates = 1.0;
    double mean_pool = 0.0;
    for (int xi = 0; xi < layout.type_count(); ++xi)
      if (layout.type(xi).specialty == j)
        substates *= layout.type_cap(xi) + 1.0;
    for (int xi : model.fill_order(j)) mean_pool += layout.type_cap(xi) / 2.0;
    total *= substates * (1.0 + mean_pool);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Tables

struct ValueTable {
  std::vector<std::uint32_t> radices;  // cap+1 per type, guards table reuse
  std::vector<double> v;               // one value per mixed-radix state key
  std::uint32_t sweeps = 0;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  double discount = 0.0;
};

struct PolicyTable {
  std::vector<std::uint32_t> radices;
  std::uint32_t type_count = 0;
  std::vector<std::uint32_t> m;  // state-major, type_count entries per state
};

inline std::vector<std::uint32_t> layout_radices(const Layout& layout) {
  std::vector<std::uint32_t> r(layout.type_count());
  for (int xi = 0; xi < layout.type_count(); ++xi)
    r[xi] = static_cast<std::uint32_t>(layout.type_cap(xi) + 1);
  return r;
}

inline void require_table_matches(const Model& model,
                                  const std::vector<std::uint32_t>& radices) {
  if (radices != layout_radices(model.layout()))
    throw GuardError("table was built for a different instance layout");
}

// ---------------------------------------------------------------------------
// Solver internals shared by sweeps, extraction and single-state backups.

namespace detail {

// Cost pieces that do not depend on the state the action is played in:
// cost_const = -(c_d - c_b) * priority(a) + hospital(a). The state adds
// c_d * priority(s) and the discounted continuation.
struct ActionEval {
  double cost_const = 0.0;
  std::uint64_t gkey = 0;  // key of the post-action state
};

// Enumerates the chosen action family at digits `n`, invoking
// fn(eval, action_counts_or_null). Enumeration is canonical-lexicographic
// for the full family; the reduced family is enumerated in combination order
// (callers who need canonical ties sort first).
template <typename Fn>
void for_each_action_eval(const Model& model, ActionSource source,
                          const std::vector<std::uint32_t>& n, Fn&& fn) {
  const auto& layout = model.layout();
  const auto& cfg = model.config();
  const int J = layout.specialty_count();
  const double margin =
      cfg.waiting_cost_per_priority - cfg.surgery_cost_per_priority;
  std::vector<double> admitted(J, 0.0);
  std::vector<std::uint32_t> m(n.size(), 0);
  double pw = 0.0;
  std::uint64_t gkey = 0;

  auto hospital = [&]() {
    double over = 0.0, beds = 0.0;
    for (int j = 0; j < J; ++j) {
      const auto& sp = cfg.specialties[j];
      over += std::max(0.0, admitted[j] * sp.duration_mean_hours -
                                cfg.or_availability * sp.or_capacity_hours);
      beds += admitted[j] * sp.los_mean_days;
    }
    const double short_beds = std::max(
        0.0, beds - cfg.sicu_availability * cfg.sicu_capacity_bed_days);
    return cfg.overtime_cost_per_hour * over +
           cfg.shortage_cost_per_bed_day * short_beds;
  };
  auto emit = [&]() {
    fn(ActionEval{-margin * pw + hospital(), gkey}, m);
  };
  auto add = [&](int xi, std::uint32_t count) {
    const auto& t = layout.type(xi);
    m[xi] = count;
    pw += count * t.priority;
    admitted[t.specialty] += count;
    if (!t.due) gkey += std::uint64_t(n[xi] - count) * layout.stride(xi + 1);
  };
  auto remove = [&](int xi) {
    const auto& t = layout.type(xi);
    pw -= m[xi] * t.priority;
    admitted[t.specialty] -= m[xi];
    if (!t.due) gkey -= std::uint64_t(n[xi] - m[xi]) * layout.stride(xi + 1);
    m[xi] = 0;
  };

  if (source == ActionSource::full) {
    const int T = layout.type_count();
    auto rec = [&](auto&& self, int xi) -> void {
      if (xi == T) {
        emit();
        return;
      }
      if (layout.type(xi).due) {
        add(xi, n[xi]);
        self(self, xi + 1);
        remove(xi);
        return;
      }
      for (std::uint32_t c = 0; c <= n[xi]; ++c) {
        add(xi, c);
        self(self, xi + 1);
        remove(xi);
      }
    };
    rec(rec, 0);
    return;
  }

  // Reduced family: mandatory base plus per-specialty greedy fills. Every
  // type gets its initial add so gkey carries the optional types' counts too.
  for (int xi = 0; xi < layout.type_count(); ++xi)
    add(xi, layout.type(xi).due || model.auto_admit(xi) ? n[xi] : 0);
  std::vector<std::vector<int>> pool(J);
  std::vector<std::uint32_t> pool_size(J, 0);
  for (int j = 0; j < J; ++j)
    for (int xi : model.fill_order(j))
      if (n[xi] > 0) {
        pool[j].push_back(xi);
        pool_size[j] += n[xi];
      }
  std::vector<std::uint32_t> take(J, 0);
  auto refill = [&](int j) {
    std::uint32_t left = take[j];
    for (int xi : pool[j]) {
      remove(xi);
      const std::uint32_t grab = std::min(left, n[xi]);
      add(xi, grab);
      left -= grab;
    }
  };
  for (;;) {
    emit();
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

// Mixed-radix odometer over all states; fn(key, digits).
template <typename Fn>
void for_each_state(const Layout& layout, Fn&& fn) {
  std::vector<std::uint32_t> n(layout.type_count(), 0);
  const std::uint64_t S = layout.state_count();
  for (std::uint64_t key = 0; key < S; ++key) {
    fn(key, n);
    for (int xi = layout.type_count() - 1; xi >= 0; --xi) {
      if (n[xi] < static_cast<std::uint32_t>(layout.type_cap(xi))) {
        ++n[xi];
        break;
      }
      n[xi] = 0;
    }
  }
}

// Keys of every post-action state (all w=1 slots empty).
inline std::vector<std::uint64_t> post_action_keys(const Layout& layout) {
  std::vector<int> slots;
  double count = 1.0;
  for (int xi = 0; xi < layout.type_count(); ++xi)
    if (layout.type(xi).week >= 2) {
      slots.push_back(xi);
      count *= layout.type_cap(xi) + 1.0;
    }
  std::vector<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(count));
  std::vector<std::uint32_t> g(slots.size(), 0);
  for (;;) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < slots.size(); ++i)
      key += std::uint64_t(g[i]) * layout.stride(slots[i]);
    keys.push_back(key);
    int i = static_cast<int>(slots.size()) - 1;
    while (i >= 0 &&
           g[i] == static_cast<std::uint32_t>(layout.type_cap(slots[i])))
      g[i--] = 0;
    if (i < 0) break;
    ++g[i];
  }
  return keys;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Value iteration (synchronous sweeps over the whole truncated box).

struct SolveOptions {
  // Sup-norm sweep-to-sweep change below which iteration stops. Non-positive
  // means the default 1e-6 / (1 - discount).
  double stop_residual = -1.0;
  std::uint32_t max_sweeps = 20000;
  bool extract_policy = true;
  std::uint64_t max_states = 5'000'000;
  // Per-action summaries are precomputed when they fit in this much memory;
  // otherwise every sweep re-enumerates actions in place (same results,
  // roughly an order of magnitude slower).
  double summary_budget_bytes = 1.4e9;
};

struct SolveResult {
  ValueTable values;
  PolicyTable policy;  // empty unless extract_policy
  double total_actions_evaluated_per_sweep = 0.0;
};

inline SolveResult value_iteration(const Model& model, ActionSource source,
                                   const SolveOptions& opts = {}) {
  const auto& layout = model.layout();
  const std::uint64_t S = enumerable_state_count(model, opts.max_states);
  const ArrivalCombos combos = make_arrival_combos(model);
  const double gamma = model.config().discount;
  const double tol = opts.stop_residual > 0.0
                         ? opts.stop_residual
                         : 1e-6 / (1.0 - gamma);
  const double cd = model.config().waiting_cost_per_priority;

  // State-constant cost term c_d * priority(s).
  std::vector<double> base_cost(S);
  detail::for_each_state(layout, [&](std::uint64_t key, const auto& n) {
    base_cost[key] = cd * model.priority_sum(n);
  });

  const auto post_keys = detail::post_action_keys(layout);

  // Try to precompute one (cost_const, gkey) pair per state-action.
  const double n_actions = total_action_count(model, source);
  const bool summarize =
      n_actions * 12.0 + double(S + 1) * 8.0 <= opts.summary_budget_bytes;
  std::vector<std::uint64_t> offset;
  std::vector<std::uint32_t> gkeys;
  std::vector<double> costs;
  if (summarize) {
    offset.reserve(S + 1);
    offset.push_back(0);
    gkeys.reserve(static_cast<std::size_t>(n_actions));
    costs.reserve(static_cast<std::size_t>(n_actions));
    detail::for_each_state(layout, [&](std::uint64_t, const auto& n) {
      detail::for_each_action_eval(
          model, source, n, [&](const detail::ActionEval& ev, const auto&) {
            gkeys.push_back(static_cast<std::uint32_t>(ev.gkey));
            costs.push_back(ev.cost_const);
          });
      offset.push_back(gkeys.size());
    });
  }

  std::vector<double> V(S, 0.0), V2(S), W(S, 0.0);
  ValueTable out;
  out.radices = layout_radices(layout);
  out.discount = gamma;

  auto build_w = [&](const std::vector<double>& src) {
    const std::size_t C = combos.prob.size();
    for (std::uint64_t pk : post_keys) {
      double acc = 0.0;
      for (std::size_t c = 0; c < C; ++c)
        acc += combos.prob[c] * src[pk + combos.delta[c]];
      W[pk] = acc;
    }
  };

  while (out.sweeps < opts.max_sweeps) {
    build_w(V);
    double residual = 0.0;
    if (summarize) {
      for (std::uint64_t s = 0; s < S; ++s) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = offset[s]; i < offset[s + 1]; ++i) {
          const double q = costs[i] + gamma * W[gkeys[i]];
          if (q < best) best = q;
        }
        V2[s] = base_cost[s] + best;
        residual = std::max(residual, std::abs(V2[s] - V[s]));
      }
    } else {
      detail::for_each_state(layout, [&](std::uint64_t s, const auto& n) {
        double best = std::numeric_limits<double>::infinity();
        detail::for_each_action_eval(
            model, source, n, [&](const detail::ActionEval& ev, const auto&) {
              const double q = ev.cost_const + gamma * W[ev.gkey];
              if (q < best) best = q;
            });
        V2[s] = base_cost[s] + best;
        residual = std::max(residual, std::abs(V2[s] - V[s]));
      });
    }
    V.swap(V2);
    ++out.sweeps;
    out.residual = residual;
    if (residual < tol) {
      out.converged = true;
      break;
    }
  }

  out.v = std::move(V);
  SolveResult result;
  result.total_actions_evaluated_per_sweep = n_actions;

  if (opts.extract_policy) {
    // One more pass against the converged values, recording the canonical
    // argmin at every state.
    build_w(out.v);
    PolicyTable& pt = result.policy;
    pt.radices = out.radices;
    pt.type_count = static_cast<std::uint32_t>(layout.type_count());
    pt.m.resize(S * layout.type_count());
    std::vector<std::pair<double, std::vector<std::uint32_t>>> scored;
    detail::for_each_state(layout, [&](std::uint64_t s, const auto& n) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::uint32_t> best_m;
      if (source == ActionSource::full) {
        // Enumeration is already canonical; first strict minimum wins.
        detail::for_each_action_eval(
            model, source, n, [&](const detail::ActionEval& ev, const auto& m) {
              const double q = ev.cost_const + gamma * W[ev.gkey];
              if (q < best) {
                best = q;
                best_m.assign(m.begin(), m.end());
              }
            });
      } else {
        scored.clear();
        detail::for_each_action_eval(
            model, source, n, [&](const detail::ActionEval& ev, const auto& m) {
              scored.emplace_back(ev.cost_const + gamma * W[ev.gkey],
                                  std::vector<std::uint32_t>(m.begin(), m.end()));
            });
        for (auto& [q, m] : scored)
          if (q < best || (q == best && m < best_m)) {
            best = q;
            best_m = m;
          }
      }
      std::copy(best_m.begin(), best_m.end(),
                pt.m.begin() + s * layout.type_count());
    });
  }

  result.values = std::move(out);
  return result;
}

// ---------------------------------------------------------------------------
// Single-state operations

struct BackupResult {
  double value = 0.0;
  Action best;
};

// One Bellman backup at `s` against an existing value table; ties resolve to
// the canonically smallest action.
inline BackupResult bellman_backup(const Model& model, const State& s,
                                   const ValueTable& table,
                                   const ArrivalCombos& combos,
                                   ActionSource source) {
  model.check_state(s);
  require_table_matches(model, table.radices);
  const double gamma = table.discount;
  const double base =
      model.config().waiting_cost_per_priority * model.priority_sum(s.n);
  BackupResult out;
  out.value = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_m;
  detail::for_each_action_eval(
      model, source, s.n, [&](const detail::ActionEval& ev, const auto& m) {
        double e = 0.0;
        for (std::size_t c = 0; c < combos.prob.size(); ++c)
          e += combos.prob[c] * table.v[ev.gkey + combos.delta[c]];
        const double q = ev.cost_const + gamma * e;
        if (q < out.value ||
            (q == out.value &&
             std::lexicographical_compare(m.begin(), m.end(), best_m.begin(),
                                          best_m.end()))) {
          out.value = q;
          best_m.assign(m.begin(), m.end());
        }
      });
  out.value += base;
  out.best.m = std::move(best_m);
  return out;
}

// Cheapest single week, ignoring the future: the discount-zero policy.
inline Action myopic_action(const Model& model, const State& s) {
  auto options = reduced_actions(model, s);
  const Action* best = &options.front();
  double best_cost = model.stage_cost(s, *best).total;
  for (const auto& a : options) {
    const double c = model.stage_cost(s, a).total;
    if (c < best_cost) {
      best_cost = c;
      best = &a;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Table files. Raw little-endian dumps for caching converged solves on the
// machine that produced them.

namespace detail {
inline void write_bytes(std::ofstream& f, const void* p, std::size_t bytes) {
  f.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}
inline void read_bytes(std::ifstream& f, void* p, std::size_t bytes) {
  f.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (!f) throw ParseError("table file truncated");
}
template <typename T>
void write_pod(std::ofstream& f, const T& v) {
  write_bytes(f, &v, sizeof v);
}
template <typename T>
T read_pod(std::ifstream& f) {
  T v;
  read_bytes(f, &v, sizeof v);
  return v;
}
}  // namespace detail

inline void save_value_table(const std::string& path, const ValueTable& vt) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.write("ORVT", 4);
  detail::write_pod(f, binary_format_version);
  detail::write_pod(f, static_cast<std::uint32_t>(vt.radices.size()));
  detail::write_bytes(f, vt.radices.data(), vt.radices.size() * 4);
  detail::write_pod(f, static_cast<std::uint64_t>(vt.v.size()));
  detail::write_pod(f, vt.sweeps);
  detail::write_pod(f, static_cast<std::uint8_t>(vt.converged));
  detail::write_pod(f, vt.residual);
  detail::write_pod(f, vt.discount);
  detail::write_bytes(f, vt.v.data(), vt.v.size() * 8);
  if (!f) throw std::runtime_error("short write to " + path);
}

inline ValueTable load_value_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  char magic[4];
  detail::read_bytes(f, magic, 4);
  if (std::memcmp(magic, "ORVT", 4) != 0)
    throw ParseError(path + " is not a value-table file");
  if (detail::read_pod<unsigned>(f) != binary_format_version)
    throw ParseError(path + " uses an unsupported format version");
  ValueTable vt;
  vt.radices.resize(detail::read_pod<std::uint32_t>(f));
  detail::read_bytes(f, vt.radices.data(), vt.radices.size() * 4);
  vt.v.resize(detail::read_pod<std::uint64_t>(f));
  vt.sweeps = detail::read_pod<std::uint32_t>(f);
  vt.converged = detail::read_pod<std::uint8_t>(f) != 0;
  vt.residual = detail::read_pod<double>(f);
  vt.discount = detail::read_pod<double>(f);
  detail::read_bytes(f, vt.v.data(), vt.v.size() * 8);
  return vt;
}

inline void save_policy_table(const std::string& path, const PolicyTable& pt) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.write("ORPT", 4);
  detail::write_pod(f, binary_format_version);
  detail::write_pod(f, static_cast<std::uint32_t>(pt.radices.size()));
  detail::write_bytes(f, pt.radices.data(), pt.radices.size() * 4);
  detail::write_pod(f, pt.type_count);
  detail::write_pod(f, static_cast<std::uint64_t>(pt.m.size()));
  detail::write_bytes(f, pt.m.data(), pt.m.size() * 4);
  if (!f) throw std::runtime_error("short write to " + path);
}

inline PolicyTable load_policy_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  char magic[4];
  detail::read_bytes(f, magic, 4);
  if (std::memcmp(magic, "ORPT", 4) != 0)
    throw ParseError(path + " is not a policy-table file");
  if (detail::read_pod<unsigned>(f) != binary_format_version)
    throw ParseError(path + " uses an unsupported format version");
  PolicyTable pt;
  pt.radices.resize(detail::read_pod<std::uint32_t>(f));
  detail::read_bytes(f, pt.radices.data(), pt.radices.size() * 4);
  pt.type_count = detail::read_pod<std::uint32_t>(f);
  pt.m.resize(detail::read_pod<std::uint64_t>(f));
  detail::read_bytes(f, pt.m.data(), pt.m.size() * 4);
  return pt;
}

}  // namespace oradmit
