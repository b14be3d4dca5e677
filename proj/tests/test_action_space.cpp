#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "oradmit/action_space.hpp"
#include "oradmit/exact.hpp"
#include "oradmit/instances.hpp"
#include "test_support.hpp"

using namespace oradmit;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::vector<std::uint32_t>> materialize_full(const Model& model,
                                                         const State& s) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& a : full_actions(model, s)) out.push_back(a.m);
  return out;
}

}  // namespace

TEST_CASE("full enumeration covers every feasible action once", "[actions]") {
  const Model model(testsupport::two_spec_tiny());
  State s{{2, 1, 1, 1, 1}};
  const auto all = materialize_full(model, s);

  // free types are 0 and 3; due ones are pinned
  REQUIRE(all.size() == 3 * 2);
  const std::set<std::vector<std::uint32_t>> unique(all.begin(), all.end());
  REQUIRE(unique.size() == all.size());
  REQUIRE(std::is_sorted(all.begin(), all.end()));
  for (const auto& m : all) REQUIRE(model.feasible(s, Action{m}));

  // first action admits only the forced patients, last admits everyone
  REQUIRE(all.front() == std::vector<std::uint32_t>{0, 1, 1, 0, 1});
  REQUIRE(all.back() == s.n);
}

TEST_CASE("the reduced family is a subset ordered by greedy fills", "[actions]") {
  const Model model(testsupport::two_spec_tiny());
  const auto& layout = model.layout();
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
    layout.decode(key, n);
    const State s{n};
    const auto full = materialize_full(model, s);
    const std::set<std::vector<std::uint32_t>> full_set(full.begin(),
                                                        full.end());
    const auto reduced = reduced_actions(model, s);
    REQUIRE(std::is_sorted(reduced.begin(), reduced.end(),
                           [](const Action& a, const Action& b) {
                             return a.m < b.m;
                           }));
    std::set<std::vector<std::uint32_t>> reduced_set;
    for (const auto& a : reduced) {
      REQUIRE(full_set.count(a.m) == 1);
      reduced_set.insert(a.m);
    }
    REQUIRE(reduced_set.size() == reduced.size());

    const auto stats = action_set_stats(model, s);
    REQUIRE(stats.full_count == double(full.size()));
    REQUIRE(stats.reduced_count == double(reduced.size()));

    // Per specialty, admissions beyond the mandatory base follow the fill
    // order: a type is only drawn on once every earlier type is exhausted.
    const auto base = mandatory_schedule(model, s);
    for (const auto& a : reduced)
      for (int j = 0; j < layout.specialty_count(); ++j) {
        bool partial_seen = false;
        for (int xi : model.fill_order(j)) {
          const std::uint32_t extra = a.m[xi] - base.m[xi];
          const std::uint32_t avail = s.n[xi] - base.m[xi];
          if (partial_seen) REQUIRE(extra == 0);
          if (extra < avail) partial_seen = true;
        }
      }
  }
}

TEST_CASE("reduced sizes multiply per-specialty pool choices", "[actions]") {
  const Model model(testsupport::two_spec_tiny());
  const auto& layout = model.layout();
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
    layout.decode(key, n);
    double expect = 1.0;
    for (int j = 0; j < layout.specialty_count(); ++j) {
      std::uint32_t pool = 0;
      for (int xi : model.fill_order(j)) pool += n[xi];
      expect *= pool + 1.0;
    }
    REQUIRE(action_set_stats(model, State{n}).reduced_count == expect);
  }
}

TEST_CASE("shared pools prune the family to greedy prefixes", "[actions]") {
  // Two free waiting slots of one group: greedy fills take the older patient
  // first, so admitting the younger one alone is pruned away.
  const Model model(testsupport::chain_config());
  const State s{{1, 1, 0}};
  REQUIRE(materialize_full(model, s).size() == 4);
  const auto reduced = reduced_actions(model, s);
  REQUIRE(reduced.size() == 3);
  REQUIRE(reduced[0].m == std::vector<std::uint32_t>{0, 0, 0});
  REQUIRE(reduced[1].m == std::vector<std::uint32_t>{0, 1, 0});
  REQUIRE(reduced[2].m == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("closed-form totals equal brute-force sums", "[actions]") {
  for (const auto& cfg :
       {testsupport::two_spec_tiny(), testsupport::mini_mdp_config(),
        testsupport::toy_anchor_config(), testsupport::chain_config()}) {
    const Model model(cfg);
    const auto& layout = model.layout();
    double full_sum = 0.0, reduced_sum = 0.0;
    std::vector<std::uint32_t> n(layout.type_count());
    for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
      layout.decode(key, n);
      const auto stats = action_set_stats(model, State{n});
      full_sum += stats.full_count;
      reduced_sum += stats.reduced_count;
    }
    REQUIRE_THAT(total_action_count(model, ActionSource::full),
                 WithinRel(full_sum, 1e-12));
    REQUIRE_THAT(total_action_count(model, ActionSource::reduced),
                 WithinRel(reduced_sum, 1e-12));
  }
}

TEST_CASE("search-space reduction on the headline instance", "[actions]") {
  const Model model(small_2spec());
  const double full = total_action_count(model, ActionSource::full);
  const double reduced = total_action_count(model, ActionSource::reduced);
  REQUIRE(full == 1'312'200'000.0);
  REQUIRE(reduced == 82'620'000.0);
  REQUIRE_THAT(reduced / full, WithinRel(0.06296296296296296, 1e-14));

  const Model shrunk(with_caps_reduced(small_2spec(), 1));
  REQUIRE(total_action_count(shrunk, ActionSource::full) == 7'776'000.0);
  REQUIRE(total_action_count(shrunk, ActionSource::reduced) == 1'198'080.0);
}

TEST_CASE("materialization guards refuse oversized families", "[actions]") {
  const Model model(small_2spec());
  State s = model.zero_state();
  for (int xi = 0; xi < model.layout().type_count(); ++xi)
    s.n[xi] = std::uint32_t(model.layout().type_cap(xi));
  REQUIRE_THROWS_AS(full_actions(model, s, 100), GuardError);
  REQUIRE_THROWS_AS(reduced_actions(model, s, 3), GuardError);
}

TEST_CASE("a state of due patients leaves exactly one action", "[actions]") {
  const Model model(testsupport::toy_anchor_config());
  State s{{2}};
  const auto all = full_actions(model, s);
  REQUIRE(all.size() == 1);
  REQUIRE(all[0].m == s.n);
  const auto reduced = reduced_actions(model, s);
  REQUIRE(reduced.size() == 1);
  REQUIRE(reduced[0].m == s.n);
}

TEST_CASE("auto-admits join the mandatory schedule", "[actions]") {
  auto cfg = testsupport::two_spec_tiny();
  cfg.surgery_cost_per_priority = 1.0;
  cfg.waiting_cost_per_priority = 1000.0;
  cfg.overtime_cost_per_hour = 1.0;
  cfg.shortage_cost_per_bed_day = 1.0;
  for (auto& sp : cfg.specialties) {
    sp.duration_mean_hours = 0.1;
    sp.los_mean_days = 0.1;
  }
  const Model model(cfg);
  State s{{2, 1, 1, 1, 1}};
  const auto base = mandatory_schedule(model, s);
  REQUIRE(base.m == s.n);  // everyone is either due or an automatic admit
  const auto reduced = reduced_actions(model, s);
  REQUIRE(reduced.size() == 1);
  const auto stats = action_set_stats(model, s);
  REQUIRE(stats.reduced_count == 1.0);
  REQUIRE(stats.full_count == 6.0);
}
