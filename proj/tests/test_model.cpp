#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "oradmit/instances.hpp"
#include "oradmit/model.hpp"
#include "test_support.hpp"

using namespace oradmit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

State state_of(const Model& model, std::vector<std::pair<int, std::uint32_t>> counts) {
  State s = model.zero_state();
  for (auto [xi, n] : counts) s.n[xi] = n;
  return s;
}

}  // namespace

TEST_CASE("admitting a lone low-priority patient costs its surgery", "[model]") {
  const Model model(small_2spec());
  // first specialty, coeff 1, week 1 is type 0
  const State s = state_of(model, {{0, 1}});
  Action admit{s.n};
  const auto c = model.stage_cost(s, admit);
  REQUIRE_THAT(c.patient, WithinRel(50.0, 1e-15));
  REQUIRE(c.hospital == 0.0);
  REQUIRE_THAT(c.total, WithinRel(50.0, 1e-15));

  Action wait{std::vector<std::uint32_t>(s.n.size(), 0)};
  const auto w = model.stage_cost(s, wait);
  REQUIRE_THAT(w.patient, WithinRel(100.0, 1e-15));
  REQUIRE(w.hospital == 0.0);
}

TEST_CASE("overtime shows up once theatre hours run out", "[model]") {
  const Model model(small_2spec());
  // second specialty (importance 2, 4h surgeries, 2h capacity), two patients
  const int xi = 6;  // second specialty, coeff 1, week 1
  REQUIRE(model.layout().type(xi).specialty == 1);
  REQUIRE(model.layout().type(xi).week == 1);
  const State s = state_of(model, {{xi, 2}});
  Action admit{s.n};
  const auto load = model.hospital_load(admit);
  REQUIRE_THAT(load.overtime_hours[1], WithinRel(6.0, 1e-15));  // 2*4 - 2
  REQUIRE(load.overtime_hours[0] == 0.0);
  REQUIRE(load.shortage_bed_days == 0.0);  // 2*2 <= 7

  const auto c = model.stage_cost(s, admit);
  REQUIRE_THAT(c.patient, WithinRel(200.0, 1e-15));
  REQUIRE_THAT(c.hospital, WithinRel(2400.0, 1e-15));
  REQUIRE_THAT(c.total, WithinRel(2600.0, 1e-15));
}

TEST_CASE("feasibility needs m <= n and every due patient admitted", "[model]") {
  const Model model(testsupport::two_spec_tiny());
  // types: alpha g1 w1,w2(due); alpha g2 w1(due); beta g1 w1,w2(due)
  State s = state_of(model, {{0, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});

  Action all{s.n};
  REQUIRE(model.feasible(s, all));

  Action too_many = all;
  too_many.m[0] = 3;
  REQUIRE_FALSE(model.feasible(s, too_many));

  Action skip_due = all;
  skip_due.m[1] = 0;
  REQUIRE_FALSE(model.feasible(s, skip_due));
  REQUIRE_THROWS_AS(model.require_feasible(s, skip_due), std::domain_error);

  Action partial = all;
  partial.m[0] = 1;  // week-1 patients may wait
  REQUIRE(model.feasible(s, partial));

  Action wrong_shape{std::vector<std::uint32_t>(3, 0)};
  REQUIRE_THROWS_AS(model.feasible(s, wrong_shape), std::invalid_argument);
}

TEST_CASE("the week advances: postponed wait longer, new slots empty", "[model]") {
  const Model model(testsupport::two_spec_tiny());
  State s = state_of(model, {{0, 2}, {1, 1}, {3, 1}});
  Action a{{1, 1, 0, 0, 0}};
  const State g = model.post_action(s, a);
  REQUIRE(g.n == std::vector<std::uint32_t>{0, 1, 0, 0, 1});

  ArrivalVector psi{{2, 1, 0}};
  const State next = model.successor(s, a, psi);
  REQUIRE(next.n == std::vector<std::uint32_t>{2, 1, 1, 0, 1});

  ArrivalVector bad{{1, 1}};
  REQUIRE_THROWS_AS(model.successor(s, a, bad), std::invalid_argument);
}

TEST_CASE("transition probabilities total one over reachable states", "[model]") {
  const Model model(testsupport::two_spec_tiny());
  const auto& layout = model.layout();
  State s = state_of(model, {{0, 2}, {4, 1}});
  Action a{{1, 0, 0, 0, 1}};

  double total = 0.0;
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
    layout.decode(key, n);
    total += model.transition_probability(s, a, State{n});
  }
  REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));

  // A mismatched carry-over has probability zero.
  State bad = model.post_action(s, a);
  bad.n[1] += 1;
  REQUIRE(model.transition_probability(s, a, bad) == 0.0);
}

TEST_CASE("priority sums weight patients by importance, urgency, wait", "[model]") {
  const Model model(testsupport::two_spec_tiny());
  State s = state_of(model, {{0, 2}, {2, 1}, {4, 3}});
  // 2 * (1*1*1) + 1 * (1*2*1) + 3 * (3*1*2)
  REQUIRE_THAT(model.priority_sum(s.n), WithinRel(22.0, 1e-15));
}

TEST_CASE("patients become automatic admits when waiting dwarfs resources", "[model]") {
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
  // margin * priority = 999 * p > 0.1 + 0.1 for every type
  for (int xi = 0; xi < model.layout().type_count(); ++xi) {
    if (model.layout().type(xi).due) continue;
    REQUIRE(model.auto_admit(xi));
  }
  // Default instance admits nobody automatically: resources are expensive.
  const Model plain(testsupport::two_spec_tiny());
  for (int xi = 0; xi < plain.layout().type_count(); ++xi)
    REQUIRE_FALSE(plain.auto_admit(xi));
}

TEST_CASE("invalid configs never construct a model", "[model]") {
  ProblemConfig bad;
  REQUIRE_THROWS_AS(Model(bad), ValidationError);
}
