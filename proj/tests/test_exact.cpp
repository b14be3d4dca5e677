#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "oradmit/exact.hpp"
#include "oradmit/instances.hpp"
#include "test_support.hpp"

using namespace oradmit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SolveOptions tight() {
  SolveOptions o;
  o.stop_residual = 1e-13;
  return o;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("arrival combinations enumerate the joint pmf", "[exact]") {
  const Model toy(testsupport::toy_anchor_config());
  const auto combos = make_arrival_combos(toy);
  REQUIRE(combos.prob.size() == 3);
  REQUIRE(combos.delta == std::vector<std::uint64_t>{0, 1, 2});
  REQUIRE_THAT(combos.prob[0], WithinRel(0.51413881748071977, 1e-14));
  REQUIRE_THAT(combos.prob[1], WithinRel(0.35989717223650386, 1e-14));
  REQUIRE_THAT(combos.prob[2], WithinRel(0.1259640102827764, 1e-14));

  const Model tiny(testsupport::two_spec_tiny());
  const auto c2 = make_arrival_combos(tiny);
  REQUIRE(c2.prob.size() == 3 * 2 * 2);
  double sum = 0.0;
  for (double p : c2.prob) sum += p;
  REQUIRE_THAT(sum, WithinAbs(1.0, 1e-12));
  // last pair cycles fastest; second combo is one beta arrival
  const auto& layout = tiny.layout();
  REQUIRE(c2.delta[1] == layout.stride(layout.pair(2).first_type));
  REQUIRE_THAT(c2.prob[1],
               WithinRel(layout.pair(0).pmf[0] * layout.pair(1).pmf[0] *
                             layout.pair(2).pmf[1],
                         1e-14));

  REQUIRE_THROWS_AS(make_arrival_combos(tiny, 10), GuardError);
  auto unbounded = testsupport::toy_anchor_config();
  unbounded.specialties[0].urgency[0].arrival_cap = -1;
  unbounded.truncate_arrivals = false;
  REQUIRE_THROWS_AS(make_arrival_combos(Model(unbounded)), GuardError);
}

TEST_CASE("state enumeration refuses unbounded or oversized spaces", "[exact]") {
  const Model tiny(testsupport::two_spec_tiny());
  REQUIRE(enumerable_state_count(tiny) == 72);
  REQUIRE_THROWS_AS(enumerable_state_count(tiny, 10), GuardError);

  auto unbounded = testsupport::toy_anchor_config();
  unbounded.specialties[0].urgency[0].arrival_cap = -1;
  unbounded.truncate_arrivals = false;
  REQUIRE_THROWS_AS(enumerable_state_count(Model(unbounded)), GuardError);

  // far beyond 2^64 states: the guard must trip on the log-scale count
  REQUIRE_THROWS_AS(enumerable_state_count(Model(multi_9spec())), GuardError);
}

TEST_CASE("single-type fixed point matches the hand solution", "[exact]") {
  const Model model(testsupport::toy_anchor_config());

  // admitting everyone is forced, so stage costs pin the whole problem
  const double c[] = {0.0, 63.5, 140.09999999999999};
  for (std::uint32_t n = 0; n <= 2; ++n)
    REQUIRE_THAT(model.stage_cost(State{{n}}, Action{{n}}).total,
                 WithinAbs(c[n], 1e-12));

  const auto sol = value_iteration(model, ActionSource::full, tight());
  REQUIRE(sol.values.converged);
  REQUIRE(sol.values.v.size() == 3);
  const double v[] = {60.751542416452452, 124.25154241645245,
                      200.85154241645245};
  for (int i = 0; i < 3; ++i) REQUIRE_THAT(sol.values.v[i], WithinRel(v[i], 1e-9));
  REQUIRE(sol.policy.m == std::vector<std::uint32_t>{0, 1, 2});
  REQUIRE(sol.total_actions_evaluated_per_sweep == 3.0);
}

TEST_CASE("four-state fixed point and its greedy policy", "[exact]") {
  const Model model(testsupport::mini_mdp_config());
  const auto sol = value_iteration(model, ActionSource::full, tight());
  REQUIRE(sol.values.converged);

  // key = 2*fresh + due
  const auto& layout = model.layout();
  REQUIRE(layout.encode({1, 0}) == 2);
  const double v[] = {2.6052631578947368, 12.105263157894736,
                      8.105263157894737, 28.105263157894736};
  for (int i = 0; i < 4; ++i) REQUIRE_THAT(sol.values.v[i], WithinRel(v[i], 1e-9));

  // a lone fresh patient is admitted rather than left to age
  REQUIRE(std::vector<std::uint32_t>(sol.policy.m.begin() + 2 * 2,
                                     sol.policy.m.begin() + 3 * 2) ==
          std::vector<std::uint32_t>{1, 0});
  REQUIRE(std::vector<std::uint32_t>(sol.policy.m.begin() + 3 * 2,
                                     sol.policy.m.begin() + 4 * 2) ==
          std::vector<std::uint32_t>{1, 1});

  const auto combos = make_arrival_combos(model);
  const auto backup =
      bellman_backup(model, State{{1, 0}}, sol.values, combos, ActionSource::full);
  REQUIRE_THAT(backup.value, WithinRel(v[2], 1e-9));
  REQUIRE(backup.best.m == std::vector<std::uint32_t>{1, 0});

  // postponing that patient must price out strictly worse
  const double postpone =
      model.stage_cost(State{{1, 0}}, Action{{0, 0}}).total +
      model.config().discount *
          (layout.pair(0).pmf[0] * sol.values.v[1] +
           layout.pair(0).pmf[1] * sol.values.v[3]);
  REQUIRE_THAT(postpone, WithinRel(18.842105263157895, 1e-9));
  REQUIRE(postpone > backup.value + 1.0);

  const auto reduced_backup = bellman_backup(model, State{{1, 0}}, sol.values,
                                             combos, ActionSource::reduced);
  REQUIRE_THAT(reduced_backup.value, WithinRel(backup.value, 1e-12));
}

TEST_CASE("pruning preserves the optimal values everywhere", "[exact]") {
  for (const auto& cfg :
       {testsupport::two_spec_tiny(), testsupport::mini_mdp_config(),
        testsupport::toy_anchor_config(), testsupport::chain_config()}) {
    const Model model(cfg);
    const auto full = value_iteration(model, ActionSource::full, tight());
    const auto reduced = value_iteration(model, ActionSource::reduced, tight());
    REQUIRE(full.values.converged);
    REQUIRE(reduced.values.converged);
    double worst = 0.0;
    for (std::size_t i = 0; i < full.values.v.size(); ++i)
      worst = std::max(worst,
                       std::abs(full.values.v[i] - reduced.values.v[i]));
    REQUIRE(worst <= 1e-9);
  }
}

TEST_CASE("streaming sweeps equal precomputed-summary sweeps", "[exact]") {
  const Model model(testsupport::two_spec_tiny());
  auto opts = tight();
  const auto fast = value_iteration(model, ActionSource::reduced, opts);
  opts.summary_budget_bytes = 0.0;  // forbid the precomputation
  const auto slow = value_iteration(model, ActionSource::reduced, opts);
  REQUIRE(fast.values.v == slow.values.v);
  REQUIRE(fast.values.sweeps == slow.values.sweeps);
  REQUIRE(fast.policy.m == slow.policy.m);
}

TEST_CASE("zero discount reduces the solver to single-week choices", "[exact]") {
  auto cfg = testsupport::two_spec_tiny();
  cfg.discount = 0.0;
  const Model model(cfg);
  const auto sol = value_iteration(model, ActionSource::reduced, tight());
  REQUIRE(sol.values.converged);
  const auto& layout = model.layout();
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
    layout.decode(key, n);
    const Action a = myopic_action(model, State{n});
    REQUIRE_THAT(sol.values.v[key],
                 WithinAbs(model.stage_cost(State{n}, a).total, 1e-12));
  }
}

TEST_CASE("greedy single-week choice matches brute force", "[exact]") {
  const Model model(testsupport::two_spec_tiny());
  const auto& layout = model.layout();
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < layout.state_count(); ++key) {
    layout.decode(key, n);
    const State s{n};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : full_actions(model, s))
      best = std::min(best, model.stage_cost(s, a).total);
    const Action chosen = myopic_action(model, s);
    REQUIRE(model.feasible(s, chosen));
    REQUIRE_THAT(model.stage_cost(s, chosen).total, WithinRel(best, 1e-12));
  }
}

TEST_CASE("sweep budget caps are honored and reported", "[exact]") {
  const Model model(testsupport::two_spec_tiny());
  SolveOptions opts;
  opts.max_sweeps = 1;
  const auto sol = value_iteration(model, ActionSource::reduced, opts);
  REQUIRE_FALSE(sol.values.converged);
  REQUIRE(sol.values.sweeps == 1);
  REQUIRE(sol.values.residual > 0.0);
  REQUIRE(sol.total_actions_evaluated_per_sweep ==
          total_action_count(model, ActionSource::reduced));
}

TEST_CASE("value tables survive a file round trip", "[exact]") {
  const Model model(testsupport::mini_mdp_config());
  const auto sol = value_iteration(model, ActionSource::full, tight());
  const auto vt_path = temp_file("oradmit-exact-vt.bin");
  const auto pt_path = temp_file("oradmit-exact-pt.bin");

  save_value_table(vt_path.string(), sol.values);
  const ValueTable vt = load_value_table(vt_path.string());
  REQUIRE(vt.radices == sol.values.radices);
  REQUIRE(vt.v == sol.values.v);
  REQUIRE(vt.sweeps == sol.values.sweeps);
  REQUIRE(vt.converged == sol.values.converged);
  REQUIRE(vt.residual == sol.values.residual);
  REQUIRE(vt.discount == sol.values.discount);
  REQUIRE_NOTHROW(require_table_matches(model, vt.radices));

  save_policy_table(pt_path.string(), sol.policy);
  const PolicyTable pt = load_policy_table(pt_path.string());
  REQUIRE(pt.radices == sol.policy.radices);
  REQUIRE(pt.type_count == sol.policy.type_count);
  REQUIRE(pt.m == sol.policy.m);

  std::filesystem::remove(vt_path);
  std::filesystem::remove(pt_path);
}

TEST_CASE("table files reject foreign or damaged content", "[exact]") {
  const auto vt_path = temp_file("oradmit-exact-bad.bin");
  {
    std::ofstream f(vt_path, std::ios::binary);
    f << "certainly not a table";
  }
  REQUIRE_THROWS_AS(load_value_table(vt_path.string()), ParseError);
  REQUIRE_THROWS_AS(load_policy_table(vt_path.string()), ParseError);

  const Model model(testsupport::mini_mdp_config());
  const auto sol = value_iteration(model, ActionSource::full, tight());
  const auto good = temp_file("oradmit-exact-good.bin");
  save_value_table(good.string(), sol.values);

  // value table opened as a policy table: wrong magic
  REQUIRE_THROWS_AS(load_policy_table(good.string()), ParseError);

  // chop the payload off
  std::ifstream in(good, std::ios::binary);
  std::vector<char> head(24);
  in.read(head.data(), 24);
  const auto trunc = temp_file("oradmit-exact-trunc.bin");
  {
    std::ofstream f(trunc, std::ios::binary);
    f.write(head.data(), 24);
  }
  REQUIRE_THROWS_AS(load_value_table(trunc.string()), ParseError);

  REQUIRE_THROWS_AS(load_value_table(temp_file("oradmit-no-such.bin").string()),
                    std::runtime_error);

  // a table built for one instance must not be replayed on another
  const Model other(testsupport::two_spec_tiny());
  REQUIRE_THROWS_AS(require_table_matches(other, sol.values.radices),
                    GuardError);

  std::filesystem::remove(vt_path);
  std::filesystem::remove(good);
  std::filesystem::remove(trunc);
}
