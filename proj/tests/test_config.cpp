#include <catch2/catch_amalgamated.hpp>

#include "oradmit/config.hpp"
#include "test_support.hpp"

using namespace oradmit;

namespace {
bool mentions(const std::vector<std::string>& messages, const std::string& bit) {
  for (const auto& m : messages)
    if (m.find(bit) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST_CASE("fixture configs validate cleanly", "[config]") {
  REQUIRE(validate(testsupport::toy_anchor_config()).ok());
  REQUIRE(validate(testsupport::mini_mdp_config()).ok());
  REQUIRE(validate(testsupport::two_spec_tiny()).ok());
}

TEST_CASE("an empty config is rejected with the reasons listed", "[config]") {
  const auto rep = validate(ProblemConfig{});
  REQUIRE_FALSE(rep.ok());
  REQUIRE(mentions(rep.errors, "at least one specialty"));
}

TEST_CASE("each field range is enforced", "[config]") {
  auto base = testsupport::two_spec_tiny();

  SECTION("discount outside [0,1)") {
    base.discount = 1.0;
    REQUIRE(mentions(validate(base).errors, "discount"));
    base.discount = -0.1;
    REQUIRE(mentions(validate(base).errors, "discount"));
  }
  SECTION("truncation threshold outside (0,1)") {
    base.truncation_threshold = 0.0;
    REQUIRE(mentions(validate(base).errors, "truncation threshold"));
  }
  SECTION("availability outside (0,1]") {
    base.or_availability = 0.0;
    REQUIRE(mentions(validate(base).errors, "or_availability"));
    base.or_availability = 1.0;
    base.sicu_availability = 1.5;
    REQUIRE(mentions(validate(base).errors, "sicu_availability"));
  }
  SECTION("negative cost") {
    base.overtime_cost_per_hour = -1.0;
    REQUIRE(mentions(validate(base).errors, "overtime_cost_per_hour"));
  }
  SECTION("non-positive importance") {
    base.specialties[0].importance = 0.0;
    REQUIRE(mentions(validate(base).errors, "importance"));
  }
  SECTION("max wait below one week") {
    base.specialties[0].urgency[0].max_wait_weeks = 0;
    REQUIRE(mentions(validate(base).errors, "max_wait_weeks"));
  }
  SECTION("bad arrival cap") {
    base.specialties[0].urgency[0].arrival_cap = -2;
    REQUIRE(mentions(validate(base).errors, "arrival_cap"));
  }
  SECTION("negative arrival rate") {
    base.specialties[0].urgency[0].arrivals_per_week = -0.5;
    REQUIRE(mentions(validate(base).errors, "arrivals_per_week"));
  }
  SECTION("urgency coefficients out of order") {
    base.specialties[0].urgency[0].coeff = 5.0;
    REQUIRE(mentions(validate(base).errors, "ascending"));
  }
  SECTION("duplicate urgency coefficients") {
    base.specialties[0].urgency[1].coeff =
        base.specialties[0].urgency[0].coeff;
    REQUIRE(mentions(validate(base).errors, "ascending"));
  }
  SECTION("no urgency groups") {
    base.specialties[0].urgency.clear();
    REQUIRE(mentions(validate(base).errors, "urgency group"));
  }
}

TEST_CASE("waiting must cost more than surgery unless overridden", "[config]") {
  auto cfg = testsupport::two_spec_tiny();
  cfg.waiting_cost_per_priority = cfg.surgery_cost_per_priority;
  REQUIRE_FALSE(validate(cfg).ok());

  ValidateOptions opts;
  opts.allow_waiting_cheaper_than_surgery = true;
  const auto rep = validate(cfg, opts);
  REQUIRE(rep.ok());
  REQUIRE(mentions(rep.warnings, "[overridden]"));
}

TEST_CASE("require_valid throws with the errors joined", "[config]") {
  ProblemConfig bad;
  REQUIRE_THROWS_AS(require_valid(bad), ValidationError);
  try {
    require_valid(bad);
  } catch (const ValidationError& e) {
    REQUIRE(std::string(e.what()).find("at least one specialty") !=
            std::string::npos);
    REQUIRE_FALSE(e.issues().empty());
  }
}
